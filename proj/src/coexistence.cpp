#include "coexist/coexistence.hpp"

#include <cmath>

namespace coexist {

namespace {

double sqrt_clamped(double x) { return x <= 0.0 ? 0.0 : std::sqrt(x); }

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::array<double, 3> cross3(const std::array<double, 3>& a,
                             const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double norm3(const std::array<double, 3>& a) { return std::sqrt(dot3(a, a)); }

}  // namespace

const char* route_name(Route r) noexcept {
  switch (r) {
    case Route::TrivialComparable: return "trivial_comparable";
    case Route::TrivialCommuting: return "trivial_commuting";
    case Route::MainCriterion: return "main_criterion";
  }
  return "main_criterion";
}

CriterionResult criterion_main(const Effect& e, const Effect& f) {
  const MVec4& ev = e.vec();
  const MVec4& fv = f.vec();
  const MVec4 ec = e.complement().vec();
  const MVec4 fc = f.complement().vec();
  const double d_term =
      mdot(ev, ec) * mdot(fv, fc) - mdot(ev, fc) * mdot(ec, fv);
  CriterionResult out;
  out.lhs = d_term - mdot(ev, fv) * mdot(ec, fc);
  out.rhs = sqrt_clamped(mdot(ev, ev) * mdot(fv, fv) * mdot(ec, ec) * mdot(fc, fc));
  out.verdict = out.lhs <= out.rhs;
  return out;
}

CriterionResult criterion_commutator(const Effect& e, const Effect& f) {
  const MVec4 d = e.vec() - f.vec();
  const double cross = commutator_cross_mag(e, f);
  const MVec4& ev = e.vec();
  const MVec4& fv = f.vec();
  const MVec4 ec = e.complement().vec();
  const MVec4 fc = f.complement().vec();
  CriterionResult out;
  // |e x f|^2 equals |[e,f]|^2 / 4, so this is -<d|d> |[e,f]|^2 / 4.
  out.lhs = -mdot(d, d) * cross * cross;
  const double s = mdot(ev, fv) * sqrt_clamped(mdot(ec, ec) * mdot(fc, fc)) +
                   mdot(ec, fc) * sqrt_clamped(mdot(ev, ev) * mdot(fv, fv));
  out.rhs = s * s;
  out.verdict = out.lhs <= out.rhs;
  return out;
}

BranchResult criterion_disjunctive(const Effect& e, const Effect& f) {
  const MVec4& ev = e.vec();
  const MVec4& fv = f.vec();
  const MVec4 ec = e.complement().vec();
  const MVec4 fc = f.complement().vec();
  const double ee = mdot(ev, ev), ff = mdot(fv, fv), ef = mdot(ev, fv);
  const double ecec = mdot(ec, ec), fcfc = mdot(fc, fc), ecfc = mdot(ec, fc);
  const double c = ee * ff - ef * ef;
  const double cp = ecec * fcfc - ecfc * ecfc;
  const double d_term = mdot(ev, ec) * mdot(fv, fc) - mdot(ev, fc) * mdot(ec, fv);
  const double neg_delta = d_term * d_term - c * cp;

  BranchResult out;
  out.which[0] = neg_delta <= ee * ff * std::abs(cp);
  out.which[1] = neg_delta <= ecec * fcfc * std::abs(c);
  out.which[2] = neg_delta <= 2.0 * ef * ecfc * d_term - ecfc * ecfc * std::abs(c) -
                              ef * ef * std::abs(cp);
  out.verdict = out.which[0] || out.which[1] || out.which[2];
  return out;
}

SharpnessFormResult criterion_sharpness_form(const Effect& e, const Effect& f,
                                             double tol) {
  SharpnessFormResult out;
  const SharpnessProfile se = sharpness(e);
  const SharpnessProfile sf = sharpness(f);
  if (se.F <= tol || sf.F <= tol) {
    // The expression divides by F^2; for a sharp effect the pair is
    // coexistent exactly when it commutes.
    out.guarded = true;
    out.verdict = commutator_cross_mag(e, f) <= tol;
    return out;
  }
  const double x = se.bias, y = sf.bias;
  const double fe2 = se.F * se.F, ff2 = sf.F * sf.F;
  out.lhs = (1.0 - fe2 - ff2) * (1.0 - x * x / fe2 - y * y / ff2);
  const double edotf = 4.0 * dot3(e.spatial(), f.spatial());
  out.rhs = (x * y - edotf) * (x * y - edotf);
  out.verdict = out.lhs <= out.rhs;
  return out;
}

UnbiasedResult criterion_unbiased(const std::array<double, 3>& e_bloch,
                                  const std::array<double, 3>& f_bloch,
                                  double tol) {
  const double re = norm3(e_bloch), rf = norm3(f_bloch);
  if (re > 1.0 + tol || rf > 1.0 + tol)
    throw Error(Errc::InvalidBloch, "Bloch vector leaves the unit ball");

  UnbiasedResult out;
  const double edotf = dot3(e_bloch, f_bloch);
  out.margin_radius = 1.0 + edotf * edotf - re * re - rf * rf;

  const double cross2 = dot3(cross3(e_bloch, f_bloch), cross3(e_bloch, f_bloch));
  out.margin_cross = (1.0 - re * re) * (1.0 - rf * rf) - cross2;

  std::array<double, 3> sum{}, diff{};
  for (int i = 0; i < 3; ++i) {
    sum[i] = e_bloch[i] + f_bloch[i];
    diff[i] = e_bloch[i] - f_bloch[i];
  }
  out.margin_diagonal = 2.0 - norm3(sum) - norm3(diff);

  out.forms = {out.margin_radius >= 0.0, out.margin_cross >= 0.0,
               out.margin_diagonal >= 0.0};
  out.verdict = out.forms[2];
  return out;
}

CoexistenceReport decide(const Effect& e, const Effect& f,
                         const DecisionOptions& opts) {
  CoexistenceReport rep;
  rep.relation = pair_relation(e, f, opts.tol);
  rep.inv = compute_invariants(e, f);
  rep.sharp_e = sharpness(e);
  rep.sharp_f = sharpness(f);

  const CriterionResult main = criterion_main(e, f);
  rep.lhs_main = main.lhs;
  rep.rhs_main = main.rhs;
  rep.margin = main.margin();

  if (rep.relation.comparable != Comparability::None) {
    rep.route = Route::TrivialComparable;
    rep.coexistent = true;
    return rep;
  }
  if (rep.relation.commuting) {
    rep.route = Route::TrivialCommuting;
    rep.coexistent = true;
    return rep;
  }

  rep.route = Route::MainCriterion;
  rep.main = main.verdict;
  rep.commutator = criterion_commutator(e, f).verdict;
  const BranchResult branches = criterion_disjunctive(e, f);
  rep.disjunctive = branches.verdict;
  rep.disjuncts = branches.which;
  const SharpnessFormResult sharp = criterion_sharpness_form(e, f, opts.tol);
  rep.sharpness_form = sharp.verdict;
  rep.sharpness_guarded = sharp.guarded;
  rep.coexistent = main.verdict;
  return rep;
}

}  // namespace coexist
