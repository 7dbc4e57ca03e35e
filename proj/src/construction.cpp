#include "coexist/construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace coexist {

namespace {

constexpr double kM3Band = 1e-12;       // |c3| below this counts as planar
constexpr double kDegenerateDelta = 1e-14;

bool planar(const Effect& e) { return std::abs(e.vec().c3) <= kM3Band; }

double orientation(const Effect& e, const Effect& f) {
  return e.vec().c1 * f.vec().c2 - e.vec().c2 * f.vec().c1;
}

std::array<MVec4, 4> outcome_vectors(const MVec4& a, const MVec4& e, const MVec4& f) {
  return {a, e - a, f - a, MVec4::identity() - e - f + a};
}

double outcome_margin(const MVec4& a, const MVec4& e, const MVec4& f) {
  double m = std::numeric_limits<double>::infinity();
  for (const MVec4& g : outcome_vectors(a, e, f)) m = std::min(m, g.lambda_min());
  return m;
}

// Hermitian part of the operator product ef; for commuting pairs this is the
// product itself.
MVec4 symmetric_product(const MVec4& e, const MVec4& f) {
  const double s0 = e.c0 * f.c0 + e.c1 * f.c1 + e.c2 * f.c2 + e.c3 * f.c3;
  return {s0, e.c0 * f.c1 + f.c0 * e.c1, e.c0 * f.c2 + f.c0 * e.c2,
          e.c0 * f.c3 + f.c0 * e.c3};
}

}  // namespace

const char* construct_route_name(ConstructRoute r) noexcept {
  switch (r) {
    case ConstructRoute::ComparableAEqualsE: return "comparable_a_e";
    case ConstructRoute::ComparableAEqualsF: return "comparable_a_f";
    case ConstructRoute::ComparableAZero: return "comparable_a_zero";
    case ConstructRoute::ComparableAOverlap: return "comparable_a_overlap";
    case ConstructRoute::CommutingProduct: return "commuting";
    case ConstructRoute::GenericHyperbola: return "generic";
    case ConstructRoute::DegenerateFallback: return "degenerate_fallback";
  }
  return "generic";
}

ReducedFrame reduce_frame(const Effect& e, const Effect& f, double tol) {
  const double cross = commutator_cross_mag(e, f);
  if (cross <= tol)
    throw Error(Errc::DegenerateCross, "spatial parts are collinear");

  ReducedFrame out;
  if (planar(e) && planar(f) && orientation(e, f) > 0.0) {
    out.rotation = Rotation3::identity();
    out.e3 = {e.vec().c0, e.vec().c1, e.vec().c2};
    out.f3 = {f.vec().c0, f.vec().c1, f.vec().c2};
    return out;
  }

  const auto es = e.spatial();
  const auto fs = f.spatial();
  out.rotation = Rotation3::align_with_z({es[1] * fs[2] - es[2] * fs[1],
                                          es[2] * fs[0] - es[0] * fs[2],
                                          es[0] * fs[1] - es[1] * fs[0]});
  const MVec4 er = rotate_spatial(e.vec(), out.rotation);
  const MVec4 fr = rotate_spatial(f.vec(), out.rotation);
  out.e3 = {er.c0, er.c1, er.c2};
  out.f3 = {fr.c0, fr.c1, fr.c2};
  return out;
}

HyperbolaSegments hyperbola_segments(const Effect& e, const Effect& f, double tol) {
  const PairRelation rel = pair_relation(e, f, tol);
  if (!rel.spacelike)
    throw Error(Errc::NotSpacelike, "pair is not spacelike related");
  if (rel.commuting)
    throw Error(Errc::Commuting, "commuting pair has no asymptote frame");

  // Orientation convention: for pairs already lying in the s1-s2 plane with
  // negative orientation, exchange e and f before reducing. The segment
  // endpoints are symmetric under the exchange, so callers only see the
  // bookkeeping flag.
  Effect a = e, b = f;
  bool swapped = false;
  if (planar(e) && planar(f) && orientation(e, f) < 0.0) {
    std::swap(a, b);
    swapped = true;
  }
  const ReducedFrame red = reduce_frame(a, b, tol);

  HyperbolaSegments seg;
  seg.frame.rotation = red.rotation;
  seg.frame.swapped = swapped;
  seg.frame.e3 = red.e3;
  seg.frame.f3 = red.f3;
  seg.frame.d = red.e3 - red.f3;
  seg.frame.g = cross_o(red.e3, red.f3);
  seg.frame.dxg = cross_o(seg.frame.d, seg.frame.g);
  const double dd = mdot(seg.frame.d, seg.frame.d);
  const double sd = std::sqrt(std::max(0.0, -dd));
  seg.frame.h_plus = sd * seg.frame.g + seg.frame.dxg;
  seg.frame.h_minus = (-sd) * seg.frame.g + seg.frame.dxg;

  const MVec3 ec = MVec3::identity() - red.e3;
  const MVec3 fc = MVec3::identity() - red.f3;
  const double ee = mdot(red.e3, red.e3), ff = mdot(red.f3, red.f3);
  const double ef = mdot(red.e3, red.f3);
  const double ecec = mdot(ec, ec), fcfc = mdot(fc, fc), ecfc = mdot(ec, fc);
  const double c_abs = ef * ef - ee * ff;
  const double cp_abs = ecfc * ecfc - ecec * fcfc;
  if (!(c_abs > 1e-15))
    throw Error(Errc::DegenerateCross, "hyperbola degenerates, |C| ~ 0");
  const double d_term = mdot(red.e3, ec) * mdot(red.f3, fc) -
                        mdot(red.e3, fc) * mdot(ec, red.f3);
  const double delta_abs = std::max(0.0, d_term * d_term - c_abs * cp_abs);
  const double sqrt_delta = std::sqrt(delta_abs);

  const double gamma_p = ef + std::sqrt(std::max(0.0, ee * ff));
  const double gamma_pp = ecfc + std::sqrt(std::max(0.0, ecec * fcfc));
  // Gamma- rewritten through GammaP * GammaM = |C| to avoid cancellation
  // near the segment-collapse boundary.
  seg.lamA_minus = 1.0 / (4.0 * gamma_p);
  seg.lamA_plus = gamma_p / (4.0 * c_abs);
  seg.lamB_plus = gamma_pp / (4.0 * (d_term + sqrt_delta));
  seg.lamB_minus = cp_abs / (4.0 * gamma_pp * (d_term + sqrt_delta));
  seg.lam_lo = std::max(seg.lamA_minus, seg.lamB_minus);
  seg.lam_hi = std::min(seg.lamA_plus, seg.lamB_plus);
  seg.hyper_const = 1.0 / (16.0 * c_abs);
  return seg;
}

namespace {

double pick_lambda(double lo, double hi, const LambdaChoice& pick) {
  switch (pick.policy) {
    case LambdaPolicy::Geometric: return std::sqrt(lo * hi);
    case LambdaPolicy::Lo: return lo;
    case LambdaPolicy::Hi: return hi;
    case LambdaPolicy::Quantile: {
      const double q = std::clamp(pick.quantile, 0.0, 1.0);
      return lo + q * (hi - lo);
    }
  }
  return std::sqrt(lo * hi);
}

struct GenericResult {
  MVec4 a;
  HyperbolaSegments segments;
  double lam_star = 0.0, mu_star = 0.0;
};

GenericResult construct_generic(const Effect& e, const Effect& f,
                                const LambdaChoice& pick, double tol) {
  GenericResult out;
  out.segments = hyperbola_segments(e, f, tol);
  const HyperbolaSegments& seg = out.segments;

  double lo = seg.lam_lo, hi = seg.lam_hi;
  if (lo > hi) {
    // decide() accepted the pair, so any remaining crossover is rounding at
    // the segment-collapse boundary.
    lo = hi = std::sqrt(lo * hi);
  }
  out.lam_star = pick_lambda(lo, hi, pick);
  out.mu_star = seg.hyper_const / out.lam_star;

  const MVec3 mid = 0.5 * (seg.frame.e3 + seg.frame.f3);
  const MVec3 a3 = mid - out.lam_star * seg.frame.h_plus -
                   out.mu_star * seg.frame.h_minus;
  out.a = rotate_spatial(a3.embed(), seg.frame.rotation.transposed());
  return out;
}

}  // namespace

JointObservable construct_joint(const Effect& e, const Effect& f,
                                const LambdaChoice& pick, double tol) {
  const CoexistenceReport rep = decide(e, f, {tol, 1e-9});
  if (!rep.coexistent) {
    std::ostringstream msg;
    msg << "pair is not coexistent (margin " << rep.margin << ")";
    throw Error(Errc::NotCoexistent, msg.str());
  }

  MVec4 a{};
  ConstructRoute route;
  std::optional<HyperbolaSegments> segments;
  double lam_star = 0.0, mu_star = 0.0;
  bool swapped = false;

  if (rep.route == Route::TrivialComparable) {
    switch (rep.relation.comparable) {
      case Comparability::EPrecF:
        a = e.vec();
        route = ConstructRoute::ComparableAEqualsE;
        break;
      case Comparability::FPrecE:
        a = f.vec();
        route = ConstructRoute::ComparableAEqualsF;
        break;
      case Comparability::EPrecFc:
        a = MVec4::zero();
        route = ConstructRoute::ComparableAZero;
        break;
      default:
        a = e.vec() + f.vec() - MVec4::identity();
        route = ConstructRoute::ComparableAOverlap;
        break;
    }
  } else if (rep.route == Route::TrivialCommuting) {
    a = symmetric_product(e.vec(), f.vec());
    route = ConstructRoute::CommutingProduct;
  } else {
    bool degenerate = std::abs(rep.inv.Delta) < kDegenerateDelta || !rep.relation.spacelike;
    if (!degenerate) {
      try {
        GenericResult gen = construct_generic(e, f, pick, tol);
        a = gen.a;
        segments = std::move(gen.segments);
        lam_star = gen.lam_star;
        mu_star = gen.mu_star;
        swapped = segments->frame.swapped;
        route = ConstructRoute::GenericHyperbola;
      } catch (const Error& err) {
        if (err.code() != Errc::DegenerateCross) throw;
        degenerate = true;
      }
    }
    if (degenerate) {
      // Hyperbola collapsed: the product candidate (the commuting-route
      // choice with the cross term dropped) or one of the trivial-route
      // candidates is feasible here; keep the one with the best margin.
      route = ConstructRoute::DegenerateFallback;
      const std::array<MVec4, 5> candidates = {
          symmetric_product(e.vec(), f.vec()), e.vec(), f.vec(), MVec4::zero(),
          e.vec() + f.vec() - MVec4::identity()};
      a = candidates[0];
      double best = outcome_margin(a, e.vec(), f.vec());
      for (const MVec4& cand : candidates) {
        const double m = outcome_margin(cand, e.vec(), f.vec());
        if (m > best) {
          best = m;
          a = cand;
        }
      }
    }
  }

  const auto vecs = outcome_vectors(a, e.vec(), f.vec());
  const double worst = outcome_margin(a, e.vec(), f.vec());
  if (worst < -10.0 * tol) {
    std::ostringstream msg;
    msg << "constructed outcome has eigenvalue " << worst
        << " below -10*tol on route " << construct_route_name(route);
    throw Error(Errc::PositivityViolation, msg.str());
  }
  const double slack = 10.0 * tol;
  JointObservable joint{
      {Effect::make(vecs[0], slack), Effect::make(vecs[1], slack),
       Effect::make(vecs[2], slack), Effect::make(vecs[3], slack)},
      Effect::make(a, slack),
      e,
      f,
      route,
      swapped,
      std::move(segments),
      lam_star,
      mu_star};
  return joint;
}

JointCheck verify_joint_raw(const std::array<MVec4, 4>& outcomes, const MVec4& e,
                            const MVec4& f, double tol) {
  JointCheck check;
  MVec4 sum = MVec4::zero();
  for (const MVec4& g : outcomes) {
    check.positivity_violation =
        std::max(check.positivity_violation, -g.lambda_min());
    sum = sum + g;
  }
  check.positivity_violation = std::max(0.0, check.positivity_violation);

  const MVec4 sum_dev = sum - MVec4::identity();
  const MVec4 marg_e = outcomes[0] + outcomes[1] - e;
  const MVec4 marg_f = outcomes[0] + outcomes[2] - f;
  auto max_abs = [](const MVec4& v) {
    return std::max(std::max(std::abs(v.c0), std::abs(v.c1)),
                    std::max(std::abs(v.c2), std::abs(v.c3)));
  };
  check.sum_violation = max_abs(sum_dev);
  check.marginal_e_violation = max_abs(marg_e);
  check.marginal_f_violation = max_abs(marg_f);
  check.pass = check.worst() <= tol;
  return check;
}

double JointCheck::worst() const {
  return std::max(std::max(positivity_violation, sum_violation),
                  std::max(marginal_e_violation, marginal_f_violation));
}

JointCheck verify_joint(const JointObservable& joint, double tol) {
  return verify_joint_raw({joint.outcomes[0].vec(), joint.outcomes[1].vec(),
                           joint.outcomes[2].vec(), joint.outcomes[3].vec()},
                          joint.e.vec(), joint.f.vec(), tol);
}

}  // namespace coexist
