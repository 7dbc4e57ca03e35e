#include "coexist/capi.h"

#include <cstring>
#include <new>
#include <string>

#include "coexist/construction.hpp"
#include "coexist/json_io.hpp"
#include "coexist/oracle.hpp"
#include "coexist/sampling.hpp"

struct coexist_effect {
  coexist::Effect impl;
};

struct coexist_sampler {
  coexist::EffectSampler impl;
};

namespace {

thread_local std::string g_last_error;

coexist_status status_of(coexist::Errc code) {
  using coexist::Errc;
  switch (code) {
    case Errc::InvalidArgument: return COEXIST_ERROR_INVALID_ARGUMENT;
    case Errc::ParseError: return COEXIST_ERROR_PARSE;
    case Errc::NotAnEffect: return COEXIST_ERROR_NOT_AN_EFFECT;
    case Errc::NonOrthogonalRotation: return COEXIST_ERROR_NON_ORTHOGONAL_ROTATION;
    case Errc::DegenerateSubspace: return COEXIST_ERROR_DEGENERATE_SUBSPACE;
    case Errc::DegenerateCross: return COEXIST_ERROR_DEGENERATE_CROSS;
    case Errc::NotSpacelike: return COEXIST_ERROR_NOT_SPACELIKE;
    case Errc::Commuting: return COEXIST_ERROR_COMMUTING;
    case Errc::NotCoexistent: return COEXIST_ERROR_NOT_COEXISTENT;
    case Errc::PositivityViolation: return COEXIST_ERROR_POSITIVITY;
    case Errc::InvalidBloch: return COEXIST_ERROR_INVALID_ARGUMENT;
  }
  return COEXIST_ERROR_INTERNAL;
}

template <typename Fn>
coexist_status guarded(Fn&& fn) {
  try {
    fn();
    return COEXIST_OK;
  } catch (const coexist::Error& err) {
    g_last_error = err.what();
    return status_of(err.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return COEXIST_ERROR_INTERNAL;
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return COEXIST_ERROR_INTERNAL;
  }
}

coexist_status invalid(const char* message) {
  g_last_error = message;
  return COEXIST_ERROR_INVALID_ARGUMENT;
}

void write_vec(double out[4], const coexist::MVec4& v) {
  out[0] = v.c0;
  out[1] = v.c1;
  out[2] = v.c2;
  out[3] = v.c3;
}

int compare_code(coexist::Comparability c) {
  using coexist::Comparability;
  switch (c) {
    case Comparability::EPrecF: return COEXIST_COMPARE_E_BELOW_F;
    case Comparability::FPrecE: return COEXIST_COMPARE_F_BELOW_E;
    case Comparability::EPrecFc: return COEXIST_COMPARE_E_BELOW_FC;
    case Comparability::ESuccFc: return COEXIST_COMPARE_E_ABOVE_FC;
    case Comparability::None: return COEXIST_COMPARE_NONE;
  }
  return COEXIST_COMPARE_NONE;
}

void fill_segments(coexist_segments_info* out, const coexist::HyperbolaSegments& seg) {
  out->lam_a_minus = seg.lamA_minus;
  out->lam_a_plus = seg.lamA_plus;
  out->lam_b_minus = seg.lamB_minus;
  out->lam_b_plus = seg.lamB_plus;
  out->lam_lo = seg.lam_lo;
  out->lam_hi = seg.lam_hi;
  out->hyper_const = seg.hyper_const;
  out->swapped = seg.frame.swapped ? 1 : 0;
  out->gap = seg.gap();
}

}  // namespace

extern "C" {

const char* coexist_version(void) { return "1.0.0"; }

const char* coexist_status_name(coexist_status status) {
  switch (status) {
    case COEXIST_OK: return "ok";
    case COEXIST_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case COEXIST_ERROR_PARSE: return "parse_error";
    case COEXIST_ERROR_NOT_AN_EFFECT: return "not_an_effect";
    case COEXIST_ERROR_NON_ORTHOGONAL_ROTATION: return "non_orthogonal_rotation";
    case COEXIST_ERROR_DEGENERATE_SUBSPACE: return "degenerate_subspace";
    case COEXIST_ERROR_DEGENERATE_CROSS: return "degenerate_cross";
    case COEXIST_ERROR_NOT_SPACELIKE: return "not_spacelike";
    case COEXIST_ERROR_COMMUTING: return "commuting";
    case COEXIST_ERROR_NOT_COEXISTENT: return "not_coexistent";
    case COEXIST_ERROR_POSITIVITY: return "positivity_violation";
    case COEXIST_ERROR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case COEXIST_ERROR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* coexist_last_error_message(void) { return g_last_error.c_str(); }

coexist_status coexist_effect_create(const double coeffs[4], double tol,
                                     coexist_effect** out) {
  if (!coeffs || !out) return invalid("null pointer argument");
  *out = nullptr;
  return guarded([&] {
    coexist::Effect e = coexist::Effect::make(
        {coeffs[0], coeffs[1], coeffs[2], coeffs[3]}, tol);
    *out = new coexist_effect{e};
  });
}

coexist_status coexist_effect_from_json(const char* json, double tol,
                                        coexist_effect** out) {
  if (!json || !out) return invalid("null pointer argument");
  *out = nullptr;
  return guarded([&] {
    coexist::Effect e = coexist::effect_from_json(json, tol);
    *out = new coexist_effect{e};
  });
}

void coexist_effect_free(coexist_effect* effect) { delete effect; }

coexist_status coexist_effect_coeffs(const coexist_effect* effect, double out[4]) {
  if (!effect || !out) return invalid("null pointer argument");
  write_vec(out, effect->impl.vec());
  return COEXIST_OK;
}

coexist_status coexist_effect_to_json(const coexist_effect* effect, char* buf,
                                      size_t cap, size_t* len) {
  if (!effect || !buf) return invalid("null pointer argument");
  const std::string text = coexist::effect_to_json(effect->impl);
  if (len) *len = text.size();
  if (cap < text.size() + 1) {
    g_last_error = "buffer too small for serialized effect";
    return COEXIST_ERROR_BUFFER_TOO_SMALL;
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return COEXIST_OK;
}

coexist_status coexist_effect_complement(const coexist_effect* effect,
                                         coexist_effect** out) {
  if (!effect || !out) return invalid("null pointer argument");
  *out = new (std::nothrow) coexist_effect{effect->impl.complement()};
  return *out ? COEXIST_OK : COEXIST_ERROR_INTERNAL;
}

int coexist_effect_classify(const coexist_effect* effect, double tol) {
  if (!effect) return -COEXIST_ERROR_INVALID_ARGUMENT;
  switch (coexist::classify_effect(effect->impl, tol)) {
    case coexist::EffectClass::Zero: return COEXIST_EFFECT_ZERO;
    case coexist::EffectClass::One: return COEXIST_EFFECT_ONE;
    case coexist::EffectClass::Trivial: return COEXIST_EFFECT_TRIVIAL;
    case coexist::EffectClass::SharpNontrivial: return COEXIST_EFFECT_SHARP_NONTRIVIAL;
    case coexist::EffectClass::Unsharp: return COEXIST_EFFECT_UNSHARP;
  }
  return COEXIST_EFFECT_UNSHARP;
}

coexist_status coexist_effect_sharpness(const coexist_effect* effect, double out[3]) {
  if (!effect || !out) return invalid("null pointer argument");
  const coexist::SharpnessProfile p = coexist::sharpness(effect->impl);
  out[0] = p.F;
  out[1] = p.S;
  out[2] = p.bias;
  return COEXIST_OK;
}

coexist_status coexist_check(const coexist_effect* e, const coexist_effect* f,
                             double tol, coexist_report* out) {
  if (!e || !f || !out) return invalid("null pointer argument");
  return guarded([&] {
    const coexist::CoexistenceReport rep =
        coexist::decide(e->impl, f->impl, {tol, 1e-9});
    *out = coexist_report{};
    out->coexistent = rep.coexistent ? 1 : 0;
    switch (rep.route) {
      case coexist::Route::TrivialComparable:
        out->route = COEXIST_ROUTE_TRIVIAL_COMPARABLE;
        break;
      case coexist::Route::TrivialCommuting:
        out->route = COEXIST_ROUTE_TRIVIAL_COMMUTING;
        break;
      case coexist::Route::MainCriterion:
        out->route = COEXIST_ROUTE_MAIN_CRITERION;
        break;
    }
    out->comparable = compare_code(rep.relation.comparable);
    out->commuting = rep.relation.commuting ? 1 : 0;
    out->spacelike = rep.relation.spacelike ? 1 : 0;
    out->swap_applied = rep.relation.swap_applied ? 1 : 0;
    out->cross_mag = rep.relation.cross_mag;
    out->lhs_main = rep.lhs_main;
    out->rhs_main = rep.rhs_main;
    out->margin = rep.margin;
    auto verdict = [](const std::optional<bool>& v) {
      return v.has_value() ? (*v ? 1 : 0) : -1;
    };
    out->verdict_main = verdict(rep.main);
    out->verdict_commutator = verdict(rep.commutator);
    out->verdict_disjunctive = verdict(rep.disjunctive);
    out->verdict_sharpness_form = verdict(rep.sharpness_form);
    for (int i = 0; i < 3; ++i) out->disjuncts[i] = rep.disjuncts[i] ? 1 : 0;
    out->sharpness_guarded = rep.sharpness_guarded ? 1 : 0;
    out->C = rep.inv.C;
    out->Cp = rep.inv.Cp;
    out->D = rep.inv.D;
    out->Delta = rep.inv.Delta;
    out->GammaP = rep.inv.GammaP;
    out->GammaM = rep.inv.GammaM;
    out->GammaPp = rep.inv.GammaPp;
    out->GammaMp = rep.inv.GammaMp;
    out->N = rep.inv.N;
    out->Np = rep.inv.Np;
    out->dd = rep.inv.dd;
    out->F_e = rep.sharp_e.F;
    out->S_e = rep.sharp_e.S;
    out->bias_e = rep.sharp_e.bias;
    out->F_f = rep.sharp_f.F;
    out->S_f = rep.sharp_f.S;
    out->bias_f = rep.sharp_f.bias;
  });
}

coexist_status coexist_check_unbiased(const double e_bloch[3], const double f_bloch[3],
                                      double tol, coexist_unbiased_report* out) {
  if (!e_bloch || !f_bloch || !out) return invalid("null pointer argument");
  return guarded([&] {
    const coexist::UnbiasedResult res = coexist::criterion_unbiased(
        {e_bloch[0], e_bloch[1], e_bloch[2]},
        {f_bloch[0], f_bloch[1], f_bloch[2]}, tol);
    out->coexistent = res.verdict ? 1 : 0;
    out->radius_form = res.forms[0] ? 1 : 0;
    out->cross_form = res.forms[1] ? 1 : 0;
    out->diagonal_form = res.forms[2] ? 1 : 0;
    out->margin_radius = res.margin_radius;
    out->margin_cross = res.margin_cross;
    out->margin_diagonal = res.margin_diagonal;
  });
}

coexist_status coexist_segments(const coexist_effect* e, const coexist_effect* f,
                                double tol, coexist_segments_info* out) {
  if (!e || !f || !out) return invalid("null pointer argument");
  return guarded([&] {
    fill_segments(out, coexist::hyperbola_segments(e->impl, f->impl, tol));
  });
}

coexist_status coexist_construct(const coexist_effect* e, const coexist_effect* f,
                                 double tol, int lambda_policy, double quantile,
                                 coexist_joint* out) {
  if (!e || !f || !out) return invalid("null pointer argument");
  coexist::LambdaChoice pick;
  switch (lambda_policy) {
    case COEXIST_LAMBDA_GEOMETRIC: pick.policy = coexist::LambdaPolicy::Geometric; break;
    case COEXIST_LAMBDA_LO: pick.policy = coexist::LambdaPolicy::Lo; break;
    case COEXIST_LAMBDA_HI: pick.policy = coexist::LambdaPolicy::Hi; break;
    case COEXIST_LAMBDA_QUANTILE:
      pick.policy = coexist::LambdaPolicy::Quantile;
      pick.quantile = quantile;
      break;
    default: return invalid("unknown lambda policy");
  }
  return guarded([&] {
    const coexist::JointObservable joint =
        coexist::construct_joint(e->impl, f->impl, pick, tol);
    *out = coexist_joint{};
    write_vec(out->a, joint.a.vec());
    for (int i = 0; i < 4; ++i) write_vec(out->outcomes[i], joint.outcomes[i].vec());
    switch (joint.route) {
      case coexist::ConstructRoute::ComparableAEqualsE:
        out->route = COEXIST_CONSTRUCT_COMPARABLE_A_E;
        break;
      case coexist::ConstructRoute::ComparableAEqualsF:
        out->route = COEXIST_CONSTRUCT_COMPARABLE_A_F;
        break;
      case coexist::ConstructRoute::ComparableAZero:
        out->route = COEXIST_CONSTRUCT_COMPARABLE_A_ZERO;
        break;
      case coexist::ConstructRoute::ComparableAOverlap:
        out->route = COEXIST_CONSTRUCT_COMPARABLE_A_OVERLAP;
        break;
      case coexist::ConstructRoute::CommutingProduct:
        out->route = COEXIST_CONSTRUCT_COMMUTING;
        break;
      case coexist::ConstructRoute::GenericHyperbola:
        out->route = COEXIST_CONSTRUCT_GENERIC;
        break;
      case coexist::ConstructRoute::DegenerateFallback:
        out->route = COEXIST_CONSTRUCT_DEGENERATE_FALLBACK;
        break;
    }
    out->swapped = joint.swapped ? 1 : 0;
    out->lam_star = joint.lam_star;
    out->mu_star = joint.mu_star;
    if (joint.segments) {
      out->has_segments = 1;
      fill_segments(&out->segments, *joint.segments);
    }
  });
}

coexist_status coexist_verify_joint(const double outcomes[4][4], const double e[4],
                                    const double f[4], double tol,
                                    coexist_joint_check* out) {
  if (!outcomes || !e || !f || !out) return invalid("null pointer argument");
  const auto vec = [](const double* c) {
    return coexist::MVec4{c[0], c[1], c[2], c[3]};
  };
  const coexist::JointCheck check = coexist::verify_joint_raw(
      {vec(outcomes[0]), vec(outcomes[1]), vec(outcomes[2]), vec(outcomes[3])},
      vec(e), vec(f), tol);
  out->positivity_violation = check.positivity_violation;
  out->sum_violation = check.sum_violation;
  out->marginal_e_violation = check.marginal_e_violation;
  out->marginal_f_violation = check.marginal_f_violation;
  out->pass = check.pass ? 1 : 0;
  return COEXIST_OK;
}

coexist_status coexist_oracle_margin(const double a[4], const coexist_effect* e,
                                     const coexist_effect* f, double* out) {
  if (!a || !e || !f || !out) return invalid("null pointer argument");
  *out = coexist::margin({a[0], a[1], a[2], a[3]}, e->impl, f->impl);
  return COEXIST_OK;
}

coexist_status coexist_oracle_solve(const coexist_effect* e, const coexist_effect* f,
                                    double tol, int64_t budget, uint64_t seed,
                                    coexist_feasibility* out) {
  if (!e || !f || !out) return invalid("null pointer argument");
  return guarded([&] {
    coexist::SolveOptions opts;
    opts.tol = tol;
    opts.budget = static_cast<long>(budget);
    opts.seed = seed;
    const coexist::FeasibilityResult res = coexist::solve(e->impl, f->impl, opts);
    out->feasible = res.feasible ? 1 : 0;
    out->best_margin = res.best_margin;
    write_vec(out->argmax_a, res.argmax_a);
    out->evaluations = res.evaluations;
    out->budget_exhausted = res.budget_exhausted ? 1 : 0;
    out->tol = res.tol;
  });
}

coexist_status coexist_sampler_create(int kind, uint64_t seed, coexist_sampler** out) {
  if (!out) return invalid("null pointer argument");
  *out = nullptr;
  coexist::SamplerKind sampler_kind;
  switch (kind) {
    case COEXIST_SAMPLER_UNIFORM: sampler_kind = coexist::SamplerKind::Uniform; break;
    case COEXIST_SAMPLER_BOUNDARY:
      sampler_kind = coexist::SamplerKind::NearBoundary;
      break;
    default: return invalid("unknown sampler kind");
  }
  *out = new (std::nothrow) coexist_sampler{{sampler_kind, seed}};
  return *out ? COEXIST_OK : COEXIST_ERROR_INTERNAL;
}

coexist_status coexist_sampler_next(coexist_sampler* sampler, double out_coeffs[4]) {
  if (!sampler || !out_coeffs) return invalid("null pointer argument");
  return guarded([&] { write_vec(out_coeffs, sampler->impl.next().vec()); });
}

void coexist_sampler_free(coexist_sampler* sampler) { delete sampler; }

}  // extern "C"
