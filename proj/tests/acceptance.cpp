// Acceptance suite: runs every contract criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "coexist/construction.hpp"
#include "coexist/json_io.hpp"
#include "coexist/oracle.hpp"
#include "coexist/sampling.hpp"

using namespace coexist;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct MixedPairs {
  EffectSampler uniform;
  EffectSampler boundary;
  long index = 0;
  MixedPairs(std::uint64_t seed_u, std::uint64_t seed_b)
      : uniform(SamplerKind::Uniform, seed_u),
        boundary(SamplerKind::NearBoundary, seed_b) {}
  std::pair<Effect, Effect> next() {
    EffectSampler& s = (index % 5 == 4) ? boundary : uniform;
    ++index;
    Effect e = s.next();
    Effect f = s.next();
    return {e, f};
  }
};

Outcome criteria_equivalence() {
  MixedPairs pairs(0xacce971ull, 0xacce972ull);
  long checked = 0, excluded = 0, disagreements = 0, yu_guarded = 0;
  for (long i = 0; i < 100000; ++i) {
    const auto [e, f] = pairs.next();
    const CriterionResult main = criterion_main(e, f);
    if (std::abs(main.margin()) <= 1e-9) {
      ++excluded;
      continue;
    }
    ++checked;
    const bool expect = main.verdict;
    if (criterion_commutator(e, f).verdict != expect) ++disagreements;
    if (criterion_disjunctive(e, f).verdict != expect) ++disagreements;
    const SharpnessFormResult yu = criterion_sharpness_form(e, f);
    if (yu.guarded) {
      ++yu_guarded;
    } else if (yu.verdict != expect) {
      ++disagreements;
    }
  }
  std::ostringstream detail;
  detail << "pairs=100000 checked=" << checked << " band_excluded=" << excluded
         << " sharp_guarded=" << yu_guarded << " disagreements=" << disagreements;
  return {disagreements == 0, detail.str()};
}

Outcome oracle_agreement() {
  MixedPairs pairs(0xacce973ull, 0xacce974ull);
  long checked = 0, mismatches = 0, skipped = 0;
  while (checked < 10000) {
    const auto [e, f] = pairs.next();
    const CriterionResult main = criterion_main(e, f);
    if (std::abs(main.margin()) <= 1e-5) {
      ++skipped;
      continue;
    }
    ++checked;
    SolveOptions opts;
    opts.seed = 0xce11ull + static_cast<std::uint64_t>(checked);
    const FeasibilityResult res = solve(e, f, opts);
    if (res.feasible != main.verdict) ++mismatches;
  }
  std::ostringstream detail;
  detail << "checked=10000 below_resolution=" << skipped
         << " mismatches=" << mismatches;
  return {mismatches == 0, detail.str()};
}

Outcome construction_soundness() {
  MixedPairs pairs(0xacce975ull, 0xacce976ull);
  long coexistent = 0, failures = 0;
  double worst_positivity = 0, worst_sum = 0, worst_marginal = 0;
  for (long i = 0; i < 10000; ++i) {
    const auto [e, f] = pairs.next();
    if (!decide(e, f).coexistent) continue;
    ++coexistent;
    try {
      const JointObservable joint = construct_joint(e, f);
      const JointCheck check = verify_joint(joint, 1e-10);
      worst_positivity = std::max(worst_positivity, check.positivity_violation);
      worst_sum = std::max(worst_sum, check.sum_violation);
      worst_marginal = std::max(worst_marginal,
                                std::max(check.marginal_e_violation,
                                         check.marginal_f_violation));
      if (check.positivity_violation > 1e-10 || check.sum_violation > 1e-12 ||
          check.marginal_e_violation > 1e-12 || check.marginal_f_violation > 1e-12)
        ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  std::ostringstream detail;
  detail << "coexistent=" << coexistent << " failures=" << failures
         << " worst_eig=" << worst_positivity << " worst_sum=" << worst_sum
         << " worst_marginal=" << worst_marginal;
  return {failures == 0, detail.str()};
}

Outcome unbiased_boundary() {
  const double s = 1.0 / std::sqrt(2.0);
  const UnbiasedResult below = criterion_unbiased({s - 1e-9, 0, 0}, {0, s - 1e-9, 0});
  const UnbiasedResult above = criterion_unbiased({s + 1e-9, 0, 0}, {0, s + 1e-9, 0});
  bool pass = below.verdict && !above.verdict;

  long disagreements = 0;
  for (int i = 0; i < 200; ++i) {
    const double re = i / 199.0;
    for (int j = 0; j < 200; ++j) {
      const double rf = j / 199.0;
      const UnbiasedResult res = criterion_unbiased({re, 0, 0}, {0, rf, 0});
      if (res.forms[0] != res.forms[1] || res.forms[0] != res.forms[2])
        ++disagreements;
    }
  }
  pass = pass && disagreements == 0;
  std::ostringstream detail;
  detail << "flip_at_s=1/sqrt2 ok=" << (below.verdict && !above.verdict)
         << " grid=200x200 form_disagreements=" << disagreements;
  return {pass, detail.str()};
}

Outcome sharpness_suite() {
  long violations = 0;
  EffectSampler uniform(SamplerKind::Uniform, 0xacce977ull);
  for (int i = 0; i < 10000; ++i) {
    const Effect e = uniform.next();
    const SharpnessProfile p = sharpness(e);
    if (p.F < 0.0 || p.F > 1.0 + 1e-12) ++violations;
    if (std::abs(p.S - (1.0 - p.F * p.F)) > 1e-12) ++violations;
    if (std::abs(p.S - sharpness(e.complement()).S) > 1e-12) ++violations;
  }
  EffectSampler projs(SamplerKind::Projection, 0xacce978ull);
  double worst_proj = 0;
  for (int i = 0; i < 1000; ++i) {
    const double fval = sharpness(projs.next()).F;
    worst_proj = std::max(worst_proj, fval);
    if (fval > 1e-12) ++violations;
  }
  std::mt19937_64 rng(0xacce979ull);
  for (int i = 0; i < 1000; ++i) {
    const double c0 = EffectSampler::uniform01(rng);
    const SharpnessProfile p = sharpness(Effect::make({c0, 0, 0, 0}));
    if (std::abs(p.F - 1.0) > 1e-12) ++violations;
  }
  std::ostringstream detail;
  detail << "random=10000 projections=1000 trivial=1000 worst_proj_F="
         << worst_proj << " violations=" << violations;
  return {violations == 0, detail.str()};
}

Outcome identity_suites() {
  long violations = 0;

  // cross-product identity suite on random triples (plus a second pair)
  std::mt19937_64 rng(0xacce97aull);
  auto rnd3 = [&rng] {
    auto u = [&rng] { return 2.0 * EffectSampler::uniform01(rng) - 1.0; };
    return MVec3{u(), u(), u()};
  };
  for (int i = 0; i < 10000; ++i) {
    const MVec3 x = rnd3(), y = rnd3(), z = rnd3(), xt = rnd3(), yt = rnd3();
    const MVec3 anti = cross_o(x, y) + cross_o(y, x);
    if (std::abs(anti.c0) + std::abs(anti.c1) + std::abs(anti.c2) > 1e-12)
      ++violations;
    const MVec3 lhs = cross_o(x, cross_o(y, z));
    const MVec3 rhs = mdot(x, z) * y - mdot(x, y) * z;
    if (std::abs(lhs.c0 - rhs.c0) + std::abs(lhs.c1 - rhs.c1) +
            std::abs(lhs.c2 - rhs.c2) > 1e-12)
      ++violations;
    if (std::abs(mdot(x, cross_o(x, y))) > 1e-12) ++violations;
    if (std::abs(mdot(y, cross_o(x, y))) > 1e-12) ++violations;
    if (std::abs(mdot(cross_o(x, y), cross_o(xt, yt)) -
                 (mdot(x, xt) * mdot(y, yt) - mdot(x, yt) * mdot(xt, y))) > 1e-12)
      ++violations;
  }

  // frame-vector identities on planar spacelike pairs
  EffectSampler planar(SamplerKind::UniformPlanar, 0xacce97bull);
  const MVec3 one = MVec3::identity();
  long done = 0;
  while (done < 10000) {
    Effect e = planar.next();
    Effect f = planar.next();
    const PairRelation rel = pair_relation(e, f);
    if (!rel.spacelike || rel.commuting) continue;
    if (rel.swap_applied) std::swap(e, f);
    ++done;
    const MVec3 e3 = MVec3::restrict_of(e.vec());
    const MVec3 f3 = MVec3::restrict_of(f.vec());
    const MVec3 ec = one - e3, fc = one - f3;
    const MVec3 d = e3 - f3;
    const MVec3 g = cross_o(e3, f3);
    const MVec3 gp = cross_o(ec, fc);
    const MVec3 dxg = cross_o(d, g);
    const double orient = e3.c1 * f3.c2 - e3.c2 * f3.c1;
    const InvariantSet inv = compute_invariants(e, f);

    const MVec3 gxgp = cross_o(g, gp);
    const MVec3 expect = (-orient) * d;
    if (std::abs(gxgp.c0 - expect.c0) + std::abs(gxgp.c1 - expect.c1) +
            std::abs(gxgp.c2 - expect.c2) > 1e-12)
      ++violations;
    if (std::abs(0.5 * mdot(ec + fc, dxg) - inv.D) > 1e-12) ++violations;
    if (std::abs(mdot(e3 + f3, g)) > 1e-12) ++violations;
    if (std::abs(mdot(ec + fc, g) - 2.0 * orient) > 1e-12) ++violations;
    if (std::abs(mdot(e3 + f3, dxg) + 2.0 * inv.C) > 1e-12) ++violations;
    if (std::abs(mdot(ec + fc, dxg) - 2.0 * inv.D) > 1e-12) ++violations;
    if (std::abs(mdot(dxg, dxg) - inv.dd * inv.C) > 1e-12) ++violations;

    const double sd = std::sqrt(-inv.dd);
    const MVec3 hp = sd * g + dxg;
    const MVec3 hm = (-sd) * g + dxg;
    const double sqrt_delta = std::sqrt(std::max(0.0, -inv.Delta));
    if (std::abs(mdot(hp, hm) - 2.0 * inv.C * inv.dd) > 1e-12) ++violations;
    if (mdot(hp, hm) <= 0.0) ++violations;
    if (std::abs(mdot(e3 + f3, hp) + 2.0 * inv.C) > 1e-12) ++violations;
    if (mdot(e3 + f3, hp) <= 0.0) ++violations;
    if (std::abs(mdot(ec + fc, hp) - 2.0 * (inv.D + sqrt_delta)) > 1e-10)
      ++violations;
    if (std::abs(mdot(ec + fc, hm) - 2.0 * (inv.D - sqrt_delta)) > 1e-10)
      ++violations;
    if (mdot(ec + fc, hp) <= 0.0) ++violations;
  }
  std::ostringstream detail;
  detail << "cross_triples=10000 planar_pairs=10000 violations=" << violations;
  return {violations == 0, detail.str()};
}

Outcome invariant_signs() {
  MixedPairs pairs(0xacce97cull, 0xacce97dull);
  long violations = 0, spacelike_strict = 0;
  for (long i = 0; i < 10000; ++i) {
    const auto [e, f] = pairs.next();
    const InvariantSet inv = compute_invariants(e, f);
    const PairRelation rel = pair_relation(e, f);
    if (inv.C > 1e-12 || inv.Cp > 1e-12) ++violations;
    if (rel.spacelike && inv.dd < -1e-6) {
      ++spacelike_strict;
      if (!(inv.D > 0.0)) ++violations;
    }
    if (std::abs(inv.Delta) > 1e-12 &&
        (inv.Delta < 0.0) != (rel.spacelike && !rel.commuting))
      ++violations;
  }
  std::ostringstream detail;
  detail << "pairs=10000 strict_spacelike=" << spacelike_strict
         << " violations=" << violations;
  return {violations == 0, detail.str()};
}

Outcome singlet_crosscheck() {
  MixedPairs pairs(0xacce97eull, 0xacce97full);
  double worst = 0;
  for (long i = 0; i < 10000; ++i) {
    const auto [e, f] = pairs.next();
    worst = std::max(worst, std::abs(singlet_joint_probability(e, f) -
                                     mdot(e.vec(), f.vec())));
  }
  std::ostringstream detail;
  detail << "pairs=10000 worst=" << worst;
  return {worst <= 1e-12, detail.str()};
}

Outcome projection_monotone() {
  std::mt19937_64 rng(0xacce980ull);
  auto rnd4 = [&rng] {
    auto u = [&rng] { return 2.0 * EffectSampler::uniform01(rng) - 1.0; };
    return MVec4{u(), u(), u(), u()};
  };
  long done = 0, degenerate = 0, violations = 0;
  while (done < 10000) {
    const std::array<MVec4, 3> basis = {MVec4::identity(), rnd4(), rnd4()};
    const MVec4 x = rnd4();
    const auto dir = EffectSampler::unit_vector(rng);
    const double r = EffectSampler::uniform01(rng);
    const MVec4 w{r + EffectSampler::uniform01(rng), r * dir[0], r * dir[1],
                  r * dir[2]};
    const MVec4 y = x + w;
    MVec4 px, py;
    try {
      px = project_onto_span(x, basis);
      py = project_onto_span(y, basis);
    } catch (const Error&) {
      ++degenerate;
      continue;
    }
    ++done;
    if (!precedes(px, py, 1e-9)) ++violations;
    const MVec4 probe = rnd4();
    if (std::abs(mdot(probe, py) - mdot(project_onto_span(probe, basis), y)) >
        1e-12)
      ++violations;
  }
  std::ostringstream detail;
  detail << "ordered_pairs=10000 degenerate_draws=" << degenerate
         << " violations=" << violations;
  return {violations == 0, detail.str()};
}

Outcome segment_gap_consistency() {
  MixedPairs pairs(0xacce981ull, 0xacce982ull);
  long checked = 0, violations = 0;
  for (long i = 0; i < 40000 && checked < 10000; ++i) {
    const auto [e, f] = pairs.next();
    const PairRelation rel = pair_relation(e, f);
    if (!rel.spacelike || rel.commuting) continue;
    const CriterionResult main = criterion_main(e, f);
    if (std::abs(main.margin()) <= 1e-9) continue;
    HyperbolaSegments seg;
    try {
      seg = hyperbola_segments(e, f);
    } catch (const Error&) {
      continue;
    }
    ++checked;
    if ((seg.lamA_minus <= seg.lamB_plus) != main.verdict) ++violations;
  }
  std::ostringstream detail;
  detail << "checked=" << checked << " violations=" << violations;
  return {checked >= 5000 && violations == 0, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"criteria-equivalence", criteria_equivalence},
      {"oracle-agreement", oracle_agreement},
      {"construction-soundness", construction_soundness},
      {"unbiased-boundary", unbiased_boundary},
      {"sharpness-measures", sharpness_suite},
      {"vector-identity-suites", identity_suites},
      {"invariant-signs", invariant_signs},
      {"singlet-crosscheck", singlet_crosscheck},
      {"projection-monotone", projection_monotone},
      {"segment-gap-consistency", segment_gap_consistency},
  };

  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    const Outcome outcome = fn();
    if (!outcome.pass) ++failures;
    std::printf("%s %2d %-24s %s\n", outcome.pass ? "PASS" : "FAIL", index,
                name.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
