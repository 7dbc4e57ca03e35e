#pragma once

#include <cstdint>

#include "coexist/effects.hpp"

namespace coexist {

/// Ground-truth feasibility of the joint-observable problem, obtained by
/// maximizing the positivity margin over candidate corner effects a without
/// any use of the analytic criteria.
struct FeasibilityResult {
  bool feasible = false;
  double best_margin = 0.0;
  MVec4 argmax_a;
  long evaluations = 0;
  bool budget_exhausted = false;
  double tol = 0.0;
};

/// Smallest eigenvalue among the four operators
/// {a, e - a, f - a, 1 - e - f + a}; concave in a (each term is an affine
/// time component minus a Euclidean norm of an affine spatial part).
double margin(const MVec4& a, const Effect& e, const Effect& f);

struct SolveOptions {
  double tol = 1e-7;
  long budget = 100000;  ///< margin evaluations across all starts
  std::uint64_t seed = 0;
  int random_starts = 8;
};

/// Maximizes margin(a) by multi-start coordinate search with interval
/// halving, then a few rounds of random-direction polish to escape
/// coordinate-aligned ridges of the piecewise-smooth objective. Concavity
/// makes the located maximum global to within the search resolution.
/// Deterministic for a fixed seed. The pair is feasible iff the best margin
/// reaches -tol.
FeasibilityResult solve(const Effect& e, const Effect& f,
                        const SolveOptions& opts = {});

}  // namespace coexist
