#pragma once

#include <array>
#include <optional>

#include "coexist/invariants.hpp"

namespace coexist {

/// One side-by-side evaluation of an inequality criterion. The verdict is
/// non-strict: lhs <= rhs counts as coexistent, so boundary pairs pass.
struct CriterionResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool verdict = false;
  double margin() const { return rhs - lhs; }
};

/// Main criterion: D - <e|f><e'|f'> <= sqrt(<e|e><f|f><e'|e'><f'|f'>).
/// Necessary and sufficient for coexistence of arbitrary effect pairs.
CriterionResult criterion_main(const Effect& e, const Effect& f);

/// Commutator form: -<d|d> |[e,f]|^2 / 4 bounded by a square; the left-hand
/// side vanishes for commuting or non-spacelike pairs, which makes the
/// trivial cases manifest.
CriterionResult criterion_commutator(const Effect& e, const Effect& f);

/// Three-branch form: coexistent iff at least one of three polynomial
/// inequalities in the pair invariants holds. `which` flags the satisfied
/// branches.
struct BranchResult {
  bool verdict = false;
  std::array<bool, 3> which = {false, false, false};
};

BranchResult criterion_disjunctive(const Effect& e, const Effect& f);

/// Criterion phrased through the unsharpness measures F and the biases
/// x = 2*e0 - 1:
///   (1 - F(e)^2 - F(f)^2)(1 - x^2/F(e)^2 - y^2/F(f)^2) <= (xy - 4 e.f)^2.
/// Undefined at F = 0 (rank-1 projections); there the verdict falls back to
/// the commutation test and is flagged as guarded.
struct SharpnessFormResult {
  bool verdict = false;
  bool guarded = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

SharpnessFormResult criterion_sharpness_form(const Effect& e, const Effect& f,
                                             double tol = kDefaultTol);

/// Unbiased special case, e = (1 + eb.s)/2, in three equivalent forms:
///   radius:   |eb|^2 + |fb|^2 <= 1 + (eb.fb)^2
///   cross:    |eb x fb|^2 <= (1 - eb^2)(1 - fb^2)
///   diagonal: |eb + fb| + |eb - fb| <= 2
/// The verdict is the diagonal form. Throws InvalidBloch for |eb| > 1 + tol.
struct UnbiasedResult {
  bool verdict = false;
  std::array<bool, 3> forms = {false, false, false};
  double margin_radius = 0.0;
  double margin_cross = 0.0;
  double margin_diagonal = 0.0;
};

UnbiasedResult criterion_unbiased(const std::array<double, 3>& e_bloch,
                                  const std::array<double, 3>& f_bloch,
                                  double tol = kDefaultTol);

enum class Route { TrivialComparable, TrivialCommuting, MainCriterion };

const char* route_name(Route r) noexcept;

struct DecisionOptions {
  double tol = kDefaultTol;
  /// Pairs whose main-criterion margin is within this band count as boundary;
  /// cross-criterion agreement is only asserted outside it.
  double agreement_band = 1e-9;
};

/// Full diagnostic output of the decision procedure. On the trivial routes
/// the per-criterion verdicts are not populated.
struct CoexistenceReport {
  bool coexistent = false;
  Route route = Route::MainCriterion;
  double lhs_main = 0.0;
  double rhs_main = 0.0;
  double margin = 0.0;  ///< rhs_main - lhs_main
  std::optional<bool> main, commutator, disjunctive, sharpness_form;
  std::array<bool, 3> disjuncts = {false, false, false};
  bool sharpness_guarded = false;
  PairRelation relation;
  InvariantSet inv;
  SharpnessProfile sharp_e, sharp_f;
};

/// Decides coexistence: comparable pairs and commuting pairs take the
/// trivial routes; anything else is settled by the main criterion, with all
/// four criteria evaluated for cross-diagnostics.
CoexistenceReport decide(const Effect& e, const Effect& f,
                         const DecisionOptions& opts = {});

}  // namespace coexist
