#pragma once

#include <optional>

#include "coexist/coexistence.hpp"

namespace coexist {

/// Rotation taking the pair into the s1-s2 plane, plus the rotated pair.
/// After reduction both spatial vectors have zero third component and the
/// plane orientation e1*f2 - e2*f1 is positive.
struct ReducedFrame {
  Rotation3 rotation;
  MVec3 e3, f3;
};

/// Requires a noncommuting pair (cross_mag > tol); throws DegenerateCross
/// otherwise. The scalar product of any pair is preserved.
ReducedFrame reduce_frame(const Effect& e, const Effect& f, double tol = kDefaultTol);

/// Coordinate frame data of the asymptote parametrization:
/// d = e - f, g = e xo f, and the two lightlike asymptote directions
/// h+- = +-sqrt(|<d|d>|) g + d xo g, all in the rotated (and possibly
/// swapped) frame.
struct Frame {
  Rotation3 rotation;
  bool swapped = false;
  MVec3 e3, f3, d, g, dxg, h_plus, h_minus;
};

/// The two admissible lambda-intervals on the backward-cone hyperbola
/// branch, in the asymptote frame a = (e+f)/2 - lambda h+ - mu h-, with
/// lambda * mu = hyper_const = 1/(16|C|) on the branch.
///
/// Segment A comes from a >= 0, segment B from e + f - a <= 1. Their
/// intersection [lam_lo, lam_hi] is nonempty exactly when the pair is
/// coexistent; lamB_minus <= lamA_plus always holds.
struct HyperbolaSegments {
  double lamA_minus = 0.0, lamA_plus = 0.0;
  double lamB_minus = 0.0, lamB_plus = 0.0;
  double lam_lo = 0.0, lam_hi = 0.0;
  double hyper_const = 0.0;
  Frame frame;

  bool feasible() const { return lam_lo <= lam_hi; }
  /// Positive when the segments are disjoint.
  double gap() const { return lamA_minus - lamB_plus; }
};

/// Computes the segment endpoints for a spacelike, noncommuting pair.
/// Throws NotSpacelike, Commuting, or DegenerateCross when the hyperbola
/// degenerates numerically (|C| ~ 0).
HyperbolaSegments hyperbola_segments(const Effect& e, const Effect& f,
                                     double tol = kDefaultTol);

enum class LambdaPolicy { Geometric, Lo, Hi, Quantile };

/// Selection of the free point on the feasible segment. Any choice inside
/// [lam_lo, lam_hi] yields a valid joint observable; the geometric midpoint
/// is symmetric under the hyperbola's lambda <-> mu reflection.
struct LambdaChoice {
  LambdaPolicy policy = LambdaPolicy::Geometric;
  double quantile = 0.5;
};

enum class ConstructRoute {
  ComparableAEqualsE,   ///< e <= f, a = e
  ComparableAEqualsF,   ///< f <= e, a = f
  ComparableAZero,      ///< e <= f', a = 0
  ComparableAOverlap,   ///< e >= f', a = e + f - 1
  CommutingProduct,     ///< a = ef (Hermitian part)
  GenericHyperbola,     ///< asymptote-frame construction
  DegenerateFallback,   ///< best candidate when the hyperbola degenerates
};

const char* construct_route_name(ConstructRoute r) noexcept;

/// Four effects summing to the identity with marginals e and f:
/// outcomes = {a, e - a, f - a, 1 - e - f + a}.
struct JointObservable {
  std::array<Effect, 4> outcomes;
  Effect a;
  Effect e, f;
  ConstructRoute route = ConstructRoute::GenericHyperbola;
  bool swapped = false;
  std::optional<HyperbolaSegments> segments;
  double lam_star = 0.0, mu_star = 0.0;
};

/// Builds an explicit joint observable for a coexistent pair. Throws
/// NotCoexistent when decide() rejects the pair, and PositivityViolation if
/// the constructed outcomes fail validation beyond 10*tol (which would
/// indicate a tolerance bug rather than genuine incompatibility).
JointObservable construct_joint(const Effect& e, const Effect& f,
                                const LambdaChoice& pick = {},
                                double tol = kDefaultTol);

/// Worst violations of the defining properties of a joint observable.
struct JointCheck {
  double positivity_violation = 0.0;
  double sum_violation = 0.0;
  double marginal_e_violation = 0.0;
  double marginal_f_violation = 0.0;
  bool pass = false;
  double worst() const;
};

JointCheck verify_joint(const JointObservable& joint, double tol = 1e-10);

/// Same checks on raw coefficient vectors, for externally supplied joints.
JointCheck verify_joint_raw(const std::array<MVec4, 4>& outcomes, const MVec4& e,
                            const MVec4& f, double tol = 1e-10);

}  // namespace coexist
