#pragma once

#include "coexist/minkowski.hpp"

namespace coexist {

/// A validated qubit effect: 0 <= c0 - |spatial| and c0 + |spatial| <= 1
/// within the construction tolerance.
class Effect {
 public:
  /// Validates v and wraps it. Throws NotAnEffect with the offending
  /// eigenvalue bounds when the spectrum leaves [0 - tol, 1 + tol].
  static Effect make(const MVec4& v, double tol = kDefaultTol);

  static Effect zero() { return Effect(MVec4::zero()); }
  static Effect one() { return Effect(MVec4::identity()); }

  const MVec4& vec() const { return vec_; }
  double c0() const { return vec_.c0; }
  std::array<double, 3> spatial() const { return vec_.spatial(); }
  double spatial_norm() const { return vec_.spatial_norm(); }
  double lambda_min() const { return vec_.lambda_min(); }
  double lambda_max() const { return vec_.lambda_max(); }

  /// The complement 1 - e; an involution.
  Effect complement() const {
    return Effect({1.0 - vec_.c0, -vec_.c1, -vec_.c2, -vec_.c3});
  }

 private:
  explicit Effect(const MVec4& v) : vec_(v) {}
  MVec4 vec_;
};

enum class EffectClass { Zero, One, Trivial, SharpNontrivial, Unsharp };

/// Zero/One are tagged separately; Trivial means a multiple of the identity;
/// SharpNontrivial means a rank-1 projection (c0 = |spatial| = 1/2).
EffectClass classify_effect(const Effect& e, double tol = kDefaultTol);

/// Which of the four comparability relations holds (first match in this
/// order), where fc denotes the complement of f.
enum class Comparability { EPrecF, FPrecE, EPrecFc, ESuccFc, None };

const char* comparability_name(Comparability c) noexcept;

/// Pairwise relations consumed by the decision procedure.
///   spacelike:    <e-f|e-f> < 0 beyond the classification band
///   commuting:    |e x f| <= tol on the spatial parts
///   cross_mag:    |e x f|
///   swap_applied: the orientation convention e1*f2 - e2*f1 > 0 required
///                 exchanging e and f
struct PairRelation {
  bool spacelike = false;
  bool commuting = false;
  Comparability comparable = Comparability::None;
  double cross_mag = 0.0;
  bool swap_applied = false;
};

PairRelation pair_relation(const Effect& e, const Effect& f, double tol = kDefaultTol);

/// |e x f| of the spatial parts; equals half the operator norm of the
/// commutator [e, f].
double commutator_cross_mag(const Effect& e, const Effect& f);

/// Probability that e and f both fire when measured on the two sides of the
/// singlet state: assembles the 4x4 matrix of the tensor product and
/// contracts it with the singlet vector. Equals mdot(e, f).
double singlet_joint_probability(const Effect& e, const Effect& f);

}  // namespace coexist
