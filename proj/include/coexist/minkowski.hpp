#pragma once

#include <array>
#include <span>

#include "coexist/error.hpp"

namespace coexist {

/// Default absolute tolerance for order and classification predicates.
/// All quantities handled here are O(1) for effects; predicates on quadratic
/// quantities rescale it by max(1, |x|^2).
inline constexpr double kDefaultTol = 1e-9;

/// Real 4-vector of Pauli coefficients: x = c0*s0 + c1*s1 + c2*s2 + c3*s3,
/// where s0 is the identity and s1..s3 are the Pauli matrices. The
/// represented 2x2 Hermitian operator has eigenvalues c0 +- |(c1,c2,c3)|.
struct MVec4 {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  static constexpr MVec4 zero() { return {0.0, 0.0, 0.0, 0.0}; }
  static constexpr MVec4 identity() { return {1.0, 0.0, 0.0, 0.0}; }

  std::array<double, 3> spatial() const { return {c1, c2, c3}; }
  double spatial_norm() const;
  /// Smallest eigenvalue of the represented operator, c0 - |spatial|.
  double lambda_min() const { return c0 - spatial_norm(); }
  /// Largest eigenvalue, c0 + |spatial|.
  double lambda_max() const { return c0 + spatial_norm(); }
  bool all_finite() const;

  friend MVec4 operator+(const MVec4& a, const MVec4& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2, a.c3 + b.c3};
  }
  friend MVec4 operator-(const MVec4& a, const MVec4& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2, a.c3 - b.c3};
  }
  friend MVec4 operator*(double s, const MVec4& a) {
    return {s * a.c0, s * a.c1, s * a.c2, s * a.c3};
  }
  friend MVec4 operator-(const MVec4& a) { return {-a.c0, -a.c1, -a.c2, -a.c3}; }
};

/// Element of the 3-dimensional subspace spanned by s0, s1, s2; embeds into
/// MVec4 with c3 = 0.
struct MVec3 {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  static constexpr MVec3 zero() { return {0.0, 0.0, 0.0}; }
  static constexpr MVec3 identity() { return {1.0, 0.0, 0.0}; }

  MVec4 embed() const { return {c0, c1, c2, 0.0}; }
  static MVec3 restrict_of(const MVec4& x) { return {x.c0, x.c1, x.c2}; }

  friend MVec3 operator+(const MVec3& a, const MVec3& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend MVec3 operator-(const MVec3& a, const MVec3& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  friend MVec3 operator*(double s, const MVec3& a) {
    return {s * a.c0, s * a.c1, s * a.c2};
  }
  friend MVec3 operator-(const MVec3& a) { return {-a.c0, -a.c1, -a.c2}; }
};

/// Minkowski scalar product <x|y> = x0*y0 - x.y on the Pauli coefficients.
/// Equals the determinant polarization of the represented operators:
/// (tr(x)tr(y) - tr(xy)) / 2; in particular <x|x> = det(x).
double mdot(const MVec4& x, const MVec4& y);
double mdot(const MVec3& x, const MVec3& y);

/// Cross product with the spacelike components sign-inverted, so the result
/// is <|>-orthogonal to both factors.
MVec3 cross_o(const MVec3& x, const MVec3& y);

enum class CausalTag { Timelike, Lightlike, Spacelike, Zero };
enum class Orientation { Forward, Backward, None };

/// Causal type of a vector. orientation is None exactly for the Spacelike
/// and Zero tags.
struct CausalClass {
  CausalTag tag = CausalTag::Zero;
  Orientation orientation = Orientation::None;
};

/// Classifies x by the sign of <x|x> within tol*max(1, |x|^2), where |x| is
/// the Euclidean norm of the coefficients. Ties go to Lightlike; the zero
/// vector gets its own tag.
CausalClass classify(const MVec4& x, double tol = kDefaultTol);

/// Operator order: x precedes y iff y - x is positive semidefinite, i.e.
/// <y-x|y-x> >= -tol and (y-x)_0 >= -tol.
bool precedes(const MVec4& x, const MVec4& y, double tol = kDefaultTol);

/// Light-cone order: x precedes y along the cone iff y - x is lightlike
/// within tol and (y-x)_0 >= -tol.
bool lightlike_precedes(const MVec4& x, const MVec4& y, double tol = kDefaultTol);

/// Proper rotation of the spatial coefficient space, stored row-major.
class Rotation3 {
 public:
  Rotation3() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

  static Rotation3 identity() { return Rotation3(); }
  /// Rodrigues rotation about a (not necessarily unit) axis.
  static Rotation3 about_axis(const std::array<double, 3>& axis, double angle);
  /// The rotation taking v/|v| to (0,0,1), turning about the axis v x z.
  static Rotation3 align_with_z(const std::array<double, 3>& v);
  /// Validates orthogonality and det = +1 within tol.
  static Rotation3 from_matrix(const std::array<double, 9>& m, double tol = 1e-12);

  std::array<double, 3> apply(const std::array<double, 3>& v) const;
  Rotation3 transposed() const;
  bool is_proper(double tol = 1e-12) const;
  const std::array<double, 9>& matrix() const { return m_; }

 private:
  explicit Rotation3(const std::array<double, 9>& m) : m_(m) {}
  std::array<double, 9> m_;
};

/// Applies R to the spatial part of x, leaving c0 fixed. The scalar product
/// of any pair is invariant. Throws NonOrthogonalRotation if R is not a
/// proper rotation within 1e-12.
MVec4 rotate_spatial(const MVec4& x, const Rotation3& rot);

/// <|>-orthogonal projection of x onto the subspace spanned by `basis`,
/// which must be 3-dimensional, contain the identity vector and carry
/// signature (+,-,-). The projection is linear, idempotent, selfadjoint for
/// <|> and monotone for the operator order. Throws DegenerateSubspace.
MVec4 project_onto_span(const MVec4& x, std::span<const MVec4> basis,
                        double tol = kDefaultTol);

}  // namespace coexist
