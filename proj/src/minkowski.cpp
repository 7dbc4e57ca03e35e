#include "coexist/minkowski.hpp"

#include <algorithm>
#include <cmath>

namespace coexist {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::NotAnEffect: return "NotAnEffect";
    case Errc::NonOrthogonalRotation: return "NonOrthogonalRotation";
    case Errc::DegenerateSubspace: return "DegenerateSubspace";
    case Errc::DegenerateCross: return "DegenerateCross";
    case Errc::NotSpacelike: return "NotSpacelike";
    case Errc::Commuting: return "Commuting";
    case Errc::NotCoexistent: return "NotCoexistent";
    case Errc::PositivityViolation: return "PositivityViolation";
    case Errc::InvalidBloch: return "InvalidBloch";
  }
  return "Unknown";
}

double MVec4::spatial_norm() const {
  return std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
}

bool MVec4::all_finite() const {
  return std::isfinite(c0) && std::isfinite(c1) && std::isfinite(c2) &&
         std::isfinite(c3);
}

double mdot(const MVec4& x, const MVec4& y) {
  return x.c0 * y.c0 - x.c1 * y.c1 - x.c2 * y.c2 - x.c3 * y.c3;
}

double mdot(const MVec3& x, const MVec3& y) {
  return x.c0 * y.c0 - x.c1 * y.c1 - x.c2 * y.c2;
}

MVec3 cross_o(const MVec3& x, const MVec3& y) {
  return {x.c1 * y.c2 - x.c2 * y.c1,
          x.c0 * y.c2 - x.c2 * y.c0,
          x.c1 * y.c0 - x.c0 * y.c1};
}

CausalClass classify(const MVec4& x, double tol) {
  const double norm2 = x.c0 * x.c0 + x.c1 * x.c1 + x.c2 * x.c2 + x.c3 * x.c3;
  if (std::sqrt(norm2) <= tol) return {CausalTag::Zero, Orientation::None};
  const double q = mdot(x, x);
  const double band = tol * std::max(1.0, norm2);
  CausalClass out;
  if (std::abs(q) <= band) {
    out.tag = CausalTag::Lightlike;
  } else if (q > 0.0) {
    out.tag = CausalTag::Timelike;
  } else {
    out.tag = CausalTag::Spacelike;
    out.orientation = Orientation::None;
    return out;
  }
  out.orientation = x.c0 >= 0.0 ? Orientation::Forward : Orientation::Backward;
  return out;
}

bool precedes(const MVec4& x, const MVec4& y, double tol) {
  const MVec4 z = y - x;
  return mdot(z, z) >= -tol && z.c0 >= -tol;
}

bool lightlike_precedes(const MVec4& x, const MVec4& y, double tol) {
  const MVec4 z = y - x;
  const double norm2 = z.c0 * z.c0 + z.c1 * z.c1 + z.c2 * z.c2 + z.c3 * z.c3;
  return std::abs(mdot(z, z)) <= tol * std::max(1.0, norm2) && z.c0 >= -tol;
}

namespace {

std::array<double, 9> matmul(const std::array<double, 9>& a,
                             const std::array<double, 9>& b) {
  std::array<double, 9> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[3 * i + j] += a[3 * i + k] * b[3 * k + j];
  return out;
}

double norm3(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace

Rotation3 Rotation3::about_axis(const std::array<double, 3>& axis, double angle) {
  const double n = norm3(axis);
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(Errc::InvalidArgument, "rotation axis must be nonzero");
  const double ux = axis[0] / n, uy = axis[1] / n, uz = axis[2] / n;
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  return Rotation3({t * ux * ux + c,      t * ux * uy - s * uz, t * ux * uz + s * uy,
                    t * ux * uy + s * uz, t * uy * uy + c,      t * uy * uz - s * ux,
                    t * ux * uz - s * uy, t * uy * uz + s * ux, t * uz * uz + c});
}

Rotation3 Rotation3::align_with_z(const std::array<double, 3>& v) {
  const double n = norm3(v);
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(Errc::InvalidArgument, "cannot align the zero vector");
  const double ux = v[0] / n, uy = v[1] / n, uz = v[2] / n;
  // axis = u x z = (uy, -ux, 0), angle given by cos = uz.
  const double s2 = ux * ux + uy * uy;
  if (s2 <= 1e-30) {
    if (uz > 0.0) return identity();
    return about_axis({1.0, 0.0, 0.0}, std::acos(-1.0));  // u = -z
  }
  const double angle = std::acos(std::clamp(uz, -1.0, 1.0));
  return about_axis({uy, -ux, 0.0}, angle);
}

Rotation3 Rotation3::from_matrix(const std::array<double, 9>& m, double tol) {
  Rotation3 rot(m);
  if (!rot.is_proper(tol))
    throw Error(Errc::NonOrthogonalRotation, "matrix is not a proper rotation");
  return rot;
}

std::array<double, 3> Rotation3::apply(const std::array<double, 3>& v) const {
  return {m_[0] * v[0] + m_[1] * v[1] + m_[2] * v[2],
          m_[3] * v[0] + m_[4] * v[1] + m_[5] * v[2],
          m_[6] * v[0] + m_[7] * v[1] + m_[8] * v[2]};
}

Rotation3 Rotation3::transposed() const {
  return Rotation3({m_[0], m_[3], m_[6], m_[1], m_[4], m_[7], m_[2], m_[5], m_[8]});
}

bool Rotation3::is_proper(double tol) const {
  const auto gram = matmul(m_, transposed().m_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (std::abs(gram[3 * i + j] - (i == j ? 1.0 : 0.0)) > tol) return false;
  const double det = m_[0] * (m_[4] * m_[8] - m_[5] * m_[7]) -
                     m_[1] * (m_[3] * m_[8] - m_[5] * m_[6]) +
                     m_[2] * (m_[3] * m_[7] - m_[4] * m_[6]);
  return std::abs(det - 1.0) <= tol;
}

MVec4 rotate_spatial(const MVec4& x, const Rotation3& rot) {
  if (!rot.is_proper())
    throw Error(Errc::NonOrthogonalRotation, "matrix is not a proper rotation");
  const auto s = rot.apply({x.c1, x.c2, x.c3});
  return {x.c0, s[0], s[1], s[2]};
}

namespace {

double euclid_dot(const MVec4& a, const MVec4& b) {
  return a.c0 * b.c0 + a.c1 * b.c1 + a.c2 * b.c2 + a.c3 * b.c3;
}

}  // namespace

MVec4 project_onto_span(const MVec4& x, std::span<const MVec4> basis, double tol) {
  if (basis.size() != 3)
    throw Error(Errc::DegenerateSubspace, "basis must have exactly 3 vectors");

  // Euclidean rank check plus membership of the identity vector. The
  // orthonormalized copies q[] are only used for these two checks.
  std::array<MVec4, 3> q{};
  int rank = 0;
  double scale = 1.0;
  for (const MVec4& b : basis) {
    scale = std::max(scale, std::sqrt(euclid_dot(b, b)));
    MVec4 r = b;
    for (int k = 0; k < rank; ++k) r = r - euclid_dot(q[k], r) * q[k];
    const double n = std::sqrt(euclid_dot(r, r));
    if (n > tol * scale) q[rank++] = (1.0 / n) * r;
  }
  if (rank != 3)
    throw Error(Errc::DegenerateSubspace, "basis does not span a 3-dimensional subspace");
  MVec4 one_res = MVec4::identity();
  for (int k = 0; k < 3; ++k) one_res = one_res - euclid_dot(q[k], one_res) * q[k];
  if (std::sqrt(euclid_dot(one_res, one_res)) > tol)
    throw Error(Errc::DegenerateSubspace, "subspace does not contain the identity");

  // Gram-Schmidt under <|>, timelike vector first. With the identity as the
  // leading vector every residual has zero time component, hence is
  // spacelike unless the subspace degenerates.
  const MVec4 t = MVec4::identity();  // <t|t> = 1
  std::array<MVec4, 2> s{};
  int ns = 0;
  for (const MVec4& b : basis) {
    MVec4 r = b - mdot(t, b) * t;
    for (int k = 0; k < ns; ++k) r = r + mdot(s[k], r) * s[k];  // <s|s> = -1
    const double q2 = -mdot(r, r);
    if (q2 > tol * tol * scale * scale) {
      s[ns++] = (1.0 / std::sqrt(q2)) * r;
      if (ns == 2) break;
    }
  }
  if (ns != 2)
    throw Error(Errc::DegenerateSubspace, "restricted form is not of signature (+,-,-)");

  return mdot(t, x) * t - mdot(s[0], x) * s[0] - mdot(s[1], x) * s[1];
}

}  // namespace coexist
