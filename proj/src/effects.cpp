#include "coexist/effects.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace coexist {

Effect Effect::make(const MVec4& v, double tol) {
  if (!v.all_finite())
    throw Error(Errc::NotAnEffect, "effect coefficients must be finite");
  const double lo = v.lambda_min();
  const double hi = v.lambda_max();
  if (lo < -tol || hi > 1.0 + tol) {
    std::ostringstream msg;
    msg << "operator spectrum [" << lo << ", " << hi << "] leaves [0, 1]";
    throw Error(Errc::NotAnEffect, msg.str());
  }
  return Effect(v);
}

EffectClass classify_effect(const Effect& e, double tol) {
  const MVec4& v = e.vec();
  const double r = e.spatial_norm();
  if (r <= tol && std::abs(v.c0) <= tol) return EffectClass::Zero;
  if (r <= tol && std::abs(v.c0 - 1.0) <= tol) return EffectClass::One;
  if (r <= tol) return EffectClass::Trivial;
  if (std::abs(v.c0 - 0.5) <= tol && std::abs(r - 0.5) <= tol)
    return EffectClass::SharpNontrivial;
  return EffectClass::Unsharp;
}

const char* comparability_name(Comparability c) noexcept {
  switch (c) {
    case Comparability::EPrecF: return "e<=f";
    case Comparability::FPrecE: return "f<=e";
    case Comparability::EPrecFc: return "e<=f'";
    case Comparability::ESuccFc: return "e>=f'";
    case Comparability::None: return "none";
  }
  return "none";
}

double commutator_cross_mag(const Effect& e, const Effect& f) {
  const auto a = e.spatial();
  const auto b = f.spatial();
  const double cx = a[1] * b[2] - a[2] * b[1];
  const double cy = a[2] * b[0] - a[0] * b[2];
  const double cz = a[0] * b[1] - a[1] * b[0];
  return std::sqrt(cx * cx + cy * cy + cz * cz);
}

PairRelation pair_relation(const Effect& e, const Effect& f, double tol) {
  PairRelation rel;
  rel.cross_mag = commutator_cross_mag(e, f);
  rel.commuting = rel.cross_mag <= tol;
  rel.spacelike = classify(e.vec() - f.vec(), tol).tag == CausalTag::Spacelike;
  rel.swap_applied = (e.vec().c1 * f.vec().c2 - e.vec().c2 * f.vec().c1) < 0.0;

  const MVec4& ev = e.vec();
  const MVec4& fv = f.vec();
  const MVec4 fc = f.complement().vec();
  if (precedes(ev, fv, tol)) {
    rel.comparable = Comparability::EPrecF;
  } else if (precedes(fv, ev, tol)) {
    rel.comparable = Comparability::FPrecE;
  } else if (precedes(ev, fc, tol)) {
    rel.comparable = Comparability::EPrecFc;
  } else if (precedes(fc, ev, tol)) {
    rel.comparable = Comparability::ESuccFc;
  } else {
    rel.comparable = Comparability::None;
  }
  return rel;
}

namespace {

using Cplx = std::complex<double>;

// 2x2 Hermitian matrix of a coefficient vector, row-major.
std::array<Cplx, 4> matrix2(const MVec4& x) {
  return {Cplx(x.c0 + x.c3, 0.0), Cplx(x.c1, -x.c2),
          Cplx(x.c1, x.c2), Cplx(x.c0 - x.c3, 0.0)};
}

}  // namespace

double singlet_joint_probability(const Effect& e, const Effect& f) {
  const auto a = matrix2(e.vec());
  const auto b = matrix2(f.vec());
  // Kronecker product, basis |00>, |01>, |10>, |11>.
  std::array<Cplx, 16> m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          m[4 * (2 * i + k) + (2 * j + l)] = a[2 * i + j] * b[2 * k + l];
  // Singlet vector (|01> - |10>) / sqrt(2).
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::array<Cplx, 4> phi = {0.0, inv_sqrt2, -inv_sqrt2, 0.0};
  Cplx expectation = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      expectation += std::conj(phi[r]) * m[4 * r + c] * phi[c];
  return expectation.real();
}

}  // namespace coexist
