#include "coexist/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace coexist {

namespace {

// Clamp the argument of a square root at zero. The quantities passed in are
// non-negative in exact arithmetic; boundary effects can push them a hair
// below zero.
double sqrt_clamped(double x) { return x <= 0.0 ? 0.0 : std::sqrt(x); }

}  // namespace

double sqrt_det(const Effect& e) {
  const double r = e.spatial_norm();
  return sqrt_clamped((e.c0() - r) * (e.c0() + r));
}

InvariantSet compute_invariants(const Effect& e, const Effect& f) {
  const MVec4& ev = e.vec();
  const MVec4& fv = f.vec();
  const MVec4 ec = e.complement().vec();
  const MVec4 fc = f.complement().vec();

  InvariantSet inv;
  const double ee = mdot(ev, ev), ff = mdot(fv, fv), ef = mdot(ev, fv);
  const double ecec = mdot(ec, ec), fcfc = mdot(fc, fc), ecfc = mdot(ec, fc);
  inv.C = ee * ff - ef * ef;
  inv.Cp = ecec * fcfc - ecfc * ecfc;
  inv.D = mdot(ev, ec) * mdot(fv, fc) - mdot(ev, fc) * mdot(ec, fv);
  inv.Delta = inv.C * inv.Cp - inv.D * inv.D;
  inv.N = ee * ff;
  inv.Np = ecec * fcfc;
  const double sn = sqrt_clamped(inv.N), snp = sqrt_clamped(inv.Np);
  inv.GammaP = ef + sn;
  inv.GammaM = ef - sn;
  inv.GammaPp = ecfc + snp;
  inv.GammaMp = ecfc - snp;
  const MVec4 d = ev - fv;
  inv.dd = mdot(d, d);
  return inv;
}

Gammas gammas(const Effect& e, const Effect& f) {
  const InvariantSet inv = compute_invariants(e, f);
  return {inv.GammaP, inv.GammaM, inv.GammaPp, inv.GammaMp};
}

SharpnessProfile sharpness(const Effect& e) {
  SharpnessProfile out;
  out.F = sqrt_det(e) + sqrt_det(e.complement());
  // S computed independently from its own defining expression.
  const double eec = mdot(e.vec(), e.complement().vec());
  out.S = 2.0 * (eec - sqrt_det(e) * sqrt_det(e.complement()));
  out.bias = 2.0 * e.c0() - 1.0;
  return out;
}

}  // namespace coexist
