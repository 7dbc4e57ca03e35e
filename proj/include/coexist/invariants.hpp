#pragma once

#include "coexist/effects.hpp"

namespace coexist {

/// Scalar invariants of an effect pair, computed purely from scalar-product
/// contractions of {e, f, e', f', d = e - f}. Every coexistence criterion is
/// a polynomial or radical expression in these.
///
///   C     = <e|e><f|f> - <e|f>^2            (always <= 0)
///   Cp    = same for the complements        (always <= 0)
///   D     = <e|e'><f|f'> - <e|f'><e'|f>     (> 0 for spacelike pairs)
///   Delta = C*Cp - D^2 = <d|d>|e x f|^2     (< 0 iff spacelike and noncommuting)
///   N     = <e|e><f|f>,  Np for the complements
///   GammaP/GammaM   = <e|f>  +- sqrt(N)     (GammaP*GammaM = |C|)
///   GammaPp/GammaMp = <e'|f'> +- sqrt(Np)
struct InvariantSet {
  double C = 0.0, Cp = 0.0;
  double D = 0.0, Delta = 0.0;
  double GammaP = 0.0, GammaM = 0.0, GammaPp = 0.0, GammaMp = 0.0;
  double N = 0.0, Np = 0.0;
  double dd = 0.0;  ///< <d|d> for d = e - f
};

InvariantSet compute_invariants(const Effect& e, const Effect& f);

struct Gammas {
  double plus = 0.0, minus = 0.0;      ///< for (e, f)
  double plus_c = 0.0, minus_c = 0.0;  ///< for (e', f')
};

/// The four segment-endpoint coefficients; all four are positive when the
/// pair is spacelike related.
Gammas gammas(const Effect& e, const Effect& f);

/// Unsharpness F, sharpness S = 1 - F^2 and bias 2*c0 - 1 of one effect.
/// F = 0 exactly for rank-1 projections, F = 1 for multiples of the identity.
struct SharpnessProfile {
  double F = 0.0;
  double S = 0.0;
  double bias = 0.0;
};

SharpnessProfile sharpness(const Effect& e);

/// sqrt(<e|e>) evaluated in the factored spectral form
/// sqrt((c0 - r)(c0 + r)), clamped at zero, so that effects stored exactly on
/// the boundary give exactly zero.
double sqrt_det(const Effect& e);

}  // namespace coexist
