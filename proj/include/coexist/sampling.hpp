#pragma once

#include <cstdint>
#include <random>

#include "coexist/effects.hpp"

namespace coexist {

/// Deterministic effect samplers. All draws go through explicit transforms
/// of mt19937_64 output so that a fixed seed yields the same stream on every
/// platform.
enum class SamplerKind {
  /// c0 ~ U(0,1), direction uniform on the sphere, radius ~ U(0, min(c0, 1-c0)).
  /// Covers the full interior of the effect set without rejection.
  Uniform,
  /// Radius pushed to (1 - 10^-u) * min(c0, 1-c0) with u ~ U(1,8); probes the
  /// spectral boundary where the criteria become tight.
  NearBoundary,
  /// Uniform, but with the spatial part confined to the s1-s2 plane.
  UniformPlanar,
  /// Rank-1 projections with c0 matched to the rounded spatial norm so that
  /// the stored spectrum is exactly {0, 1}.
  Projection,
};

class EffectSampler {
 public:
  EffectSampler(SamplerKind kind, std::uint64_t seed)
      : kind_(kind), rng_(seed) {}

  Effect next();
  SamplerKind kind() const { return kind_; }

  /// U[0,1) from the top 53 bits of the generator.
  static double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  }
  static std::array<double, 3> unit_vector(std::mt19937_64& rng);

  std::mt19937_64& rng() { return rng_; }

 private:
  SamplerKind kind_;
  std::mt19937_64 rng_;
};

}  // namespace coexist
