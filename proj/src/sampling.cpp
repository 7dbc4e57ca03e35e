#include "coexist/sampling.hpp"

#include <cmath>

namespace coexist {

std::array<double, 3> EffectSampler::unit_vector(std::mt19937_64& rng) {
  const double z = 1.0 - 2.0 * uniform01(rng);
  const double phi = 2.0 * std::acos(-1.0) * uniform01(rng);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

Effect EffectSampler::next() {
  switch (kind_) {
    case SamplerKind::Uniform: {
      const double c0 = uniform01(rng_);
      const auto dir = unit_vector(rng_);
      const double r = uniform01(rng_) * std::min(c0, 1.0 - c0);
      return Effect::make({c0, r * dir[0], r * dir[1], r * dir[2]});
    }
    case SamplerKind::NearBoundary: {
      const double c0 = uniform01(rng_);
      const auto dir = unit_vector(rng_);
      const double u = 1.0 + 7.0 * uniform01(rng_);
      const double r = (1.0 - std::pow(10.0, -u)) * std::min(c0, 1.0 - c0);
      return Effect::make({c0, r * dir[0], r * dir[1], r * dir[2]});
    }
    case SamplerKind::UniformPlanar: {
      const double c0 = uniform01(rng_);
      const double phi = 2.0 * std::acos(-1.0) * uniform01(rng_);
      const double r = uniform01(rng_) * std::min(c0, 1.0 - c0);
      return Effect::make({c0, r * std::cos(phi), r * std::sin(phi), 0.0});
    }
    case SamplerKind::Projection: {
      auto dir = unit_vector(rng_);
      std::array<double, 3> s = {0.5 * dir[0], 0.5 * dir[1], 0.5 * dir[2]};
      // Nudge the spatial part up until its rounded norm reaches 1/2, then
      // take that norm as c0. Both eigenvalue computations c0 - |s| and
      // (1 - c0) - |s| then come out <= 0 exactly, so downstream square
      // roots of the spectral products are exactly zero.
      double r = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
      for (int i = 0; i < 64 && r < 0.5; ++i) {
        for (double& c : s) c *= 1.0 + 0x1.0p-52;
        r = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
      }
      return Effect::make({r, s[0], s[1], s[2]});
    }
  }
  return Effect::zero();
}

}  // namespace coexist
