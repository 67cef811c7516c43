#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace swg {

// Seedable, splittable random stream. Substreams are derived from the
// master seed by mixing the stream index through splitmix64, so replicate
// k of an ensemble always sees the same draws regardless of scheduling.
// All variate transforms are built from raw 64-bit uniforms; nothing here
// depends on std::<distribution> internals, so sequences are stable
// across standard-library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(mix(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform on (0,1), never returns 0 or 1
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

  double normal() {
    // polar Box-Muller without call-to-call caching; pairs stay aligned
    // with the uniform stream
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  // Marsaglia-Tsang for shape >= 1, boost trick for shape < 1
  double gamma(double shape) {
    if (shape < 1.0) {
      double u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

 private:
  static std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static std::mt19937_64 mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed;
    (void)splitmix64(state);
    state ^= 0xA0761D6478BD642Full * (stream + 1);
    return std::mt19937_64(splitmix64(state));
  }

  std::mt19937_64 engine_;
};

}  // namespace swg
