#pragma once

// Seeded, platform-stable random sampling (no reliance on std distributions).

#include <array>
#include <cstdint>
#include <random>

#include "hypcurve/scalar.hpp"

namespace hypcurve {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed ^ 0x9E3779B97F4A7C15ULL) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal by Box-Muller.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  /// Rational num/den with num uniform in [-bound, bound].
  Rational rational(long bound, long den) {
    Rational q(uniform_int(-bound, bound), den);
    q.canonicalize();
    return q;
  }

  /// Uniform point on the unit sphere in R^3.
  std::array<double, 3> sphere() {
    for (;;) {
      std::array<double, 3> v{normal(), normal(), normal()};
      double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      if (n > 1e-12) return {v[0] / n, v[1] / n, v[2] / n};
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hypcurve
