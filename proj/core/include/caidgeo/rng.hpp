#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "caidgeo/types.hpp"

namespace caidgeo {

// Deterministic random source. Distributions are derived from raw mt19937_64
// bits in-house so that identical seeds give identical streams on every
// standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return (engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t bits() { return engine_(); }

  std::uint64_t below(std::uint64_t n) {  // unbiased [0, n)
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  Vec gaussian_vec(Index n) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  // Dirichlet(1,...,1): uniform over the simplex.
  Vec simplex_point(Index n) {
    Vec v(n);
    double s = 0.0;
    for (Index i = 0; i < n; ++i) {
      double u;
      do {
        u = uniform();
      } while (u <= 0.0);
      v[i] = -std::log(u);
      s += v[i];
    }
    return v / s;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace caidgeo
