#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "opschur/complex_matrix.hpp"

namespace opschur {

// Deterministic sampler used by every randomized routine. Gaussian draws are
// produced by an explicit Box-Muller transform on mt19937_64 output so that a
// given seed yields the same stream on every platform and standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n)
    int index(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    linalg::Complex complex_gaussian() { return {gaussian(), gaussian()}; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace opschur
