#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ckmeans {

/// Deterministic sampling helpers on top of mt19937_64. The distribution
/// logic is hand-rolled because the std:: distribution algorithms are
/// implementation-defined and we promise bit-identical output per seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound).
  int uniform_int(int bound) {
    return static_cast<int>(uniform() * static_cast<double>(bound)) % bound;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Index drawn with probability proportional to the (nonnegative) weights.
  /// A zero total falls back to a uniform draw.
  int weighted_pick(const std::vector<double>& weights) {
    double total = 0.0;
    for (const double w : weights) total += w;
    if (total <= 0.0) return uniform_int(static_cast<int>(weights.size()));
    double target = uniform() * total;
    for (size_t i = 0; i < weights.size(); ++i) {
      target -= weights[i];
      if (target < 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ckmeans
