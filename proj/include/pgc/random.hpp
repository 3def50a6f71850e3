#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace pgc {

/// Returns true when epsilon is the "privacy disabled" sentinel (+infinity).
/// Disabled mechanisms emit exactly zero noise.
inline bool privacy_disabled(double epsilon) { return std::isinf(epsilon); }

/// Deterministic pseudo-random stream with hand-rolled transforms.
///
/// All sampling (uniform, Gaussian, Laplace, shuffles) is derived from a
/// SplitMix64 stream so output is identical across platforms and standard
/// library versions. Every randomized operation in the toolkit takes an
/// explicit seed and draws from one of these.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    // SplitMix64 (Steele, Lea, Flood 2014).
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double uniform_positive() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) via rejection sampling (no modulo bias).
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Standard normal via Box-Muller. One cached value per pair of draws.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform_positive();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  /// N(0, sigma^2). Zero when sigma is 0.
  double gaussian(double sigma) { return sigma <= 0.0 ? 0.0 : sigma * normal(); }

  /// Laplace with scale b (mean 0, E|X| = b) via inverse CDF. Zero when the
  /// scale is 0; used with scale = sensitivity / epsilon.
  double laplace(double scale) {
    if (scale <= 0.0) return 0.0;
    const double u = uniform() - 0.5;
    const double sign = u < 0.0 ? -1.0 : 1.0;
    return -scale * sign * std::log(1.0 - 2.0 * std::fabs(u));
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Derives an independent child seed from a master seed and a stream tag.
/// Used to give each pipeline stage (and each query) its own stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
  Rng mix(master ^ (0x632be59bd9b4e019ULL * (tag + 1)));
  return mix.next_u64();
}

}  // namespace pgc
