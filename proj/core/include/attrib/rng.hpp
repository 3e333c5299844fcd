#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace attrib {

namespace detail {

// Finalizer from the SplitMix64 generator (Steele, Lea & Flood).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Key identifying one logical random stream.  Keys are derived by folding
// integers or tags into a parent key, so any (seed, case, n, replication,
// stage, ...) tuple maps to an independent stream without coordination
// between workers.
struct StreamKey {
  std::uint64_t value = 0;

  static StreamKey root(std::uint64_t seed) {
    return StreamKey{detail::mix64(detail::mix64(seed) ^ 0xa5a5a5a5a5a5a5a5ULL)};
  }

  StreamKey child(std::uint64_t tag) const {
    return StreamKey{detail::mix64(value ^ detail::mix64(tag + 0x9e3779b9ULL))};
  }

  StreamKey child(std::string_view tag) const {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : tag) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return child(h);
  }
};

// Counter-based stream: draw i is a pure function of (key, i).  Replications
// therefore produce identical sequences no matter how work is scheduled, and
// adding consumers of sibling streams never perturbs this one.
class RandomStream {
public:
  explicit RandomStream(StreamKey key) : key_(key.value) {}

  std::uint64_t next_u64() { return detail::mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // (0, 1], safe for log()
  double uniform_positive() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Box-Muller; exactly two uniforms per pair keeps the draw count
  // deterministic (no rejection step).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_positive();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform integer in [0, bound) via rejection-free Lemire-style scaling;
  // bound is tiny relative to 2^64 so the modulo bias is negligible for
  // shuffling, but we keep the multiply-shift form for uniformity.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<__uint128_t>(next_u64()) * bound) >> 64);
  }

  // Fisher-Yates over indices 0..n-1.
  std::vector<std::size_t> shuffled_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(idx[i - 1], idx[j]);
    }
    return idx;
  }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace attrib
