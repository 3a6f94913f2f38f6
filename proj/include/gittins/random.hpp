#pragma once

#include <cmath>
#include <cstdint>

namespace gittins {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Seed for replication `rep` of policy `policy` at grid point `point`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point, std::uint64_t policy,
                                 std::uint64_t rep) {
  std::uint64_t h = mix64(base + kGolden);
  h = mix64(h ^ (point + 1) * kGolden);
  h = mix64(h ^ (policy + 1) * 0xc2b2ae3d27d4eb4fULL);
  return mix64(h ^ (rep + 1) * 0x165667b19e3779f9ULL);
}

// Counter-based stream: the i-th 64-bit draw is mix64(key + (i + 1) * golden), i.e.
// exactly the SplitMix64 sequence seeded with `key`. Any draw can be recomputed from
// (key, i) alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key = 0) : key_(key) {}

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next() { return at(key_, counter_++); }

  static std::uint64_t at(std::uint64_t key, std::uint64_t i) {
    return mix64(key + (i + 1) * kGolden);
  }

  // Uniform on (0, 1): top 53 bits, offset by half a unit.
  static double to_unit(std::uint64_t x) {
    return (double(x >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal from the two draws 2j and 2j+1 (Box-Muller, cosine branch).
  static double normal_at(std::uint64_t key, std::uint64_t j) {
    const double u1 = to_unit(at(key, 2 * j));
    const double u2 = to_unit(at(key, 2 * j + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  double normal() {
    const double u1 = to_unit(next());
    const double u2 = to_unit(next());
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace gittins
