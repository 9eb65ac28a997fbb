#pragma once

#include <cstdint>
#include <string_view>

#include "colouring/words.hpp"

namespace colouring {

/// splitmix64; also used as the mixing function for derived seeds.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int next_bit() { return static_cast<int>(next() & 1u); }
  /// Uniform draw in [0, 1); sampling convenience, never used in certificates.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t mix64(std::uint64_t x) {
  SplitMix64 s(x);
  return s.next();
}

/// Splittable per-run seed derivation: independent streams from one master.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index = 0) {
  return mix64(master ^ mix64(stream) ^ mix64(0x517cc1b727220a95ULL + index));
}

inline std::uint64_t hash_letters(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic i.i.d. fair coin per word: the coordinate map g -> x^g of a
/// sampled point, addressable at any word without materializing the space.
class BitOracle {
 public:
  explicit BitOracle(std::uint64_t seed) : seed_(seed) {}

  int operator()(const Word& w) const { return bit(w.letters()); }
  int bit(std::string_view letters) const {
    return static_cast<int>(mix64(seed_ ^ hash_letters(letters)) & 1u);
  }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace colouring
