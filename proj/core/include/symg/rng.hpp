#pragma once

#include <cstdint>
#include <string_view>

namespace symg {

// Counter-style deterministic generator (splitmix64).  Every stochastic
// routine in the library takes one of these so that identical seeds give
// identical results on every platform; std::uniform_int_distribution is
// deliberately avoided because its output is implementation-defined.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish draw in [0, n); the modulo bias is irrelevant at the sizes
  // used here and keeps the mapping platform-stable.
  uint64_t below(uint64_t n) { return n <= 1 ? 0 : next() % n; }
};

inline uint64_t hash_bytes(std::string_view bytes, uint64_t seed = 0xcbf29ce484222325ULL) {
  uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline uint64_t hash_mix(uint64_t a, uint64_t b) {
  Rng r(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
  return r.next();
}

}  // namespace symg
