#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace cav {

// splitmix64; used both as a stream seeder and for content hashing of
// config strings. Output sequence is fixed for all platforms.
inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Derive an independent stream seed from a base seed and a key (episode id,
// stage name, ...). Stable across runs and thread schedules.
inline uint64_t derive_seed(uint64_t base, uint64_t key) {
  uint64_t s = base ^ (0x9e3779b97f4a7c15ull + key * 0xff51afd7ed558ccdull);
  splitmix64(s);
  return splitmix64(s);
}

inline uint64_t derive_seed(uint64_t base, const std::string& key) {
  uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the key bytes
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return derive_seed(base, h);
}

// Small deterministic generator. std::mt19937_64 would also do, but the
// distributions on top of it are implementation-defined; these are not.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return splitmix64(state_); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  uint64_t uniform_index(uint64_t n) {
    // Rejection-free modulo is fine here; n is tiny relative to 2^64.
    return next_u64() % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller (deterministic, no cached spare).
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

private:
  uint64_t state_;
};

}  // namespace cav
