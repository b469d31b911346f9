#pragma once

#include "weylsums/common.hpp"

namespace weylsums {

// Counter-based generator: splitmix64 finalizer applied to (seed, counter).
// Every draw is a pure function of the pair, so sampling is reproducible
// independent of thread scheduling.
inline u64 counter_hash(u64 seed, u64 counter) {
  u64 z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// uniform in [0, 1), 53 random bits
inline double counter_uniform(u64 seed, u64 counter) {
  return static_cast<double>(counter_hash(seed, counter) >> 11) * 0x1.0p-53;
}

}  // namespace weylsums
