#pragma once

#include <cstdint>
#include <string_view>

namespace stq {

// Counter-based random stream: output k is a pure function of (key, k), where
// the key is derived from (seed, purpose tag, instance index). Parallel sweeps
// get reproducible, scheduling-independent randomness by giving every task its
// own stream.
class RngStream {
 public:
  RngStream(uint64_t seed, std::string_view purpose, uint64_t index = 0);

  uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();   // standard Gaussian (Box-Muller, one value cached)

 private:
  uint64_t key_;
  uint64_t ctr_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// 64-bit finalizer used to key and advance streams (splitmix64 style).
uint64_t rng_mix64(uint64_t x);

}  // namespace stq
