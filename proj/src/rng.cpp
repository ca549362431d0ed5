#include "stq/rng.hpp"

#include <cmath>
#include <numbers>

namespace stq {

uint64_t rng_mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

static uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RngStream::RngStream(uint64_t seed, std::string_view purpose, uint64_t index) {
  uint64_t k = rng_mix64(seed + 0x9e3779b97f4a7c15ULL);
  k = rng_mix64(k ^ fnv1a64(purpose));
  k = rng_mix64(k ^ (index + 0x632be59bd9b4e019ULL));
  key_ = k;
}

uint64_t RngStream::next_u64() {
  ctr_ += 0x9e3779b97f4a7c15ULL;
  return rng_mix64(key_ ^ rng_mix64(ctr_));
}

double RngStream::uniform() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // u1 in (0,1] so the log is finite.
  double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53;
  double u2 = double(next_u64() >> 11) * 0x1.0p-53;
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(t);
  has_cached_ = true;
  return r * std::cos(t);
}

}  // namespace stq
