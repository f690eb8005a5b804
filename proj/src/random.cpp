#include "rvc/random.hpp"

#include <stdexcept>

namespace rvc {

namespace {

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// splitmix64, the usual way to stretch one 64-bit seed into a state.
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomSource::RandomSource() : device_(std::make_unique<std::random_device>()) {}

RandomSource::RandomSource(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : state_) word = splitmix64(x);
}

std::uint64_t RandomSource::next_u64() {
  if (device_) {
    static_assert(sizeof(std::random_device::result_type) >= 4);
    const std::uint64_t hi = (*device_)() & 0xffffffffULL;
    const std::uint64_t lo = (*device_)() & 0xffffffffULL;
    return (hi << 32) | lo;
  }
  // xoshiro256**
  const std::uint64_t result = rotl64(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl64(state_[3], 45);
  return result;
}

std::uint32_t RandomSource::uniform(std::uint32_t m) {
  if (m == 0) throw std::invalid_argument("uniform bound must be positive");
  const std::uint64_t bound = m;
  // Values below threshold would make the final partial block of size m
  // over-represented; redraw on them. threshold == 2^64 mod m.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return static_cast<std::uint32_t>(r % bound);
  }
}

}  // namespace rvc
