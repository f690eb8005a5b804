#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>

namespace rvc {

// Uniform draw source for share generation. Two modes:
//
//   RandomSource()      pulls from the operating system entropy pool
//                       (std::random_device); use this for real shares.
//   RandomSource(seed)  runs a fixed xoshiro256** stream seeded through
//                       splitmix64; identical seeds give identical draws
//                       on every platform, which pins down seeded share
//                       output bit for bit.
//
// A source is single-owner: concurrent splits must each hold their own.
// The encoding routines consume exactly one uniform(m) per secret bit,
// in position order, so a seeded run is reproducible by construction.
class RandomSource {
 public:
  RandomSource();
  explicit RandomSource(std::uint64_t seed);

  RandomSource(RandomSource&&) noexcept = default;
  RandomSource& operator=(RandomSource&&) noexcept = default;
  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;

  // Uniform integer in [0, m), m >= 1. Rejection sampling over whole
  // 64-bit words, so no modulo bias and no platform-dependent behavior.
  std::uint32_t uniform(std::uint32_t m);

  bool deterministic() const noexcept { return device_ == nullptr; }

 private:
  std::uint64_t next_u64();

  std::array<std::uint64_t, 4> state_{};
  std::unique_ptr<std::random_device> device_;
};

}  // namespace rvc
