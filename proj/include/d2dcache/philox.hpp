#pragma once

#include <array>
#include <cstdint>

namespace d2dcache {

/// Philox 4x32-10 counter-based generator. A (seed, stream) pair selects an
/// independent substream; outputs depend only on (key, counter), so streams
/// can be consumed in any order or in parallel.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        counter_{0u, 0u, static_cast<std::uint32_t>(stream),
                 static_cast<std::uint32_t>(stream >> 32)} {}

  Block next_block() {
    const Block out = encrypt(counter_, key_);
    if (++counter_[0] == 0u) ++counter_[1];  // 64-bit draw counter
    return out;
  }

  static Block encrypt(Block ctr, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += 0x9E3779B9u;  // golden-ratio Weyl increments
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

 private:
  static Block single_round(const Block& ctr, const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = 0xD2511F53ull * ctr[0];
    const std::uint64_t p1 = 0xCD9E8D57ull * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }

  std::array<std::uint32_t, 2> key_;
  Block counter_;
};

/// UniformRandomBitGenerator adapter over one Philox substream, 64 bits per
/// call (two lanes per block).
class TrialRng {
 public:
  using result_type = std::uint64_t;

  TrialRng(std::uint64_t seed, std::uint64_t stream) : core_(seed, stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    if (have_second_) {
      have_second_ = false;
      return second_;
    }
    const Philox4x32::Block block = core_.next_block();
    second_ = (static_cast<std::uint64_t>(block[2]) << 32) | block[3];
    have_second_ = true;
    return (static_cast<std::uint64_t>(block[0]) << 32) | block[1];
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  Philox4x32 core_;
  std::uint64_t second_ = 0;
  bool have_second_ = false;
};

}  // namespace d2dcache
