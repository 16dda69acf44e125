#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace stitx {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// A stream is identified by (seed, stream). The 64-bit seed is the Philox
// key; the 64-bit stream id occupies the upper half of the 128-bit counter and
// the lower half counts blocks. Distinct (seed, stream) pairs therefore never
// share a counter value, so replications seeded with their own stream ids are
// independent of the order in which they run.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block encrypt(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static Block single_round(const Block& c, const Key& k) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

// Stream id for replication `replication` of an experiment component `tag`.
// Keeps the two ids in disjoint 32-bit halves.
constexpr std::uint64_t stream_id(std::uint64_t replication, std::uint32_t tag = 0) {
  return (std::uint64_t{tag} << 32) | (replication & 0xFFFFFFFFull);
}

class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64() {
    if (lane_ == 2) refill();
    const std::uint64_t lo = buffer_[2 * lane_];
    const std::uint64_t hi = buffer_[2 * lane_ + 1];
    ++lane_;
    return (hi << 32) | lo;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inverse-CDF exponential: monotone in the underlying uniform.
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  std::uint64_t seed() const { return (std::uint64_t{key_[1]} << 32) | key_[0]; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill() {
    const Philox4x32::Block ctr{static_cast<std::uint32_t>(block_),
                                static_cast<std::uint32_t>(block_ >> 32),
                                static_cast<std::uint32_t>(stream_),
                                static_cast<std::uint32_t>(stream_ >> 32)};
    buffer_ = Philox4x32::encrypt(ctr, key_);
    ++block_;
    lane_ = 0;
  }

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32::Block buffer_{};
  int lane_ = 2;
};

}  // namespace stitx
