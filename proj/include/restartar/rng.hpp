#pragma once

#include <array>
#include <cstdint>

namespace restartar {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Exposed for known-answer testing.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

inline PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kW32A = 0x9E3779B9, kW32B = 0xBB67AE85;
  constexpr std::uint64_t kM4x32A = 0xD2511F53, kM4x32B = 0xCD9E8D57;
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kW32A;
      key[1] += kW32B;
    }
    const std::uint64_t p0 = kM4x32A * ctr[0];
    const std::uint64_t p1 = kM4x32B * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

/// Counter-based random stream keyed by (seed, stream id).
///
/// The seed is the Philox key; the stream id occupies the upper half of the
/// counter and the block index the lower half, so two streams with different
/// ids never share a block. Streams are cheap values: a worker copies or
/// derives its own and never shares one.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  /// Child stream whose id is a hash of (this id, tag). Used to key replicas,
  /// grid points and sub-tasks without coordination.
  [[nodiscard]] RandomStream substream(std::uint64_t tag) const;

  std::uint32_t next_u32() {
    if (position_ == kBuffered) refill();
    return buffer_[position_++];
  }
  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32) | lo;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1).
  double uniform_open();
  /// Standard normal, Marsaglia polar method.
  double normal();

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream_id() const { return id_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t id_;
  static constexpr int kBlocks = 8;
  static constexpr int kBuffered = 4 * kBlocks;

  std::uint64_t block_ = 0;
  std::array<std::uint32_t, kBuffered> buffer_{};
  int position_ = kBuffered;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finaliser, used to derive stream ids.
std::uint64_t mix64(std::uint64_t x);

}  // namespace restartar
