#include "restartar/rng.hpp"

#include <cmath>

namespace restartar {
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), id_(stream_id) {}

RandomStream RandomStream::substream(std::uint64_t tag) const {
  return RandomStream(seed_, mix64(id_ ^ mix64(tag + 0x632BE59BD9B4E019ULL)));
}

void RandomStream::refill() {
  // Several consecutive blocks at once; the rounds of independent blocks overlap.
  constexpr std::uint32_t kW32A = 0x9E3779B9, kW32B = 0xBB67AE85;
  constexpr std::uint64_t kM4x32A = 0xD2511F53, kM4x32B = 0xCD9E8D57;
  std::uint32_t c0[kBlocks], c1[kBlocks], c2[kBlocks], c3[kBlocks];
  for (int b = 0; b < kBlocks; ++b) {
    const std::uint64_t index = block_ + static_cast<std::uint64_t>(b);
    c0[b] = static_cast<std::uint32_t>(index);
    c1[b] = static_cast<std::uint32_t>(index >> 32);
    c2[b] = static_cast<std::uint32_t>(id_);
    c3[b] = static_cast<std::uint32_t>(id_ >> 32);
  }
  std::uint32_t k0 = static_cast<std::uint32_t>(seed_), k1 = static_cast<std::uint32_t>(seed_ >> 32);
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k0 += kW32A;
      k1 += kW32B;
    }
    for (int b = 0; b < kBlocks; ++b) {
      const std::uint64_t p0 = kM4x32A * c0[b];
      const std::uint64_t p1 = kM4x32B * c2[b];
      const std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1[b] ^ k0;
      const std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3[b] ^ k1;
      c1[b] = static_cast<std::uint32_t>(p1);
      c3[b] = static_cast<std::uint32_t>(p0);
      c0[b] = n0;
      c2[b] = n2;
    }
  }
  for (int b = 0; b < kBlocks; ++b) {
    buffer_[4 * b] = c0[b];
    buffer_[4 * b + 1] = c1[b];
    buffer_[4 * b + 2] = c2[b];
    buffer_[4 * b + 3] = c3[b];
  }
  block_ += kBlocks;
  position_ = 0;
}

double RandomStream::uniform_open() {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

}  // namespace restartar
