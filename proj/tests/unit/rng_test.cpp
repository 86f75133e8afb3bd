#include <doctest.h>

#include <cmath>
#include <set>

#include "restartar/rng.hpp"

using namespace restartar;

TEST_CASE("philox4x32-10 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("stream words are philox blocks in counter order") {
  const std::uint64_t seed = 0x0123456789abcdefULL, id = 0x1122334455667788ULL;
  RandomStream s(seed, id);
  const PhiloxKey key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (std::uint32_t block = 0; block < 20; ++block) {
    const auto expected =
        philox4x32_10({block, 0, static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)}, key);
    for (auto word : expected) CHECK(s.next_u32() == word);
  }
}

TEST_CASE("streams are reproducible and distinct") {
  RandomStream a(7, 0), b(7, 0), c(7, 1), d(8, 0);
  bool differ_c = false, differ_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differ_c = differ_c || x != c.next_u64();
    differ_d = differ_d || x != d.next_u64();
  }
  CHECK(differ_c);
  CHECK(differ_d);
}

TEST_CASE("substreams depend only on (seed, id, tag)") {
  const RandomStream root(42, 0);
  auto s1 = root.substream(5);
  auto s2 = RandomStream(42, 0).substream(5);
  CHECK(s1.stream_id() == s2.stream_id());
  CHECK(s1.next_u64() == s2.next_u64());
  std::set<std::uint64_t> ids;
  for (std::uint64_t t = 0; t < 1000; ++t) ids.insert(root.substream(t).stream_id());
  CHECK(ids.size() == 1000);
}

TEST_CASE("uniform and normal draws") {
  RandomStream s(1, 2);
  const int n = 200'000;
  double sum = 0.0, sum2 = 0.0, nsum = 0.0, nsum2 = 0.0, nsum4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
    const double o = s.uniform_open();
    REQUIRE(o > 0.0);
    REQUIRE(o < 1.0);
    const double z = s.normal();
    nsum += z;
    nsum2 += z * z;
    nsum4 += z * z * z * z;
  }
  CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(sum2 / n - 1.0 / 3.0) < 4.0 * std::sqrt(4.0 / 45.0 / n));
  CHECK(std::abs(nsum / n) < 4.0 / std::sqrt(n));
  CHECK(std::abs(nsum2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(nsum4 / n - 3.0) < 4.0 * std::sqrt(96.0 / n));
}
