#include <doctest.h>

#include <cstdint>
#include <map>
#include <vector>

#include "tsieve/gf.hpp"

using namespace tsieve;

namespace {

// Independent multiplication oracle: full carry-less product accumulated
// bit by bit into a 128-bit pair, then reduced by polynomial long division.
// Shares no code path with gf::mul.
template <typename Word>
Word oracle_mul(Word a, Word b) {
  constexpr int nbits = gf::field_bits<Word>;
  std::uint64_t hi = 0, lo = 0;
  for (int i = 0; i < nbits; ++i) {
    if (!(b >> i & 1)) continue;
    std::uint64_t alo = static_cast<std::uint64_t>(a);
    lo ^= alo << i;
    if (i) hi ^= alo >> (64 - i);
  }
  // Divide by the modulus, highest bit first.
  for (int bit = 2 * nbits - 2; bit >= nbits; --bit) {
    bool set = bit >= 64 ? (hi >> (bit - 64)) & 1 : (lo >> bit) & 1;
    if (!set) continue;
    int shift = bit - nbits;
    // Subtract modulus * x^shift: the implicit x^nbits term plus the low word.
    int top = nbits + shift;
    if (top >= 64) hi ^= std::uint64_t{1} << (top - 64);
    else lo ^= std::uint64_t{1} << top;
    std::uint64_t m = gf::modulus_low<Word>;
    for (int j = 0; j < nbits; ++j) {
      if (!(m >> j & 1)) continue;
      int pos = j + shift;
      if (pos >= 64) hi ^= std::uint64_t{1} << (pos - 64);
      else lo ^= std::uint64_t{1} << pos;
    }
  }
  CHECK(hi == 0);
  return static_cast<Word>(lo);
}

}  // namespace

TEST_CASE("gf add is xor with the expected identities") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto a = gf::draw_nonzero<std::uint64_t>(3, gf::Role::stream, i, 0, 0);
    CHECK(gf::add(a, a) == 0);
    CHECK(gf::add(a, std::uint64_t{0}) == a);
  }
  CHECK(gf::add<std::uint8_t>(0x0F, 0x05) == 0x0A);
}

TEST_CASE("gf mul identities and small products") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto a = gf::draw_nonzero<std::uint64_t>(4, gf::Role::stream, i, 0, 0);
    CHECK(gf::mul(a, std::uint64_t{1}) == a);
  }
  CHECK(gf::mul<std::uint64_t>(0x02, 0x02) == 0x04);
  // x^63 * x = x^64 = x^4 + x^3 + x + 1 under the 64-bit modulus.
  std::uint64_t hi_bit = std::uint64_t{1} << 63;
  CHECK(gf::mul<std::uint64_t>(hi_bit, 0x02) == 0x1B);
  CHECK(oracle_mul<std::uint64_t>(hi_bit, 0x02) == 0x1B);
}

TEST_CASE("gf mul agrees with the long-division oracle across widths") {
  std::uint64_t seed = 99;
  for (std::uint64_t i = 0; i < 5000; ++i) {
    auto x = gf::draw64(seed, gf::Role::stream, i, 0, 0);
    auto y = gf::draw64(seed, gf::Role::stream, i, 1, 0);
    CHECK(gf::mul<std::uint64_t>(x, y) == oracle_mul<std::uint64_t>(x, y));
    CHECK(gf::mul<std::uint32_t>(static_cast<std::uint32_t>(x),
                                 static_cast<std::uint32_t>(y)) ==
          oracle_mul<std::uint32_t>(static_cast<std::uint32_t>(x),
                                    static_cast<std::uint32_t>(y)));
    CHECK(gf::mul<std::uint16_t>(static_cast<std::uint16_t>(x),
                                 static_cast<std::uint16_t>(y)) ==
          oracle_mul<std::uint16_t>(static_cast<std::uint16_t>(x),
                                    static_cast<std::uint16_t>(y)));
  }
}

TEST_CASE("gf(2^8) exhaustive: oracle agreement, no zero divisors, inverses") {
  std::vector<bool> has_inverse(256, false);
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      auto p = gf::mul<std::uint8_t>(static_cast<std::uint8_t>(a),
                                     static_cast<std::uint8_t>(b));
      REQUIRE(p == oracle_mul<std::uint8_t>(static_cast<std::uint8_t>(a),
                                            static_cast<std::uint8_t>(b)));
      if (a && b) REQUIRE(p != 0);
      if (p == 1) has_inverse[a] = true;
    }
  }
  for (int a = 1; a < 256; ++a) CHECK(has_inverse[a]);
}

TEST_CASE("gf mul is associative and distributes over add") {
  std::uint64_t seed = 2024;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    auto a = gf::draw64(seed, gf::Role::stream, i, 0, 0);
    auto b = gf::draw64(seed, gf::Role::stream, i, 1, 0);
    auto c = gf::draw64(seed, gf::Role::stream, i, 2, 0);
    REQUIRE(gf::mul(a, gf::mul(b, c)) == gf::mul(gf::mul(a, b), c));
    REQUIRE(gf::mul(a, gf::add(b, c)) ==
            gf::add(gf::mul(a, b), gf::mul(a, c)));
  }
}

TEST_CASE("draws are position-deterministic") {
  gf::SeededStream s1{77, 0}, s2{77, 0};
  for (int i = 0; i < 1000; ++i)
    CHECK(s1.next_nonzero<std::uint64_t>() == s2.next_nonzero<std::uint64_t>());
  CHECK(s1.nonzero_at<std::uint64_t>(5) == s2.nonzero_at<std::uint64_t>(5));
  CHECK(gf::draw64(1, gf::Role::edge_y, 2, 3, 4) ==
        gf::draw64(1, gf::Role::edge_y, 2, 3, 4));
  CHECK(gf::draw64(1, gf::Role::edge_y, 2, 3, 4) !=
        gf::draw64(1, gf::Role::edge_y2, 2, 3, 4));
}

TEST_CASE("draw uniformity: chi-square over the low byte") {
  constexpr int kDraws = 1000000;
  std::vector<std::int64_t> counts(256, 0);
  gf::SeededStream s{123456, 0};
  for (int i = 0; i < kDraws; ++i)
    ++counts[s.next_nonzero<std::uint64_t>() & 0xff];
  double expected = kDraws / 256.0;
  double chi2 = 0;
  for (auto c : counts) {
    double d = c - expected;
    chi2 += d * d / expected;
  }
  // 255 degrees of freedom, alpha = 0.01.
  CHECK(chi2 < 310.46);
}

TEST_CASE("gf(2^8) nonzero stream hits all 255 values") {
  std::map<std::uint8_t, int> seen;
  gf::SeededStream s{7, 0};
  for (int i = 0; i < 100000; ++i) {
    auto v = s.next_nonzero<std::uint8_t>();
    CHECK(v != 0);
    ++seen[v];
  }
  CHECK(seen.size() == 255);
}
