// Arithmetic in the binary finite fields GF(2^b) for b in {8, 16, 32, 64},
// plus counter-based pseudorandom draws of field elements.
//
// Elements are b-bit words read as polynomials over GF(2) of degree < b.
// Addition is XOR. Multiplication is a carry-less product reduced modulo a
// fixed low-weight irreducible polynomial per width:
//
//   b = 8   x^8  + x^4 + x^3 + x   + 1   (0x1b)
//   b = 16  x^16 + x^5 + x^3 + x   + 1   (0x2b)
//   b = 32  x^32 + x^7 + x^3 + x^2 + 1   (0x8d)
//   b = 64  x^64 + x^4 + x^3 + x   + 1   (0x1b)
//
// All randomness here is position-addressed: a value is a pure function of
// (seed, role, index triple), so any draw can be recomputed at any time from
// its position alone, independent of evaluation order or thread schedule.

#pragma once

#include <cstdint>
#include <type_traits>

#if defined(__PCLMUL__) && defined(__SSE2__)
#include <emmintrin.h>
#include <wmmintrin.h>
#define TSIEVE_HAVE_PCLMUL 1
#endif

namespace tsieve::gf {

template <typename Word>
concept FieldWord = std::is_same_v<Word, std::uint8_t> ||
                    std::is_same_v<Word, std::uint16_t> ||
                    std::is_same_v<Word, std::uint32_t> ||
                    std::is_same_v<Word, std::uint64_t>;

// Low word of the modulus; the x^b term is implicit.
template <FieldWord Word>
inline constexpr Word modulus_low = 0;
template <> inline constexpr std::uint8_t  modulus_low<std::uint8_t>  = 0x1b;
template <> inline constexpr std::uint16_t modulus_low<std::uint16_t> = 0x2b;
template <> inline constexpr std::uint32_t modulus_low<std::uint32_t> = 0x8d;
template <> inline constexpr std::uint64_t modulus_low<std::uint64_t> = 0x1b;

template <FieldWord Word>
inline constexpr int field_bits = 8 * static_cast<int>(sizeof(Word));

template <FieldWord Word>
constexpr Word add(Word a, Word b) {
  return static_cast<Word>(a ^ b);
}

namespace detail {

// Portable carry-less 64x64 -> 128 bit product.
constexpr void clmul64_portable(std::uint64_t a, std::uint64_t b,
                                std::uint64_t& hi, std::uint64_t& lo) {
  hi = 0;
  lo = 0;
  while (b) {
    int i = __builtin_ctzll(b);
    b &= b - 1;
    lo ^= a << i;
    if (i) hi ^= a >> (64 - i);
  }
}

inline void clmul64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
#ifdef TSIEVE_HAVE_PCLMUL
  __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
  __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
  __m128i p = _mm_clmulepi64_si128(va, vb, 0x00);
  lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(p));
  hi = static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)));
#else
  clmul64_portable(a, b, hi, lo);
#endif
}

}  // namespace detail

// Product in GF(2^b). For b <= 32 the carry-less product fits in 64 bits and
// is reduced by scanning the overflow bits; for b = 64 the 128-bit product is
// folded twice through the modulus.
template <FieldWord Word>
inline Word mul(Word a, Word b) {
  if constexpr (field_bits<Word> <= 32) {
    std::uint64_t hi, lo;
    detail::clmul64(a, b, hi, lo);
    constexpr int nbits = field_bits<Word>;
    constexpr std::uint64_t poly =
        (std::uint64_t{1} << nbits) | modulus_low<Word>;
    for (int bit = 2 * nbits - 2; bit >= nbits; --bit)
      if (lo >> bit & 1) lo ^= poly << (bit - nbits);
    return static_cast<Word>(lo);
  } else {
    std::uint64_t hi, lo;
    detail::clmul64(a, b, hi, lo);
    // hi * x^64 == hi * (x^4 + x^3 + x + 1); fold the overflow twice.
    std::uint64_t thi, tlo;
    detail::clmul64(hi, modulus_low<std::uint64_t>, thi, tlo);
    std::uint64_t shi, slo;
    detail::clmul64(thi, modulus_low<std::uint64_t>, shi, slo);
    return lo ^ tlo ^ slo;
  }
}

// --- Position-addressed pseudorandomness -----------------------------------

// Roles separate the independent variable families of one run.
enum class Role : std::uint64_t {
  shade_v = 1,   // v_{vertex,shade}
  shade_w = 2,   // w_{shade,label}
  edge_y = 3,    // y_{edge,position}
  edge_y2 = 4,   // second y family (junction sieve)
  label_z = 5,   // positional z_{vertex,label} (vertex-ordered sieve)
  stream = 6,    // generic sequential stream
  walk = 7,      // random-walk baseline
};

namespace detail {

constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

}  // namespace detail

// The draw is a pure function of its arguments.
constexpr std::uint64_t draw64(std::uint64_t seed, Role role, std::uint64_t a,
                               std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = seed + 0x9e3779b97f4a7c15ull;
  h = detail::mix64(h ^ (static_cast<std::uint64_t>(role) * 0xff51afd7ed558ccdull));
  h = detail::mix64(h ^ (a + 0xc2b2ae3d27d4eb4full));
  h = detail::mix64(h ^ (b + 0x165667b19e3779f9ull));
  h = detail::mix64(h ^ (c + 0x27d4eb2f165667c5ull));
  return h;
}

// Uniform over the nonzero elements of GF(2^b): rejection by re-mixing,
// deterministic in the position.
template <FieldWord Word>
constexpr Word draw_nonzero(std::uint64_t seed, Role role, std::uint64_t a,
                            std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = draw64(seed, role, a, b, c);
  while (static_cast<Word>(h) == 0) h = detail::mix64(h + 0x9e3779b97f4a7c15ull);
  return static_cast<Word>(h);
}

// Sequential view of the position-addressed draws: draw i of a stream is
// draw_nonzero(seed, stream, i). Stateless apart from the cursor.
struct SeededStream {
  std::uint64_t seed = 0;
  std::uint64_t pos = 0;

  template <FieldWord Word>
  Word next_nonzero() {
    return draw_nonzero<Word>(seed, Role::stream, pos++, 0, 0);
  }

  template <FieldWord Word>
  Word nonzero_at(std::uint64_t i) const {
    return draw_nonzero<Word>(seed, Role::stream, i, 0, 0);
  }
};

}  // namespace tsieve::gf
