#pragma once

// Exact-arithmetic primitives shared by every module: GMP-backed integers and
// rationals plus the small 64-bit modular kit used by the census engine.

#include <gmpxx.h>

#include <array>
#include <cassert>
#include <cstdint>
#include <string>

namespace collatz {

using Int = mpz_class;
using Rat = mpq_class;

// Largest witness exponent whose power of two is ever materialized; beyond
// it, reconstruction and validation work structurally on the exponent.
inline constexpr unsigned long kMaxMaterializedExponent = 1u << 20;

inline Int pow2(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline Int pow3(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, e);
  return r;
}

inline bool is_even(const Int& v) { return mpz_even_p(v.get_mpz_t()) != 0; }
inline bool is_odd(const Int& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

// Trace terminators are 2^j with j >= 1; the value 1 never terminates a trace.
inline bool is_terminating_power_of_two(const Int& v) {
  return v > 1 && mpz_popcount(v.get_mpz_t()) == 1;
}

inline std::size_t bit_length(const Int& v) {
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline Int powm(const Int& base, const Int& exp, const Int& mod) {
  assert(exp >= 0 && mod > 0);
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

inline Int invert(const Int& x, const Int& mod) {
  Int r;
  int ok = mpz_invert(r.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  assert(ok != 0);
  (void)ok;
  return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
  assert(den != 0);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Canonical "num/den" form, denominator kept even when it is 1.
inline std::string rat_str(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Exact test for 2^a > r that never materializes 2^a when a is large.
inline bool pow2_exceeds(const Int& a, const Rat& r) {
  assert(a >= 0);
  if (r <= 0) return true;
  const Int& num = r.get_num();
  if (a > Int(static_cast<unsigned long>(bit_length(num)))) return true;
  Int lhs = pow2(a.get_ui()) * r.get_den();
  return lhs > num;
}

namespace detail {

// 3^0 .. 3^19; 3^19 < 2^31, so every product below stays inside uint64.
inline constexpr std::array<std::uint64_t, 20> kPow3 = {
    1ull,        3ull,         9ull,         27ull,       81ull,
    243ull,      729ull,       2187ull,      6561ull,     19683ull,
    59049ull,    177147ull,    531441ull,    1594323ull,  4782969ull,
    14348907ull, 43046721ull,  129140163ull, 387420489ull, 1162261467ull};

inline std::uint64_t powmod2_u64(std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m, base = 2 % m;
  while (e) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

}  // namespace detail

}  // namespace collatz
