#pragma once

// The suffix compositions of a type, read as lines y = (2^p t - b)/3^q over
// the reals: pairwise crossings, the rightmost crossing, and the two rank
// orders a witness can see (at the witness itself, and beyond all crossings).

#include <algorithm>
#include <optional>
#include <vector>

#include "collatz/arith.hpp"
#include "collatz/collatz_core.hpp"
#include "collatz/errors.hpp"
#include "collatz/type_algebra.hpp"

namespace collatz {

// Crossing abscissa of two lines; absent when the slopes coincide, which
// distinct (p, q) pairs cannot produce.
inline std::optional<Rat> intersection(const AffineForm& f, const AffineForm& g) {
  Int num = pow3(g.q) * f.b - pow3(f.q) * g.b;
  Int den = pow2(f.p) * pow3(g.q) - pow2(g.p) * pow3(f.q);
  if (den == 0) return std::nullopt;
  return make_rat(num, den);
}

// Rightmost pairwise crossing; to its right the family keeps one fixed order.
inline Rat max_intersection_abscissa(const LineFamily& fam) {
  if (fam.size() < 2)
    throw FamilyTooSmall("max_intersection_abscissa: needs at least two lines");
  bool have = false;
  Rat best;
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      auto t = intersection(fam.lines[i], fam.lines[j]);
      if (!t) throw SameSlope("max_intersection_abscissa: equal slopes inside a family");
      if (!have || *t > best) {
        best = *t;
        have = true;
      }
    }
  return best;
}

// Cheap envelope for the rightmost crossing: 3^(k+1), covering the k+1 U
// steps a suffix composition can contain.
inline Int crude_abscissa_bound(const TraceType& sigma) {
  return pow3(static_cast<unsigned long>(sigma.u_count()) + 1);
}

// Rank order of the lines for large t: sorted by slope 2^p/3^q, compared
// exactly by cross multiplication.
inline Permutation asymptotic_permutation(const LineFamily& fam) {
  std::size_t n = fam.size();
  std::vector<Int> keys(n);  // slope of line i scaled by a common denominator
  unsigned q_all = 0;
  for (const auto& l : fam.lines) q_all = std::max(q_all, l.q);
  for (std::size_t i = 0; i < n; ++i)
    keys[i] = pow2(fam.lines[i].p) * pow3(q_all - fam.lines[i].q);
  return detail::ranks_of(keys, SameSlope("asymptotic_permutation: two lines share a slope"));
}

// Rank order of the exact line values at t = 2^a for a scheduled witness.
inline Permutation permutation_at(const LineFamily& fam, const Int& a) {
  Congruence g = congruence(fam.sigma);
  if (a < 1 || powm(Int(2), a, g.modulus) != g.c)
    throw NotAWitness("permutation_at: exponent " + a.get_str() + " violates the congruence");
  if (a > static_cast<long>(kMaxMaterializedExponent))
    throw Error("permutation_at: exponent " + a.get_str() + " too large to materialize");
  Int A = pow2(a.get_ui());
  std::vector<Int> vals(fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i) vals[i] = fam.lines[i].value_at_int(A);
  return detail::ranks_of(vals,
                          DegenerateWitness("permutation_at: two trace values coincide"));
}

}  // namespace collatz
