#pragma once

// Witness exponents: solving 2^a = c (mod 3^(k+1)) by lifting one ternary
// digit at a time (2 generates the units mod every 3^j), the resulting
// arithmetic progression of exponents, and validation of reconstructed traces.

#include <string>
#include <vector>

#include "collatz/arith.hpp"
#include "collatz/collatz_core.hpp"
#include "collatz/errors.hpp"
#include "collatz/type_algebra.hpp"

namespace collatz {

// Largest exponent for which 2^a is materialized as an integer. Above this,
// witnesses are screened structurally (see validate_witness).

// Least positive a with 2^a = c (mod 3^exponent). Runs one parity step and
// then exponent-1 digit lifts, three candidates each.
inline Int discrete_log_pow2(const Int& c, unsigned exponent) {
  if (exponent == 0) throw Error("discrete_log_pow2: modulus exponent must be positive");
  Int modulus = pow3(exponent);
  Int cr = c % modulus;
  if (cr < 0) cr += modulus;
  if (cr % 3 == 0) throw NotAUnit("discrete_log_pow2: " + c.get_str() + " is divisible by 3");

  Int a = (cr % 3 == 1) ? 0 : 1;
  Int ord = 2;
  for (unsigned j = 2; j <= exponent; ++j) {
    Int mj = pow3(j);
    Int target = cr % mj;
    bool found = false;
    for (int t = 0; t < 3; ++t) {
      Int cand = a + t * ord;
      if (powm(Int(2), cand, mj) == target) {
        a = cand;
        found = true;
        break;
      }
    }
    assert(found);
    (void)found;
    ord *= 3;
  }
  if (a == 0) a = ord;  // least positive representative of the class
  return a;
}

// All witnesses of a type: exponents a0 + j * 2*3^k, j >= 0.
struct WitnessSchedule {
  Int a0;
  Int period;
  unsigned k = 0;

  Int at(unsigned long j) const { return a0 + Int(j) * period; }
  bool contains(const Int& a) const { return a >= a0 && (a - a0) % period == 0; }
};

inline WitnessSchedule witness_schedule(const TraceType& sigma) {
  Congruence g = congruence(sigma);
  WitnessSchedule s;
  s.k = g.k;
  s.a0 = discrete_log_pow2(g.c, g.k + 1);
  s.period = 2 * pow3(g.k);
  return s;
}

// First trace element for witness exponent a: the full composition at 2^a.
inline Int start_value(const TraceType& sigma, const Int& a) {
  AffineForm f = sigma_to_affine(sigma);
  Congruence g = congruence_of(f);
  if (powm(Int(2), a, g.modulus) != g.c)
    throw NotAWitness("start_value: exponent " + a.get_str() + " violates the congruence");
  if (a > static_cast<long>(kMaxMaterializedExponent))
    throw Error("start_value: exponent " + a.get_str() + " too large to materialize");
  return f.value_at_int(pow2(a.get_ui()));
}

struct WitnessReport {
  bool valid = false;
  bool structural = false;  // accepted by the size argument, values not materialized
  std::string reason;
  std::vector<Int> values;  // reconstructed trace values when materialized
};

// A witness exponent is degenerate only near the bottom of the schedule:
// a = 2 puts the final element at (4-1)/3 = 1, so any nonempty type walks
// through 2 = 2^1. For A >= 16 the final element is an odd value > 1, and a
// power of two inside the trace would force the tail down to 1, so every
// larger scheduled exponent is valid. Small exponents are checked exactly.
inline WitnessReport validate_witness(const TraceType& sigma, const Int& a) {
  WitnessReport rep;
  Congruence g = congruence(sigma);
  if (a < 1 || powm(Int(2), a, g.modulus) != g.c) {
    rep.reason = "exponent " + a.get_str() + " is not in the witness schedule";
    return rep;
  }
  if (a > static_cast<long>(kMaxMaterializedExponent)) {
    rep.valid = true;
    rep.structural = true;
    return rep;
  }

  Int A = pow2(a.get_ui());
  LineFamily fam = suffix_lines(sigma);
  std::size_t n = fam.size();
  rep.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rep.values.push_back(fam.lines[i].value_at_int(A));

  for (std::size_t i = 0; i < n; ++i) {
    const Int& v = rep.values[i];
    std::string where = (i == 0) ? "start value " : "value ";
    if (v < 1) {
      rep.reason = where + v.get_str() + " at position " + std::to_string(i + 1) +
                   " is not positive";
      return rep;
    }
    if (is_terminating_power_of_two(v)) {
      rep.reason = (i == 0 ? "start value " + v.get_str() : "value " + v.get_str() +
                    " at position " + std::to_string(i + 1)) + " is a power of two";
      return rep;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rep.values[i] == rep.values[j]) {
        rep.reason = "values at positions " + std::to_string(i + 1) + " and " +
                     std::to_string(j + 1) + " coincide";
        return rep;
      }

  // Forward iteration must reproduce the reconstruction and stop exactly at A.
  Int v = rep.values[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (v != rep.values[i]) {
      rep.reason = "forward iteration diverges at position " + std::to_string(i + 1);
      return rep;
    }
    bool up = is_odd(v);
    if (i + 1 < n && (sigma.letters()[i] == 'u') != up) {
      rep.reason = "parity at position " + std::to_string(i + 1) + " contradicts the type";
      return rep;
    }
    if (i + 1 == n && !up) {
      rep.reason = "final element is even";
      return rep;
    }
    v = collatz_step(v);
  }
  if (v != A) {
    rep.reason = "forward iteration does not terminate at 2^" + a.get_str();
    return rep;
  }
  rep.valid = true;
  return rep;
}

inline Int first_valid_witness(const TraceType& sigma, int max_attempts = 4) {
  WitnessSchedule s = witness_schedule(sigma);
  Int a = s.a0;
  for (int i = 0; i < max_attempts; ++i) {
    if (validate_witness(sigma, a).valid) return a;
    a += s.period;
  }
  throw NoValidWitnessWithinCap("first_valid_witness: no valid witness among the first " +
                                std::to_string(max_attempts) + " scheduled exponents");
}

}  // namespace collatz
