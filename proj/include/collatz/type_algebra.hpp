#pragma once

// Trace types as words over {u, d}, their Fibonacci enumeration, and the
// affine maps obtained by composing the inverse Collatz steps
// U(x) = (x-1)/3 and D(x) = 2x.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "collatz/arith.hpp"
#include "collatz/collatz_core.hpp"
#include "collatz/errors.hpp"

namespace collatz {

// Grammar: no "uu" factor, and a nonempty type ends in d.
inline TraceType validate_type(std::string_view word) {
  for (std::size_t i = 0; i < word.size(); ++i) {
    char ch = word[i];
    if (ch != 'u' && ch != 'd')
      throw BadTypeLetter("type: letter '" + std::string(1, ch) + "' is not u or d");
    if (ch == 'u' && i > 0 && word[i - 1] == 'u')
      throw ConsecutiveUps("type: factor uu at position " + std::to_string(i));
  }
  if (!word.empty() && word.back() != 'd') throw DoesNotEndInD("type: must end in d");
  return TraceType::unchecked(std::string(word));
}

inline TraceType prepend(const TraceType& sigma, char letter) {
  if (letter == 'd') return TraceType::unchecked("d" + sigma.letters());
  if (letter == 'u') {
    if (sigma.empty() || sigma.front() != 'd')
      throw InvalidExtension("prepend: u must be followed by d");
    return TraceType::unchecked("u" + sigma.letters());
  }
  throw InvalidExtension("prepend: letter must be u or d");
}

// Emits every valid type of the given length in lexicographic order (d < u).
class TypeEnumerator {
 public:
  explicit TypeEnumerator(int length) : m_(length), cur_(static_cast<std::size_t>(length), 'd') {
    assert(length >= 0);
  }

  std::optional<TraceType> next() {
    if (done_) return std::nullopt;
    if (first_) {
      first_ = false;
      return TraceType::unchecked(cur_);
    }
    // Rightmost d that can flip to u without creating uu; the tail resets to
    // all d, which is the lexicographically smallest valid completion.
    for (int i = m_ - 2; i >= 0; --i) {
      if (cur_[i] == 'd' && (i == 0 || cur_[i - 1] != 'u')) {
        cur_[i] = 'u';
        std::fill(cur_.begin() + i + 1, cur_.end(), 'd');
        return TraceType::unchecked(cur_);
      }
    }
    done_ = true;
    return std::nullopt;
  }

 private:
  int m_;
  std::string cur_;
  bool first_ = true;
  bool done_ = false;
};

inline std::vector<TraceType> enumerate_types(int length) {
  std::vector<TraceType> out;
  TypeEnumerator en(length);
  while (auto t = en.next()) out.push_back(*t);
  return out;
}

// F(1) = F(2) = 1. Valid types of length m are counted by F(m+1).
inline Int fibonacci(unsigned n) {
  if (n == 0) throw Error("fibonacci: index starts at 1");
  Int a = 1, b = 1;  // F(1), F(2)
  for (unsigned i = 2; i < n; ++i) {
    Int c = a + b;
    a = b;
    b = c;
  }
  return n == 1 ? a : b;
}

// t -> (2^p t - b) / 3^q, kept unreduced so p, q, b read off the composition.
struct AffineForm {
  unsigned p = 0;
  unsigned q = 0;
  Int b = 0;

  bool operator==(const AffineForm& o) const { return p == o.p && q == o.q && b == o.b; }

  // D composed on the outside: doubles the output.
  AffineForm prepend_d() const { return {p + 1, q, Int(2 * b)}; }
  // U composed on the outside: (form - 1)/3.
  AffineForm prepend_u() const { return {p, q + 1, Int(b + pow3(q))}; }

  AffineForm prepend(char letter) const { return letter == 'd' ? prepend_d() : prepend_u(); }

  Rat slope() const { return make_rat(pow2(p), pow3(q)); }
  Rat intercept() const { return make_rat(-b, pow3(q)); }

  Rat value_at(const Rat& t) const {
    Rat num = Rat(pow2(p)) * t - Rat(b);
    return num / Rat(pow3(q));
  }

  // Exact integer value at t = A; the congruence below tells when this exists.
  Int value_at_int(const Int& A) const {
    Int num = pow2(p) * A - b;
    Int den = pow3(q);
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
      throw NotAWitness("affine form: value at " + A.get_str() + " is not an integer");
    Int out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
  }

  std::string str() const {
    return "(2^" + std::to_string(p) + " t - " + b.get_str() + ") / 3^" + std::to_string(q);
  }
};

// Full composition for sigma: capitalized letters applied around a trailing U,
// so the empty type gives U itself, (A-1)/3.
inline AffineForm sigma_to_affine(const TraceType& sigma) {
  AffineForm f{0, 1, Int(1)};
  const std::string& s = sigma.letters();
  for (auto it = s.rbegin(); it != s.rend(); ++it) f = f.prepend(*it);
  return f;
}

// Position i holds the suffix composition of length m+2-i: position 1 is the
// whole composition, position m+1 the trailing U alone. lines[i] is position i+1.
struct LineFamily {
  TraceType sigma;
  std::vector<AffineForm> lines;

  std::size_t size() const { return lines.size(); }
};

inline LineFamily suffix_lines(const TraceType& sigma) {
  const std::string& s = sigma.letters();
  std::size_t m = s.size();
  LineFamily fam;
  fam.sigma = sigma;
  fam.lines.assign(m + 1, AffineForm{});
  fam.lines[m] = AffineForm{0, 1, Int(1)};
  for (std::size_t i = m; i-- > 0;) fam.lines[i] = fam.lines[i + 1].prepend(s[i]);
  return fam;
}

// Integer outputs at t = A happen exactly on one residue class mod 3^(k+1),
// where k counts the u letters: A = c (mod 3^(k+1)) with c = b * 2^-p.
struct Congruence {
  Int c;
  Int modulus;
  unsigned k = 0;
};

inline Congruence congruence_of(const AffineForm& f) {
  Congruence g;
  g.k = f.q - 1;
  g.modulus = pow3(f.q);
  Int inv = invert(powm(Int(2), Int(f.p), g.modulus), g.modulus);
  g.c = (f.b % g.modulus) * inv % g.modulus;
  if (g.c < 0) g.c += g.modulus;
  assert(g.c % 3 != 0);
  return g;
}

inline Congruence congruence(const TraceType& sigma) { return congruence_of(sigma_to_affine(sigma)); }

// Incrementally maintained (type, form, congruence). Prepending d doubles b
// and leaves the residue class untouched; prepending u bumps the modulus by a
// factor 3 and lifts c.
struct PrependState {
  TraceType sigma;
  AffineForm form;
  Congruence cong;

  static PrependState initial() {
    PrependState s;
    s.sigma = TraceType();
    s.form = AffineForm{0, 1, Int(1)};
    s.cong = congruence_of(s.form);
    return s;
  }

  static PrependState of(const TraceType& sigma) {
    PrependState s;
    s.sigma = sigma;
    s.form = sigma_to_affine(sigma);
    s.cong = congruence_of(s.form);
    return s;
  }

  PrependState prepended(char letter) const {
    PrependState out;
    out.sigma = collatz::prepend(sigma, letter);
    if (letter == 'd') {
      out.form = form.prepend_d();
      out.cong = cong;  // 2^(p+1) A = 2b has the same solutions as 2^p A = b
    } else {
      out.form = form.prepend_u();
      out.cong.k = cong.k + 1;
      out.cong.modulus = cong.modulus * 3;
      Int inv = invert(powm(Int(2), Int(out.form.p), out.cong.modulus), out.cong.modulus);
      out.cong.c = (out.form.b % out.cong.modulus) * inv % out.cong.modulus;
      if (out.cong.c < 0) out.cong.c += out.cong.modulus;
      assert(out.cong.c % cong.modulus == cong.c);  // lift of the old class
    }
    return out;
  }
};

}  // namespace collatz
