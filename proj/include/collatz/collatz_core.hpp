#pragma once

// The Collatz map, traces (iterates up to the first power of two), and the
// rank permutations induced by a trace.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "collatz/arith.hpp"
#include "collatz/errors.hpp"

namespace collatz {

inline constexpr unsigned long kDefaultGuard = 1'000'000;

inline Int collatz_step(const Int& x) {
  assert(x >= 1);
  return is_even(x) ? Int(x / 2) : Int(3 * x + 1);
}

struct Trace {
  std::vector<Int> elements;

  const Int& start() const { return elements.front(); }
  std::size_t size() const { return elements.size(); }
  bool operator==(const Trace& o) const { return elements == o.elements; }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (i) s += ' ';
      s += elements[i].get_str();
    }
    return s;
  }
};

// Iterates f from x, collecting values strictly before the first 2^j (j >= 1).
inline Trace trace(const Int& x, unsigned long guard = kDefaultGuard) {
  if (x < 1) throw Error("trace: start value must be positive");
  if (is_terminating_power_of_two(x))
    throw PowerOfTwoStart("trace: " + x.get_str() + " is a power of two and has no trace");
  Trace t;
  Int v = x;
  for (unsigned long i = 0;; ++i) {
    if (i >= guard)
      throw GuardExceeded("trace: no power of two within " + std::to_string(guard) +
                          " iterations from " + x.get_str());
    t.elements.push_back(v);
    v = collatz_step(v);
    if (is_terminating_power_of_two(v)) break;
  }
  return t;
}

struct Permutation {
  std::vector<int> ranks;

  Permutation() = default;
  explicit Permutation(std::vector<int> r) : ranks(std::move(r)) {
    std::vector<char> seen(ranks.size() + 1, 0);
    for (int v : ranks) {
      if (v < 1 || v > static_cast<int>(ranks.size()) || seen[v])
        throw Error("permutation: ranks are not a bijection onto 1..n");
      seen[v] = 1;
    }
  }

  std::size_t size() const { return ranks.size(); }
  bool operator==(const Permutation& o) const { return ranks == o.ranks; }
  bool operator!=(const Permutation& o) const { return ranks != o.ranks; }
  bool operator<(const Permutation& o) const { return ranks < o.ranks; }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(ranks[i]);
    }
    return s;
  }
};

namespace detail {

// Ranks of a sequence of distinct values, smallest value getting rank 1.
// on_tie is thrown as the error message when two values coincide.
template <typename T, typename TieError>
Permutation ranks_of(const std::vector<T>& vals, TieError on_tie) {
  std::vector<int> idx(vals.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  for (std::size_t r = 1; r < idx.size(); ++r)
    if (vals[idx[r - 1]] == vals[idx[r]]) throw on_tie;
  Permutation p;
  p.ranks.assign(vals.size(), 0);
  for (std::size_t r = 0; r < idx.size(); ++r) p.ranks[idx[r]] = static_cast<int>(r) + 1;
  return p;
}

}  // namespace detail

inline Permutation rank_permutation(const Trace& t) {
  return detail::ranks_of(t.elements,
                          DuplicateElements("rank_permutation: trace elements are not distinct"));
}

inline Permutation collatz_perm(const Int& x, unsigned long guard = kDefaultGuard) {
  return rank_permutation(trace(x, guard));
}

class TraceType {
 public:
  TraceType() = default;

  static TraceType unchecked(std::string letters) { return TraceType(std::move(letters)); }

  const std::string& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  char front() const { return letters_.front(); }
  int u_count() const { return static_cast<int>(std::count(letters_.begin(), letters_.end(), 'u')); }
  int d_count() const { return static_cast<int>(std::count(letters_.begin(), letters_.end(), 'd')); }

  bool operator==(const TraceType& o) const { return letters_ == o.letters_; }
  bool operator!=(const TraceType& o) const { return letters_ != o.letters_; }
  bool operator<(const TraceType& o) const { return letters_ < o.letters_; }

 private:
  explicit TraceType(std::string s) : letters_(std::move(s)) {}
  std::string letters_;
};

// Reads the up/down pattern off a trace: odd element -> u, even -> d.
// The final element is odd and its rise to 2^a stays implicit.
inline TraceType trace_type(const Trace& t) {
  std::string s;
  s.reserve(t.size() - 1);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) s += is_odd(t.elements[i]) ? 'u' : 'd';
  return TraceType::unchecked(std::move(s));
}

// Recovers the type from the rise/descent pattern of a rank permutation.
inline TraceType type_from_permutation(const Permutation& p) {
  std::string s;
  s.reserve(p.size() ? p.size() - 1 : 0);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    bool rise = p.ranks[i] < p.ranks[i + 1];
    if (rise && !s.empty() && s.back() == 'u')
      throw NotCollatzPattern("type_from_permutation: two consecutive rises");
    s += rise ? 'u' : 'd';
  }
  if (!s.empty() && s.back() == 'u')
    throw NotCollatzPattern("type_from_permutation: pattern ends with a rise");
  return TraceType::unchecked(std::move(s));
}

}  // namespace collatz
