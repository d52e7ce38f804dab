#pragma once

// Classification of a type (one or two permutations) and the census over all
// types of a length. The census walks the prepend tree with 64-bit state:
// everything mod 3^(k+1) fits in uint64 up to the hard cap, and almost every
// type settles on the cheap side of the crude crossing bound.

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "collatz/arith.hpp"
#include "collatz/collatz_core.hpp"
#include "collatz/errors.hpp"
#include "collatz/line_geometry.hpp"
#include "collatz/type_algebra.hpp"
#include "collatz/witness_engine.hpp"

namespace collatz {

// Permutation lengths the census accepts: 1..34, so type lengths 0..33 and
// moduli up to 3^17, inside the 64-bit engine's range.
inline constexpr int kMaxCensusLength = 34;

struct Classification {
  TraceType sigma;
  Int c;
  Int modulus;
  Int a_first;               // first valid witness exponent
  Rat x_max;                 // rightmost crossing; 0/1 when fewer than two lines
  Permutation perm_first;      // rank order at the first valid witness
  Permutation perm_asymptotic; // rank order beyond every crossing
  int perm_count = 1;
};

// A type realizes at most two permutations: every witness past the first lies
// beyond the rightmost crossing, so only the first one can disagree with the
// asymptotic order.
inline Classification classify(const TraceType& sigma) {
  Classification cl;
  cl.sigma = sigma;
  Congruence g = congruence(sigma);
  cl.c = g.c;
  cl.modulus = g.modulus;
  cl.a_first = first_valid_witness(sigma);
  LineFamily fam = suffix_lines(sigma);
  cl.x_max = fam.size() >= 2 ? max_intersection_abscissa(fam) : Rat(0);
  cl.perm_asymptotic = asymptotic_permutation(fam);
  if (pow2_exceeds(cl.a_first, cl.x_max)) {
    cl.perm_first = cl.perm_asymptotic;  // witness already right of every crossing
  } else {
    cl.perm_first = permutation_at(fam, cl.a_first);
  }
  cl.perm_count = (cl.perm_first == cl.perm_asymptotic) ? 1 : 2;
  return cl;
}

namespace detail {

inline constexpr int kStatePrecision = 18;  // b and 2^-p tracked mod 3^18
inline constexpr std::uint64_t kP18 = kPow3[kStatePrecision];
inline constexpr std::uint64_t kInv2P18 = (kP18 + 1) / 2;

struct FastState {
  std::uint8_t len = 0;
  std::uint8_t k = 0;
  std::uint32_t p = 0;
  std::uint64_t b = 1;
  std::uint64_t inv2p = 1;   // 2^-p mod 3^18
  std::uint64_t modulus = 3;
  std::uint64_t c = 1;
  std::uint64_t a0 = 2;      // least positive solution of 2^a = c
  std::uint64_t ord = 2;     // 2 * 3^k
  char first = 0;            // leading letter, 0 for the empty type
};

inline void fast_prepend_d(FastState& s) {
  s.p += 1;
  s.b = 2 * s.b % kP18;
  s.inv2p = s.inv2p * kInv2P18 % kP18;
  s.first = 'd';
  s.len += 1;
  // c, modulus, a0, ord unchanged: doubling b cancels against the extra 2^-1
}

inline void fast_prepend_u(FastState& s) {
  assert(s.first == 'd' && s.k + 2 <= kStatePrecision);
  s.b = (s.b + kPow3[s.k + 1]) % kP18;
  s.k += 1;
  s.modulus *= 3;
  s.c = s.b * s.inv2p % kP18 % s.modulus;
  // lift the exponent: the solution class mod 3*ord extends the old one
  std::uint64_t base = s.a0 % s.ord;
  std::uint64_t found = ~0ull;
  for (int t = 0; t < 3; ++t) {
    std::uint64_t cand = base + static_cast<std::uint64_t>(t) * s.ord;
    if (powmod2_u64(cand, s.modulus) == s.c) {
      found = cand;
      break;
    }
  }
  assert(found != ~0ull);
  s.ord *= 3;
  s.a0 = (found == 0) ? s.ord : found;
  s.first = 'u';
  s.len += 1;
}

inline FastState fast_state_of(std::string_view word) {
  FastState s;
  for (std::size_t i = word.size(); i-- > 0;)
    word[i] == 'd' ? fast_prepend_d(s) : fast_prepend_u(s);
  return s;
}

// 1 or 2 permutations for the type in `word` with state s. Witnesses at
// exponent 2 fail for nonempty types (the trace walks through 2) and every
// later scheduled exponent is valid, so the screen needs no reconstruction.
inline int fast_perm_count(const FastState& s, std::string_view word) {
  std::uint64_t a_first = (s.a0 == 2 && s.len > 0) ? s.a0 + s.ord : s.a0;
  if (a_first >= 27) return 1;  // 2^27 > 3^17 >= 3^(k+1) >= every crossing
  if ((1ull << a_first) > kPow3[s.k + 1]) return 1;
  return classify(validate_type(word)).perm_count;
}

struct SubtreeAccum {
  std::uint64_t perms = 0;
  std::vector<std::string> ets;
};

// Depth-first over all types of length `target` ending in the suffix already
// in place; children prepend d always and u after a leading d.
inline void census_dfs(const FastState& st, std::string& buf, int target, SubtreeAccum& out) {
  if (st.len == target) {
    int pc = fast_perm_count(st, buf);
    out.perms += static_cast<std::uint64_t>(pc);
    if (pc == 2) out.ets.push_back(buf);
    return;
  }
  int pos = target - st.len - 1;
  FastState child = st;
  fast_prepend_d(child);
  buf[pos] = 'd';
  census_dfs(child, buf, target, out);
  if (st.first == 'd') {
    child = st;
    fast_prepend_u(child);
    buf[pos] = 'u';
    census_dfs(child, buf, target, out);
  }
}

}  // namespace detail

struct CensusRow {
  int length = 0;            // permutation length n; type length is n-1
  std::uint64_t total = 0;   // permutations realized across all types
  std::uint64_t excess = 0;  // total minus the Fibonacci baseline; counts the
                             // "extra-permutation types" (ETs), i.e. types
                             // realizing two permutations instead of one
};

struct LengthResult {
  CensusRow row;
  std::vector<Classification> ets;  // lexicographic by type
};

// Called as the merged prefix of subtrees grows: done count, running total,
// ET types found so far. Drives checkpointing; contents are deterministic.
using SubtreeProgress =
    std::function<void(int subtrees_done, std::uint64_t partial_total,
                       const std::vector<std::string>& partial_ets)>;

// Census for one permutation length. Work splits over the disjoint subtrees
// hanging under each length-min(m, split_depth) suffix, taken in lexicographic
// order; results merge in that order regardless of scheduling, so totals, ET
// lists and row bytes never depend on the thread count.
inline LengthResult census_length(int n, unsigned threads = 1, int split_depth = 12,
                                  int skip_subtrees = 0,
                                  std::uint64_t carry_total = 0,
                                  std::vector<std::string> carry_ets = {},
                                  const SubtreeProgress& on_prefix = {}) {
  if (n < 1 || n > kMaxCensusLength)
    throw Error("census: permutation length must be in 1.." + std::to_string(kMaxCensusLength));
  const int m = n - 1;
  const int ell = std::min(m, split_depth);
  std::vector<TraceType> roots = enumerate_types(ell);
  const int total_roots = static_cast<int>(roots.size());

  std::vector<detail::SubtreeAccum> slots(total_roots);
  std::vector<std::atomic<bool>> done(total_roots);
  for (auto& f : done) f.store(false, std::memory_order_relaxed);

  auto run_subtree = [&](int i) {
    detail::SubtreeAccum acc;
    const std::string& root = roots[i].letters();
    std::string buf(static_cast<std::size_t>(m), 'd');
    std::copy(root.begin(), root.end(), buf.begin() + (m - ell));
    detail::census_dfs(detail::fast_state_of(root), buf, m, acc);
    slots[i] = std::move(acc);
    done[i].store(true, std::memory_order_release);
  };

  std::uint64_t total = carry_total;
  std::vector<std::string> et_sigmas = std::move(carry_ets);
  int merged = skip_subtrees;

  auto merge_ready = [&]() {
    while (merged < total_roots && done[merged].load(std::memory_order_acquire)) {
      total += slots[merged].perms;
      for (auto& s : slots[merged].ets) et_sigmas.push_back(std::move(s));
      slots[merged] = detail::SubtreeAccum{};
      ++merged;
      if (on_prefix) on_prefix(merged, total, et_sigmas);
    }
  };

  if (threads <= 1) {
    for (int i = skip_subtrees; i < total_roots; ++i) {
      run_subtree(i);
      merge_ready();
    }
  } else {
    std::atomic<int> next(skip_subtrees);
    std::exception_ptr failure;
    std::mutex failure_mu;
    unsigned nworkers = std::min<unsigned>(threads, static_cast<unsigned>(
        std::max(1, total_roots - skip_subtrees)));
    std::vector<std::thread> workers;
    workers.reserve(nworkers);
    for (unsigned w = 0; w < nworkers; ++w)
      workers.emplace_back([&] {
        try {
          for (int i = next.fetch_add(1); i < total_roots; i = next.fetch_add(1)) run_subtree(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      });
    std::exception_ptr merge_failure;
    while (merged < total_roots) {
      try {
        merge_ready();
      } catch (...) {
        merge_failure = std::current_exception();
        break;
      }
      if (failure) break;
      if (merged < total_roots) std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
    if (merge_failure) std::rethrow_exception(merge_failure);
    merge_ready();
  }

  std::sort(et_sigmas.begin(), et_sigmas.end());
  LengthResult out;
  out.row = CensusRow{n, total, static_cast<std::uint64_t>(et_sigmas.size())};
  out.ets.reserve(et_sigmas.size());
  for (const auto& s : et_sigmas) out.ets.push_back(classify(validate_type(s)));
  return out;
}

struct CensusOptions {
  int n_min = 1;
  int n_max = 14;
  unsigned threads = 1;
  int split_depth = 12;
};

struct CensusResult {
  std::vector<CensusRow> rows;
  std::vector<std::vector<Classification>> ets;  // parallel to rows
};

inline CensusResult census(const CensusOptions& opt) {
  if (opt.n_min < 1 || opt.n_min > opt.n_max || opt.n_max > kMaxCensusLength)
    throw Error("census: need 1 <= min <= max <= " + std::to_string(kMaxCensusLength));
  CensusResult res;
  for (int n = opt.n_min; n <= opt.n_max; ++n) {
    LengthResult lr = census_length(n, opt.threads, opt.split_depth);
    res.rows.push_back(lr.row);
    res.ets.push_back(std::move(lr.ets));
  }
  return res;
}

// Types of length m realizing two permutations, lexicographic.
inline std::vector<Classification> et_list(int m) {
  return census_length(m + 1).ets;
}

struct ClosureReport {
  bool all_pass = true;
  std::vector<TraceType> violations;  // inputs whose d-extension lost the second permutation
};

// Prepending d preserves the two-permutation property.
inline ClosureReport check_prepend_closure(const std::vector<Classification>& ets) {
  ClosureReport rep;
  for (const auto& cl : ets) {
    Classification ext = classify(prepend(cl.sigma, 'd'));
    if (ext.perm_count != 2) {
      rep.all_pass = false;
      rep.violations.push_back(cl.sigma);
    }
  }
  return rep;
}

struct CResidueReport {
  std::map<Int, int> by_c;          // residue c -> count
  std::map<Int, int> by_c_mod_729;  // the same residues folded mod 3^6
};

inline CResidueReport c_residue_report(const std::vector<Classification>& ets) {
  CResidueReport rep;
  for (const auto& cl : ets) {
    rep.by_c[cl.c] += 1;
    rep.by_c_mod_729[cl.c % 729] += 1;
  }
  return rep;
}

struct BruteForceCensus {
  std::map<int, std::set<Permutation>> by_length;
  std::vector<std::uint64_t> guard_exceeded;
};

// Simulation oracle: ranks every trace of length <= n_max starting at most at
// x_limit. Powers of two are skipped, longer traces abandoned early.
inline BruteForceCensus brute_force_census(int n_max, std::uint64_t x_limit,
                                           unsigned long guard = kDefaultGuard) {
  if (n_max < 1) throw Error("brute_force_census: n_max must be positive");
  BruteForceCensus out;
  std::vector<std::uint64_t> vals;
  vals.reserve(static_cast<std::size_t>(n_max) + 1);
  const std::uint64_t odd_cap = (~0ull - 1) / 3;
  for (std::uint64_t x = 1; x <= x_limit; ++x) {
    if (x > 1 && (x & (x - 1)) == 0) continue;
    vals.clear();
    std::uint64_t v = x;
    bool complete = false;
    for (unsigned long iter = 0;; ++iter) {
      if (iter >= guard) {
        out.guard_exceeded.push_back(x);
        break;
      }
      vals.push_back(v);
      if (vals.size() > static_cast<std::size_t>(n_max)) break;  // too long to matter
      if (v & 1) {
        assert(v <= odd_cap);
        v = 3 * v + 1;
      } else {
        v >>= 1;
      }
      if (v > 1 && (v & (v - 1)) == 0) {
        complete = true;
        break;
      }
    }
    if (!complete) continue;
    std::vector<int> idx(vals.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<int> ranks(vals.size());
    for (std::size_t r = 0; r < idx.size(); ++r) ranks[idx[r]] = static_cast<int>(r) + 1;
    out.by_length[static_cast<int>(vals.size())].insert(Permutation(std::move(ranks)));
  }
  return out;
}

}  // namespace collatz
