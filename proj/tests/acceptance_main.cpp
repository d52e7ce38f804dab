// Acceptance gate: ten gating criteria, one PASS/FAIL line each, plus a
// non-gating stretch table. Exit status reflects the gating criteria only.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "collatz/collatz.hpp"

using namespace collatz;

namespace {

struct Gate {
  int failed = 0;
};

double run_criterion(Gate& gate, int index, const std::string& name,
                     const std::function<bool(std::string&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2d %-28s %s  (%.2fs%s%s)\n", index, name.c_str(),
              ok ? "PASS" : "FAIL", secs, detail.empty() ? "" : "; ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++gate.failed;
  return secs;
}

unsigned worker_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 4;
}

TraceType random_type(std::mt19937& rng, int max_len) {
  int len = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
  TraceType t;
  for (int i = 0; i < len; ++i) {
    bool can_u = !t.empty() && t.front() == 'd';
    t = prepend(t, can_u && rng() % 2 ? 'u' : 'd');
  }
  return t;
}

}  // namespace

int main() {
  Gate gate;
  const unsigned threads = worker_threads();

  run_criterion(gate, 1, "fibonacci-regime", [&](std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    CensusOptions opt;
    opt.n_max = 14;
    opt.threads = threads;
    CensusResult res = census(opt);
    if (res.rows.size() != 14) return false;
    for (const auto& row : res.rows) {
      if (Int(static_cast<unsigned long>(row.total)) !=
          fibonacci(static_cast<unsigned>(row.length)))
        return false;
      if (row.excess != 0) return false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail = "within 10s budget";
    return secs < 10.0;
  });

  run_criterion(gate, 2, "excess-regime", [&](std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    CensusOptions opt;
    opt.n_min = 15;
    opt.n_max = 24;
    opt.threads = threads;
    CensusResult res = census(opt);
    if (res.rows.size() != 10) return false;
    for (const auto& row : res.rows) {
      const CensusRow& want = kKnownCensus[static_cast<std::size_t>(row.length - 1)];
      if (row.total != want.total || row.excess != want.excess) return false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail = "within 5min budget";
    return secs < 300.0;
  });

  run_criterion(gate, 3, "shortest-two-perm-type", [](std::string&) {
    Classification cl = classify(validate_type("uddudududduddd"));
    WitnessSchedule sch = witness_schedule(cl.sigma);
    return cl.perm_count == 2 && cl.c == 16 && cl.modulus == 729 && cl.a_first == 4 &&
           cl.a_first + sch.period == 490 &&
           cl.perm_first.str() == "3 12 7 2 10 5 13 8 15 11 6 14 9 4 1" &&
           cl.perm_asymptotic.str() == "4 12 7 2 10 5 13 8 15 11 6 14 9 3 1" &&
           cl.x_max > Rat(44) && cl.x_max < make_rat(Int(441), Int(10));
  });

  run_criterion(gate, 4, "worked-example-uddud", [](std::string&) {
    TraceType sigma = validate_type("uddud");
    Congruence g = congruence(sigma);
    if (!(g.c == 7 && g.modulus == 27)) return false;
    Int a = first_valid_witness(sigma);
    if (a != 16) return false;
    Int x = start_value(sigma, a);
    if (x != 19417) return false;
    Trace t = trace(x);
    return t.str() == "19417 58252 29126 14563 43690 21845" &&
           rank_permutation(t).str() == "2 6 4 1 5 3";
  });

  run_criterion(gate, 5, "coinciding-permutations", [](std::string&) {
    return collatz_perm(Int(12)) == collatz_perm(Int(908)) &&
           collatz_perm(Int(12)).str() == "5 3 1 4 2" && collatz_perm(Int(5)).str() == "1" &&
           collatz_perm(Int(21)).str() == "1" && collatz_perm(Int(85)).str() == "1";
  });

  run_criterion(gate, 6, "oracle-equivalence", [](std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    for (int m = 0; m <= 9; ++m)
      for (const auto& sigma : enumerate_types(m)) {
        Int a = first_valid_witness(sigma);
        Permutation geometric = permutation_at(suffix_lines(sigma), a);
        if (geometric != collatz_perm(start_value(sigma, a))) return false;
      }
    BruteForceCensus bf = brute_force_census(10, 1000000);
    for (int n = 1; n <= 10; ++n) {
      std::set<Permutation> analytic;
      for (const auto& sigma : enumerate_types(n - 1)) {
        Classification cl = classify(sigma);
        analytic.insert(cl.perm_first);
        analytic.insert(cl.perm_asymptotic);
      }
      if (Int(static_cast<unsigned long>(analytic.size())) !=
          fibonacci(static_cast<unsigned>(n)))
        return false;
      for (const auto& p : bf.by_length[n])
        if (!analytic.count(p)) return false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail = "within 2min budget";
    return secs < 120.0;
  });

  run_criterion(gate, 7, "witness-schedules", [](std::string&) {
    std::mt19937 rng(20260817);
    for (int i = 0; i < 200; ++i) {
      TraceType sigma = random_type(rng, 14);
      Congruence g = congruence(sigma);
      WitnessSchedule s = witness_schedule(sigma);
      if (s.period != 2 * pow3(g.k)) return false;
      for (unsigned long j = 0; j < 3; ++j)
        if (powm(Int(2), s.at(j), g.modulus) != g.c) return false;
      if (g.k <= 7) {
        for (Int a = 1; a < s.a0; ++a)
          if (powm(Int(2), a, g.modulus) == g.c) return false;
      }
    }
    return true;
  });

  run_criterion(gate, 8, "geometry-bounds", [](std::string&) {
    for (int m = 2; m <= 16; ++m)
      for (const auto& sigma : enumerate_types(m)) {
        if (max_intersection_abscissa(suffix_lines(sigma)) >
            Rat(pow3(sigma.u_count() + 1)))
          return false;
      }
    for (int m = 0; m <= 10; ++m)
      for (const auto& sigma : enumerate_types(m)) {
        LineFamily fam = suffix_lines(sigma);
        Rat xm = fam.size() >= 2 ? max_intersection_abscissa(fam) : Rat(0);
        WitnessSchedule s = witness_schedule(sigma);
        for (unsigned long j = 0; j < 2; ++j) {
          Int a = s.at(j);
          if (!validate_witness(sigma, a).valid) continue;
          if (Rat(pow2(a.get_ui())) > xm &&
              permutation_at(fam, a) != asymptotic_permutation(fam))
            return false;
        }
      }
    return true;
  });

  run_criterion(gate, 9, "d-prepend-closure", [&](std::string&) {
    for (int m = 14; m <= 22; ++m) {
      std::vector<Classification> ets = census_length(m + 1, threads).ets;
      ClosureReport rep = check_prepend_closure(ets);
      if (!rep.all_pass) return false;
    }
    return true;
  });

  run_criterion(gate, 10, "deterministic-output", [](std::string&) {
    CensusOptions solo;
    solo.n_min = 1;
    solo.n_max = 17;
    solo.threads = 1;
    CensusOptions multi = solo;
    multi.threads = 4;
    return census_csv(census(solo).rows) == census_csv(census(multi).rows) &&
           census_json(census(solo)) == census_json(census(multi));
  });

  std::printf("stretch (non-gating): lengths 25..32\n");
  for (int n = 25; n <= 32; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    LengthResult lr = census_length(n, threads);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const CensusRow& want = kKnownCensus[static_cast<std::size_t>(n - 1)];
    bool ok = lr.row.total == want.total && lr.row.excess == want.excess;
    std::printf("stretch %d: total %llu excess %llu %s (%.2fs)\n", n,
                static_cast<unsigned long long>(lr.row.total),
                static_cast<unsigned long long>(lr.row.excess),
                ok ? "matches" : "MISMATCH", secs);
    std::fflush(stdout);
  }

  if (gate.failed == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria failed\n", gate.failed);
  return 1;
}
