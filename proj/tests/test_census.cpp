#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "collatz/census.hpp"
#include "collatz/reference_data.hpp"

using namespace collatz;

TEST_CASE("fast prepend state equals the from-scratch computation") {
  for (int m = 0; m <= 12; ++m)
    for (const auto& sigma : enumerate_types(m)) {
      detail::FastState st = detail::fast_state_of(sigma.letters());
      AffineForm f = sigma_to_affine(sigma);
      Congruence g = congruence(sigma);
      WitnessSchedule s = witness_schedule(sigma);
      CHECK(st.len == m);
      CHECK(st.p == f.p);
      CHECK(st.k == g.k);
      CHECK(Int(static_cast<unsigned long>(st.modulus)) == g.modulus);
      CHECK(Int(static_cast<unsigned long>(st.c)) == g.c);
      CHECK(Int(static_cast<unsigned long>(st.a0)) == s.a0);
      CHECK(Int(static_cast<unsigned long>(st.ord)) == s.period);
      CHECK(Int(static_cast<unsigned long>(st.b)) == f.b % Int(static_cast<unsigned long>(detail::kP18)));
      // inv2p really is the inverse of 2^p
      Int p18(static_cast<unsigned long>(detail::kP18));
      CHECK(Int(static_cast<unsigned long>(st.inv2p)) * powm(Int(2), Int(f.p), p18) % p18 == 1);
      if (m > 0) CHECK(st.first == sigma.front());
    }
}

TEST_CASE("fast permutation count equals full classification") {
  for (int m = 0; m <= 15; ++m)
    for (const auto& sigma : enumerate_types(m)) {
      detail::FastState st = detail::fast_state_of(sigma.letters());
      CHECK(detail::fast_perm_count(st, sigma.letters()) == classify(sigma).perm_count);
    }
}

TEST_CASE("census rows in the Fibonacci regime") {
  CensusOptions opt;
  opt.n_max = 14;
  CensusResult res = census(opt);
  REQUIRE(res.rows.size() == 14);
  for (int n = 1; n <= 14; ++n) {
    CHECK(res.rows[static_cast<std::size_t>(n - 1)].length == n);
    CHECK(Int(static_cast<unsigned long>(res.rows[static_cast<std::size_t>(n - 1)].total)) ==
          fibonacci(static_cast<unsigned>(n)));
    CHECK(res.rows[static_cast<std::size_t>(n - 1)].excess == 0);
    CHECK(res.ets[static_cast<std::size_t>(n - 1)].empty());
  }
}

TEST_CASE("census rows at the start of the excess regime") {
  for (int n : {15, 16, 17, 18}) {
    LengthResult lr = census_length(n);
    const CensusRow& want = kKnownCensus[static_cast<std::size_t>(n - 1)];
    CHECK(lr.row.total == want.total);
    CHECK(lr.row.excess == want.excess);
    CHECK(lr.ets.size() == want.excess);
    // structural identity: total minus excess is the type count
    CHECK(Int(static_cast<unsigned long>(lr.row.total - lr.row.excess)) ==
          fibonacci(static_cast<unsigned>(n)));
  }
}

TEST_CASE("census bounds are enforced") {
  CHECK_THROWS_AS(census_length(0), Error);
  CHECK_THROWS_AS(census_length(kMaxCensusLength + 1), Error);
  CensusOptions bad;
  bad.n_min = 5;
  bad.n_max = 4;
  CHECK_THROWS_AS(census(bad), Error);
}

TEST_CASE("census is deterministic across thread counts") {
  LengthResult a = census_length(16, 1);
  LengthResult b = census_length(16, 4);
  CHECK(a.row.total == b.row.total);
  CHECK(a.row.excess == b.row.excess);
  REQUIRE(a.ets.size() == b.ets.size());
  for (std::size_t i = 0; i < a.ets.size(); ++i) {
    CHECK(a.ets[i].sigma == b.ets[i].sigma);
    CHECK(a.ets[i].perm_first == b.ets[i].perm_first);
  }
  // split depth below, at, and above the type length must agree too
  for (int depth : {2, 15, 20}) {
    LengthResult c = census_length(16, 3, depth);
    CHECK(c.row.total == a.row.total);
    CHECK(c.row.excess == a.row.excess);
  }
}

TEST_CASE("et_list pinpoints the shortest two-permutation type") {
  CHECK(et_list(13).empty());

  std::vector<Classification> ets14 = et_list(14);
  REQUIRE(ets14.size() == 1);
  CHECK(ets14[0].sigma.letters() == "uddudududduddd");
  CHECK(ets14[0].perm_count == 2);

  std::vector<Classification> ets15 = et_list(15);
  REQUIRE(ets15.size() == 2);
  bool has_prepended = false;
  for (const auto& cl : ets15) {
    CHECK(cl.perm_count == 2);
    CHECK(cl.sigma.size() == 15);
    if (cl.sigma.letters() == "duddudududduddd") has_prepended = true;
  }
  CHECK(has_prepended);
  // lexicographic order
  CHECK(ets15[0].sigma.letters() < ets15[1].sigma.letters());
}

TEST_CASE("d-prepend closure holds on computed ET lists") {
  ClosureReport vacuous = check_prepend_closure({});
  CHECK(vacuous.all_pass);
  CHECK(vacuous.violations.empty());

  for (int m : {14, 15, 16}) {
    ClosureReport rep = check_prepend_closure(et_list(m));
    CHECK(rep.all_pass);
    CHECK(rep.violations.empty());
  }
}

TEST_CASE("c residue tabulation") {
  CResidueReport empty = c_residue_report({});
  CHECK(empty.by_c.empty());
  CHECK(empty.by_c_mod_729.empty());

  CResidueReport r14 = c_residue_report(et_list(14));
  REQUIRE(r14.by_c.size() == 1);
  CHECK(r14.by_c.begin()->first == 16);
  CHECK(r14.by_c.begin()->second == 1);
  CHECK(r14.by_c_mod_729.begin()->first == 16);
}

TEST_CASE("brute force census: quoted contents") {
  BruteForceCensus small = brute_force_census(5, 10000);
  std::vector<int> want{5, 3, 1, 4, 2};
  bool found = false;
  for (const auto& p : small.by_length[5])
    if (p.ranks == want) found = true;
  CHECK(found);

  BruteForceCensus tiny = brute_force_census(1, 100);
  REQUIRE(tiny.by_length[1].size() == 1);
  CHECK(tiny.by_length[1].begin()->str() == "1");

  CHECK_THROWS_AS(brute_force_census(0, 100), Error);
}

TEST_CASE("brute force census matches the analytic counts where it can") {
  BruteForceCensus bf = brute_force_census(7, 1000000);
  CHECK(bf.guard_exceeded.empty());

  std::vector<std::size_t> sizes;
  for (int n = 1; n <= 7; ++n) sizes.push_back(bf.by_length[n].size());
  // lengths 1..6 are saturated at this limit; length 7 misses exactly the
  // type whose least start value is 26512143
  CHECK(sizes == std::vector<std::size_t>{1, 1, 2, 3, 5, 8, 12});

  std::set<Permutation> analytic7;
  for (const auto& sigma : enumerate_types(6)) {
    Classification cl = classify(sigma);
    analytic7.insert(cl.perm_first);
    analytic7.insert(cl.perm_asymptotic);
  }
  REQUIRE(analytic7.size() == 13);
  std::set<Permutation> missing;
  for (const auto& p : analytic7)
    if (!bf.by_length[7].count(p)) missing.insert(p);
  REQUIRE(missing.size() == 1);
  CHECK(*missing.begin() == classify(validate_type("ududud")).perm_first);

  // everything the simulation finds is predicted analytically
  for (int n = 1; n <= 7; ++n) {
    std::set<Permutation> analytic;
    for (const auto& sigma : enumerate_types(n - 1)) {
      Classification cl = classify(sigma);
      analytic.insert(cl.perm_first);
      analytic.insert(cl.perm_asymptotic);
    }
    for (const auto& p : bf.by_length[n]) CHECK(analytic.count(p) == 1);
  }
}
