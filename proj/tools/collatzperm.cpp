// Command-line front end: traces, type reports, the census, SVG figures and a
// built-in verification suite.
//
// Exit codes: 0 success, 1 failed verify checks, 2 invalid input,
// 3 iteration guard exceeded, 4 unwritable output, 5 corrupt checkpoint.

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "collatz/collatz.hpp"

namespace {

using namespace collatz;

unsigned long guard_from_env() {
  const char* s = std::getenv("COLLATZ_GUARD");
  if (!s || !*s) return kDefaultGuard;
  char* end = nullptr;
  unsigned long v = std::strtoul(s, &end, 10);
  if (end == s || *end != '\0' || v == 0) return kDefaultGuard;
  return v;
}

Int parse_positive_int(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw Error("expected a positive integer, got \"" + s + "\"");
  Int v(s);
  if (v < 1) throw Error("expected a positive integer, got \"" + s + "\"");
  return v;
}

// Types are bare words over {u, d}; the empty type is spelled "-".
TraceType parse_type(const std::string& word) {
  return validate_type(word == "-" ? std::string_view() : std::string_view(word));
}

std::string type_str(const TraceType& sigma) {
  return sigma.empty() ? "-" : sigma.letters();
}

void write_text_output(const std::string& payload, const std::string& out_path,
                       const std::string& what) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path, std::ios::trunc);
  if (!f) throw UnwritableOutput("cannot write " + out_path);
  f << payload;
  if (!f.flush()) throw UnwritableOutput("cannot write " + out_path);
  std::cout << "wrote " << what << " to " << out_path << "\n";
}

void cmd_trace(const std::string& x_str) {
  Trace t = trace(parse_positive_int(x_str), guard_from_env());
  std::cout << "trace: " << t.str() << "\n";
  std::cout << "type: " << type_str(trace_type(t)) << "\n";
  std::cout << "perm: " << rank_permutation(t).str() << "\n";
}

void cmd_perm(const std::string& x_str) {
  std::cout << collatz_perm(parse_positive_int(x_str), guard_from_env()).str() << "\n";
}

void cmd_type_info(const std::string& word) {
  const TraceType sigma = parse_type(word);
  const Classification cl = classify(sigma);
  const WitnessSchedule sch = witness_schedule(sigma);
  const AffineForm form = sigma_to_affine(sigma);
  const LineFamily fam = suffix_lines(sigma);

  std::cout << "type: " << type_str(sigma) << "\n";
  std::cout << "form: " << form.str() << "\n";
  std::cout << "congruence: A = " << cl.c.get_str() << " (mod " << cl.modulus.get_str() << ")\n";
  std::cout << "schedule: a = " << sch.a0.get_str() << " + " << sch.period.get_str()
            << " j, j >= 0\n";
  std::cout << "first witness: a = " << cl.a_first.get_str() << "\n";

  if (cl.a_first <= 4096) {
    const Int A = pow2(cl.a_first.get_ui());
    std::cout << "start: " << form.value_at_int(A).get_str() << "\n";
    if (cl.a_first <= 256) {
      std::string vals;
      for (std::size_t i = 0; i < fam.size(); ++i) {
        if (i) vals += ' ';
        vals += fam.lines[i].value_at_int(A).get_str();
      }
      std::cout << "trace: " << vals << "\n";
    } else {
      std::cout << "trace: omitted (values too large)\n";
    }
  } else {
    std::cout << "start: omitted (witness exponent too large)\n";
  }

  if (fam.size() >= 2)
    std::cout << "x_max: " << rat_str(cl.x_max) << " (~" << detail::fmt6(cl.x_max.get_d())
              << ")\n";
  else
    std::cout << "x_max: none (single line)\n";
  std::cout << "crude bound: " << crude_abscissa_bound(sigma).get_str() << "\n";

  std::cout << "permutations: " << cl.perm_count << "\n";
  if (cl.perm_count == 1) {
    std::cout << "perm: " << cl.perm_first.str() << "\n";
  } else {
    std::cout << "perm at a = " << cl.a_first.get_str() << ": " << cl.perm_first.str() << "\n";
    std::cout << "perm at a = " << Int(cl.a_first + sch.period).get_str()
              << " and beyond: " << cl.perm_asymptotic.str() << "\n";
  }
}

void cmd_et_list(int m) {
  std::vector<Classification> ets = et_list(m);
  std::cout << "ETs of length " << m << ": " << ets.size() << "\n";
  for (const auto& cl : ets) {
    std::cout << cl.sigma.letters() << "  c = " << cl.c.get_str() << " (mod "
              << cl.modulus.get_str() << ")  a_first = " << cl.a_first.get_str()
              << "  first: " << cl.perm_first.str()
              << "  asymptotic: " << cl.perm_asymptotic.str() << "\n";
  }
}

struct CensusArgs {
  int n_min = 1;
  int n_max = 14;
  unsigned threads = 1;
  std::string format = "csv";
  std::string out;
  std::string checkpoint;
  bool resume = false;
};

void cmd_census(const CensusArgs& args) {
  if (args.n_min > args.n_max) throw Error("census: --min must not exceed --max");
  if (args.resume && args.checkpoint.empty())
    throw Error("census: --resume requires --checkpoint");

  CensusResult res;
  if (args.checkpoint.empty()) {
    CensusOptions opt;
    opt.n_min = args.n_min;
    opt.n_max = args.n_max;
    opt.threads = args.threads;
    res = census(opt);
  } else {
    if (!args.resume) std::remove(args.checkpoint.c_str());  // fresh run
    CheckpointedRunOptions opt;
    opt.census.n_min = args.n_min;
    opt.census.n_max = args.n_max;
    opt.census.threads = args.threads;
    opt.checkpoint_path = args.checkpoint;
    res = run_census_checkpointed(opt);
  }

  const std::string payload = args.format == "csv" ? census_csv(res.rows) : census_json(res);
  write_text_output(payload, args.out, "census (" + std::to_string(res.rows.size()) + " rows)");
}

void cmd_figure(const std::string& word, const std::vector<long>& witness_args,
                const std::string& out_path) {
  const TraceType sigma = parse_type(word);
  std::vector<Int> witnesses;
  witnesses.reserve(witness_args.size());
  for (long a : witness_args) witnesses.emplace_back(a);
  write_text_output(figure_svg(sigma, witnesses), out_path, "figure");
}

// --- verify ---------------------------------------------------------------

struct VerifyState {
  int passed = 0;
  int failed = 0;
};

void check(VerifyState& vs, const std::string& name, const std::function<bool()>& body) {
  bool ok = false;
  std::string detail;
  try {
    ok = body();
  } catch (const std::exception& e) {
    detail = e.what();
  }
  if (ok) {
    std::cout << "PASS " << name << "\n";
    ++vs.passed;
  } else {
    std::cout << "FAIL " << name << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    ++vs.failed;
  }
}

void verify_quick(VerifyState& vs) {
  check(vs, "trace-12", [] {
    Trace t = trace(12);
    return t.str() == "12 6 3 10 5" && trace_type(t).letters() == "ddud" &&
           rank_permutation(t).str() == "5 3 1 4 2";
  });
  check(vs, "perm-908", [] { return collatz_perm(908).str() == "5 3 1 4 2"; });
  check(vs, "perm-19417", [] { return collatz_perm(19417).str() == "2 6 4 1 5 3"; });
  check(vs, "rank-one-starts", [] {
    return collatz_perm(5).str() == "1" && collatz_perm(21).str() == "1" &&
           collatz_perm(85).str() == "1";
  });
  check(vs, "congruence-uddud", [] {
    TraceType sigma = validate_type("uddud");
    Congruence g = congruence(sigma);
    WitnessSchedule sch = witness_schedule(sigma);
    return g.c == 7 && g.modulus == 27 && sch.a0 == 16 && sch.period == 18 &&
           start_value(sigma, Int(16)) == 19417;
  });
  check(vs, "two-perm-type", [] {
    Classification cl = classify(validate_type("uddudududduddd"));
    WitnessSchedule sch = witness_schedule(cl.sigma);
    return cl.perm_count == 2 && cl.c == 16 && cl.modulus == 729 && cl.a_first == 4 &&
           cl.a_first + sch.period == 490 &&
           cl.perm_first.str() == "3 12 7 2 10 5 13 8 15 11 6 14 9 4 1" &&
           cl.perm_asymptotic.str() == "4 12 7 2 10 5 13 8 15 11 6 14 9 3 1" &&
           cl.x_max > Rat(44) && cl.x_max < make_rat(Int(441), Int(10));
  });
}

void verify_full(VerifyState& vs, unsigned threads) {
  check(vs, "census-fibonacci", [&] {
    CensusOptions opt;
    opt.n_max = 14;
    opt.threads = threads;
    CensusResult res = census(opt);
    for (const auto& row : res.rows) {
      if (Int(static_cast<unsigned long>(row.total)) != fibonacci(static_cast<unsigned>(row.length)))
        return false;
      if (row.excess != 0) return false;
    }
    return res.rows.size() == 14;
  });
  check(vs, "census-excess", [&] {
    CensusOptions opt;
    opt.n_min = 15;
    opt.n_max = 24;
    opt.threads = threads;
    CensusResult res = census(opt);
    for (const auto& row : res.rows) {
      const CensusRow& want = kKnownCensus[static_cast<std::size_t>(row.length - 1)];
      if (row.total != want.total || row.excess != want.excess) return false;
    }
    return res.rows.size() == 10;
  });
  check(vs, "witness-simulation-agreement", [] {
    for (int m = 0; m <= 9; ++m)
      for (const auto& sigma : enumerate_types(m)) {
        Classification cl = classify(sigma);
        Int x = start_value(sigma, cl.a_first);
        if (collatz_perm(x) != cl.perm_first) return false;
      }
    return true;
  });
  check(vs, "brute-force-subset", [] {
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
    return true;
  });
}

int cmd_verify(const std::string& level, unsigned threads) {
  VerifyState vs;
  verify_quick(vs);
  if (level == "full") verify_full(vs, threads);
  std::cout << vs.passed << " checks passed, " << vs.failed << " failed\n";
  return vs.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collatz permutations: traces, types, witnesses, census, figures"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string trace_x;
  auto* sc_trace = app.add_subcommand("trace", "Print trace, type and permutation of x");
  sc_trace->add_option("x", trace_x, "start value")->required();
  sc_trace->callback([&] { cmd_trace(trace_x); });

  std::string perm_x;
  auto* sc_perm = app.add_subcommand("perm", "Print the permutation of x");
  sc_perm->add_option("x", perm_x, "start value")->required();
  sc_perm->callback([&] { cmd_perm(perm_x); });

  std::string info_sigma;
  auto* sc_info = app.add_subcommand("type-info", "Report congruence, witnesses and permutations of a type");
  sc_info->add_option("sigma", info_sigma, "type word over {u,d}, or - for the empty type")
      ->required();
  sc_info->callback([&] { cmd_type_info(info_sigma); });

  int et_m = 0;
  auto* sc_et = app.add_subcommand("et-list", "List types of a given length realizing two permutations");
  sc_et->add_option("length", et_m, "type length")
      ->required()
      ->check(CLI::Range(0, kMaxCensusLength - 1));
  sc_et->callback([&] { cmd_et_list(et_m); });

  CensusArgs census_args;
  auto* sc_census = app.add_subcommand("census", "Count permutations per length");
  sc_census->add_option("--min", census_args.n_min, "smallest permutation length")
      ->check(CLI::Range(1, kMaxCensusLength));
  sc_census->add_option("--max", census_args.n_max, "largest permutation length")
      ->check(CLI::Range(1, kMaxCensusLength));
  sc_census->add_option("--format", census_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sc_census->add_option("--out", census_args.out, "write the table to this file");
  sc_census->add_option("--threads", census_args.threads, "worker threads");
  sc_census->add_option("--checkpoint", census_args.checkpoint, "checkpoint file");
  sc_census->add_flag("--resume", census_args.resume, "continue from the checkpoint file");
  sc_census->callback([&] { cmd_census(census_args); });

  std::string fig_sigma, fig_out;
  std::vector<long> fig_witnesses;
  auto* sc_fig = app.add_subcommand("figure", "Render the suffix-line family as SVG");
  sc_fig->add_option("sigma", fig_sigma, "type word over {u,d}, or - for the empty type")
      ->required();
  sc_fig->add_option("--witness", fig_witnesses, "witness exponents to mark");
  sc_fig->add_option("--out", fig_out, "write the SVG to this file");
  sc_fig->callback([&] { cmd_figure(fig_sigma, fig_witnesses, fig_out); });

  std::string verify_level = "quick";
  unsigned verify_threads = std::max(1u, std::thread::hardware_concurrency());
  auto* sc_verify = app.add_subcommand("verify", "Run the built-in check suite");
  sc_verify->add_option("--level", verify_level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  sc_verify->add_option("--threads", verify_threads, "worker threads for census checks");
  sc_verify->callback([&] { exit_code = cmd_verify(verify_level, verify_threads); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const collatz::CheckpointCorrupt& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const collatz::UnwritableOutput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const collatz::GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
