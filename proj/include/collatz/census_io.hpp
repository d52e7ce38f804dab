#pragma once

// Census serialization: CSV and JSON renderings plus a resumable runner that
// checkpoints after every completed length and, inside a length, after every
// merged block of subtrees.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collatz/census.hpp"
#include "collatz/errors.hpp"

namespace collatz {

inline std::string census_csv(const std::vector<CensusRow>& rows) {
  std::ostringstream os;
  os << "length,total,excess\n";
  for (const auto& r : rows) os << r.length << ',' << r.total << ',' << r.excess << '\n';
  return os.str();
}

namespace detail {

inline nlohmann::ordered_json classification_json(const Classification& cl) {
  nlohmann::ordered_json j;
  j["sigma"] = cl.sigma.letters();
  j["c"] = cl.c.get_str();
  j["modulus"] = cl.modulus.get_str();
  j["a_first"] = cl.a_first.get_str();
  j["perm_first"] = cl.perm_first.ranks;
  j["perm_asymptotic"] = cl.perm_asymptotic.ranks;
  return j;
}

}  // namespace detail

inline std::string census_json(const CensusResult& res) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    nlohmann::ordered_json row;
    row["length"] = res.rows[i].length;
    row["total"] = res.rows[i].total;
    row["excess"] = res.rows[i].excess;
    nlohmann::ordered_json ets = nlohmann::ordered_json::array();
    for (const auto& cl : res.ets[i]) ets.push_back(detail::classification_json(cl));
    row["ets"] = ets;
    rows.push_back(row);
  }
  nlohmann::ordered_json top;
  top["rows"] = rows;
  return top.dump(2) + "\n";
}

// Resume state: rows for every finished length, plus an optional cursor into
// the length being processed (count of merged subtrees and partial tallies).
struct Checkpoint {
  int version = 1;
  int n_min = 1;
  int n_max = 1;
  std::vector<CensusRow> rows;
  std::vector<std::vector<std::string>> row_ets;  // type words, parallel to rows
  int cursor_length = 0;                          // 0 = no partial length
  int cursor_subtrees = 0;
  std::uint64_t partial_total = 0;
  std::vector<std::string> partial_ets;
};

inline std::string checkpoint_json(const Checkpoint& cp) {
  nlohmann::ordered_json j;
  j["version"] = cp.version;
  j["n_min"] = cp.n_min;
  j["n_max"] = cp.n_max;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < cp.rows.size(); ++i) {
    nlohmann::ordered_json row;
    row["length"] = cp.rows[i].length;
    row["total"] = cp.rows[i].total;
    row["excess"] = cp.rows[i].excess;
    row["ets"] = cp.row_ets[i];
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["cursor_length"] = cp.cursor_length;
  j["cursor_subtrees"] = cp.cursor_subtrees;
  j["partial_total"] = cp.partial_total;
  j["partial_ets"] = cp.partial_ets;
  return j.dump(2) + "\n";
}

inline Checkpoint parse_checkpoint(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointCorrupt(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  Checkpoint cp;
  try {
    cp.version = j.at("version").get<int>();
    if (cp.version != 1)
      throw CheckpointCorrupt("checkpoint version " + std::to_string(cp.version) +
                              " is not supported");
    cp.n_min = j.at("n_min").get<int>();
    cp.n_max = j.at("n_max").get<int>();
    for (const auto& row : j.at("rows")) {
      CensusRow r;
      r.length = row.at("length").get<int>();
      r.total = row.at("total").get<std::uint64_t>();
      r.excess = row.at("excess").get<std::uint64_t>();
      cp.rows.push_back(r);
      cp.row_ets.push_back(row.at("ets").get<std::vector<std::string>>());
    }
    cp.cursor_length = j.at("cursor_length").get<int>();
    cp.cursor_subtrees = j.at("cursor_subtrees").get<int>();
    cp.partial_total = j.at("partial_total").get<std::uint64_t>();
    cp.partial_ets = j.at("partial_ets").get<std::vector<std::string>>();
  } catch (const CheckpointCorrupt&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointCorrupt(std::string("checkpoint is missing fields: ") + e.what());
  }
  if (cp.n_min < 1 || cp.n_min > cp.n_max || cp.n_max > kMaxCensusLength)
    throw CheckpointCorrupt("checkpoint range is out of bounds");
  int expect = cp.n_min;
  for (const auto& r : cp.rows) {
    if (r.length != expect++)
      throw CheckpointCorrupt("checkpoint rows are not consecutive from n_min");
  }
  if (expect - 1 > cp.n_max) throw CheckpointCorrupt("checkpoint has rows past n_max");
  if (cp.cursor_length != 0 &&
      (cp.cursor_length != expect || cp.cursor_length > cp.n_max || cp.cursor_subtrees < 0))
    throw CheckpointCorrupt("checkpoint cursor does not follow its rows");
  for (std::size_t i = 0; i < cp.rows.size(); ++i)
    if (cp.row_ets[i].size() != cp.rows[i].excess)
      throw CheckpointCorrupt("checkpoint row ET list disagrees with its excess");
  return cp;
}

inline Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointCorrupt("cannot read checkpoint file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_checkpoint(buf.str());
}

inline void save_checkpoint(const Checkpoint& cp, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw UnwritableOutput("cannot write checkpoint file " + tmp);
    out << checkpoint_json(cp);
    if (!out.flush()) throw UnwritableOutput("cannot write checkpoint file " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw UnwritableOutput("cannot move checkpoint into place at " + path);
}

struct CheckpointedRunOptions {
  CensusOptions census;
  std::string checkpoint_path;       // empty = no checkpointing
  int checkpoint_every_subtrees = 16;
  int stop_after_lengths = 0;        // test hook: abandon the run early
  int stop_after_subtrees = 0;       // test hook: abandon mid-length
};

// Runs the census range, persisting progress; an interrupted run resumes from
// the last checkpoint without recounting finished subtrees.
inline CensusResult run_census_checkpointed(const CheckpointedRunOptions& opt) {
  const CensusOptions& co = opt.census;
  if (co.n_min < 1 || co.n_min > co.n_max || co.n_max > kMaxCensusLength)
    throw Error("census: need 1 <= min <= max <= " + std::to_string(kMaxCensusLength));

  Checkpoint cp;
  cp.n_min = co.n_min;
  cp.n_max = co.n_max;
  bool resumed = false;
  if (!opt.checkpoint_path.empty()) {
    std::ifstream probe(opt.checkpoint_path);
    if (probe.good()) {
      cp = load_checkpoint(opt.checkpoint_path);
      if (cp.n_min != co.n_min || cp.n_max != co.n_max)
        throw CheckpointCorrupt("checkpoint was written for a different census range");
      resumed = true;
    }
  }
  (void)resumed;

  CensusResult res;
  for (std::size_t i = 0; i < cp.rows.size(); ++i) {
    res.rows.push_back(cp.rows[i]);
    std::vector<Classification> ets;
    ets.reserve(cp.row_ets[i].size());
    for (const auto& s : cp.row_ets[i]) ets.push_back(classify(validate_type(s)));
    res.ets.push_back(std::move(ets));
  }

  int lengths_done_now = 0;
  int start = co.n_min + static_cast<int>(cp.rows.size());
  for (int n = start; n <= co.n_max; ++n) {
    int skip = 0;
    std::uint64_t carry_total = 0;
    std::vector<std::string> carry_ets;
    if (cp.cursor_length == n) {
      skip = cp.cursor_subtrees;
      carry_total = cp.partial_total;
      carry_ets = cp.partial_ets;
    }

    int last_saved = skip;
    bool stopped_mid_length = false;
    SubtreeProgress on_prefix;
    if (!opt.checkpoint_path.empty() || opt.stop_after_subtrees > 0) {
      on_prefix = [&](int done, std::uint64_t total, const std::vector<std::string>& ets) {
        bool due = opt.checkpoint_every_subtrees > 0 &&
                   done - last_saved >= opt.checkpoint_every_subtrees;
        bool stopping = opt.stop_after_subtrees > 0 && done - skip >= opt.stop_after_subtrees;
        if ((due || stopping) && !opt.checkpoint_path.empty()) {
          cp.cursor_length = n;
          cp.cursor_subtrees = done;
          cp.partial_total = total;
          cp.partial_ets = ets;
          save_checkpoint(cp, opt.checkpoint_path);
          last_saved = done;
        }
        if (stopping) {
          stopped_mid_length = true;
          throw Error("census run stopped for test");
        }
      };
    }

    LengthResult lr;
    try {
      // Mid-length stops only come from the test hook; threads=1 there keeps
      // the thrown stop from racing the merge loop.
      unsigned threads = opt.stop_after_subtrees > 0 ? 1 : co.threads;
      lr = census_length(n, threads, co.split_depth, skip, carry_total, carry_ets, on_prefix);
    } catch (const Error&) {
      if (stopped_mid_length) return res;
      throw;
    }

    res.rows.push_back(lr.row);
    res.ets.push_back(lr.ets);
    cp.rows.push_back(lr.row);
    std::vector<std::string> words;
    words.reserve(lr.ets.size());
    for (const auto& cl : lr.ets) words.push_back(cl.sigma.letters());
    cp.row_ets.push_back(std::move(words));
    cp.cursor_length = 0;
    cp.cursor_subtrees = 0;
    cp.partial_total = 0;
    cp.partial_ets.clear();
    if (!opt.checkpoint_path.empty()) save_checkpoint(cp, opt.checkpoint_path);

    ++lengths_done_now;
    if (opt.stop_after_lengths > 0 && lengths_done_now >= opt.stop_after_lengths && n < co.n_max)
      return res;
  }
  return res;
}

}  // namespace collatz
