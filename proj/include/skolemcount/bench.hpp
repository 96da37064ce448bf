/*
 skolemcount

 Copyright (c) 2026, the skolemcount developers.

 Permission is hereby granted, free of charge, to any person obtaining a copy
 of this software and associated documentation files (the "Software"), to deal
 in the Software without restriction, including without limitation the rights
 to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
 copies of the Software, and to permit persons to whom the Software is
 furnished to do so, subject to the following conditions:

 The above copyright notice and this permission notice shall be included in
 all copies or substantial portions of the Software.

 THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
 IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
 FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
 AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
 LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
 OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
 THE SOFTWARE.
*/

#ifndef SKOLEMCOUNT_BENCH_HPP
#define SKOLEMCOUNT_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "dimacs.hpp"
#include "estimator.hpp"
#include "external.hpp"
#include "types.hpp"

namespace skolemcount {

// Batch driver: one row per (instance, mode), CSV out, instance-level
// parallelism. Failures are rows, never batch aborts.

enum class RunMode { Skolemfc, Baseline, Brute };
enum class RunStatus { Ok, Abort, Limit, Error };

inline const char* to_string(RunMode m)
{
  switch (m) {
    case RunMode::Skolemfc: return "skolemfc";
    case RunMode::Baseline: return "baseline";
    case RunMode::Brute: return "brute";
  }
  return "?";
}

inline const char* to_string(RunStatus s)
{
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Abort: return "abort";
    case RunStatus::Limit: return "limit";
    case RunStatus::Error: return "error";
  }
  return "?";
}

struct OracleChoice {
  enum class Kind { Exact, Hash, External };
  Kind counter = Kind::Exact;
  std::string counter_cmd;       // for Kind::External
  Kind sampler = Kind::Exact;
  std::string sampler_cmd;
};

inline OracleChoice parse_oracle_choice(const std::string& counter_spec,
                                        const std::string& sampler_spec)
{
  auto parse_one = [](const std::string& s, OracleChoice::Kind& kind,
                      std::string& cmd) {
    if (s == "exact") {
      kind = OracleChoice::Kind::Exact;
    } else if (s == "hash") {
      kind = OracleChoice::Kind::Hash;
    } else if (s.rfind("external:", 0) == 0) {
      kind = OracleChoice::Kind::External;
      cmd = s.substr(9);
      if (cmd.empty()) throw SpecError("empty external oracle command");
    } else {
      throw SpecError("unknown oracle '" + s +
                      "' (expected exact|hash|external:<cmd>)");
    }
  };
  OracleChoice c;
  parse_one(counter_spec, c.counter, c.counter_cmd);
  if (sampler_spec == "auto") {
    // follow the counter family; external counters keep the exact sampler
    c.sampler = c.counter == OracleChoice::Kind::Hash
                    ? OracleChoice::Kind::Hash
                    : OracleChoice::Kind::Exact;
  } else {
    parse_one(sampler_spec, c.sampler, c.sampler_cmd);
  }
  return c;
}

inline std::unique_ptr<CountingOracle> make_counter(const OracleChoice& c,
                                                    SolverConfig cfg = {})
{
  switch (c.counter) {
    case OracleChoice::Kind::Exact:
      return std::make_unique<ExactCountingOracle>(cfg);
    case OracleChoice::Kind::Hash:
      return std::make_unique<HashCountingOracle>(cfg);
    case OracleChoice::Kind::External:
      return std::make_unique<ExternalCountingOracle>(c.counter_cmd);
  }
  return nullptr;
}

inline std::unique_ptr<SamplingOracle> make_sampler(const OracleChoice& c,
                                                    SolverConfig cfg = {})
{
  switch (c.sampler) {
    case OracleChoice::Kind::Exact:
      return std::make_unique<ExactSamplingOracle>(cfg);
    case OracleChoice::Kind::Hash:
      return std::make_unique<HashSamplingOracle>(cfg);
    case OracleChoice::Kind::External:
      return std::make_unique<ExternalSamplingOracle>(c.sampler_cmd);
  }
  return nullptr;
}

struct RunLimits {
  uint64_t max_sat_calls = 0;  // 0 = unlimited
  double timeout_s = 0;        // 0 = unlimited
  uint64_t enum_cap = 1ULL << 20;
};

struct RunRecord {
  std::string instance;
  RunMode mode = RunMode::Skolemfc;
  double epsilon = 0.8;
  double delta = 0.4;
  uint64_t seed = 0;
  RunStatus status = RunStatus::Error;
  std::optional<LogCount> estimate;
  RunStats stats;
  std::string message;
};

/// Run one mode on an already-parsed specification.
inline RunRecord run_specification(const Specification& spec,
                                   std::string instance_name, RunMode mode,
                                   double epsilon, double delta,
                                   uint64_t seed, const OracleChoice& oracles,
                                   const RunLimits& limits)
{
  RunRecord rec;
  rec.instance = std::move(instance_name);
  rec.mode = mode;
  rec.epsilon = epsilon;
  rec.delta = delta;
  rec.seed = seed;

  Budget budget = Budget::with_limits(limits.max_sat_calls, limits.timeout_s);
  try {
    switch (mode) {
      case RunMode::Skolemfc: {
        auto counter = make_counter(oracles);
        auto sampler = make_sampler(oracles);
        EstimateResult r =
            skolemfc(spec, epsilon, delta, *counter, *sampler, seed, budget);
        rec.stats = r.stats;
        if (r.aborted) {
          rec.status = RunStatus::Abort;
          rec.message = r.stats.abort_reason.value_or("abort");
        } else {
          rec.status = RunStatus::Ok;
          rec.estimate = r.estimate;
        }
        break;
      }
      case RunMode::Baseline: {
        auto start = std::chrono::steady_clock::now();
        BaselineResult r = baseline(spec, budget, limits.enum_cap);
        rec.stats = r.stats;
        rec.status = RunStatus::Ok;
        rec.estimate = r.estimate;
        (void)start;
        break;
      }
      case RunMode::Brute: {
        auto start = std::chrono::steady_clock::now();
        mpz_class count = brute_force_skolem_count(spec);
        rec.status = RunStatus::Ok;
        rec.estimate = LogCount::from_exact(std::move(count));
        rec.stats.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        break;
      }
    }
  } catch (const ResourceLimitError& e) {
    rec.status = RunStatus::Limit;
    rec.message = e.what();
    rec.stats.sat_calls = e.sat_calls;
  } catch (const std::exception& e) {
    rec.status = RunStatus::Error;
    rec.message = e.what();
  }
  return rec;
}

/// Parse a specification file by extension: `.qdimacs` et al. use the
/// quantifier-prefix reader, everything else the annotated reader.
inline Specification load_specification(const std::filesystem::path& path,
                                        std::vector<std::string>* warnings =
                                            nullptr)
{
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::string ext = path.extension().string();
  if (ext == ".cnf" || ext == ".dimacs")
    return parse_dimacs_annotated(in, warnings);
  return parse_qdimacs(in, warnings);
}

inline RunRecord run_instance_file(const std::filesystem::path& path,
                                   RunMode mode, double epsilon, double delta,
                                   uint64_t seed, const OracleChoice& oracles,
                                   const RunLimits& limits)
{
  try {
    Specification spec = load_specification(path);
    std::vector<std::string> diags = validate(spec);
    if (!diags.empty()) {
      RunRecord rec;
      rec.instance = path.filename().string();
      rec.mode = mode;
      rec.seed = seed;
      rec.status = RunStatus::Error;
      rec.message = diags.front();
      return rec;
    }
    return run_specification(spec, path.filename().string(), mode, epsilon,
                             delta, seed, oracles, limits);
  } catch (const std::exception& e) {
    RunRecord rec;
    rec.instance = path.filename().string();
    rec.mode = mode;
    rec.seed = seed;
    rec.status = RunStatus::Error;
    rec.message = e.what();
    return rec;
  }
}

// ---------------------------------------------------------------------------
// CSV output (RFC 4180; commas and quotes in instance names get quoted)

inline std::string csv_escape(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void write_csv_header(std::ostream& out)
{
  out << "instance,mode,status,estimate_ln,estimate_log2,t,sat_calls,"
         "count_calls,sample_calls,wall_time_s,seed\r\n";
}

inline void write_csv_row(std::ostream& out, const RunRecord& rec)
{
  char num[64];
  out << csv_escape(rec.instance) << ',' << to_string(rec.mode) << ','
      << to_string(rec.status) << ',';
  if (rec.estimate) {
    std::snprintf(num, sizeof(num), "%.10g", rec.estimate->ln());
    out << num << ',';
    std::snprintf(num, sizeof(num), "%.10g", rec.estimate->log2());
    out << num << ',';
  } else {
    out << ",,";
  }
  out << rec.stats.iterations << ',' << rec.stats.sat_calls << ','
      << rec.stats.count_calls << ',' << rec.stats.sample_calls << ',';
  std::snprintf(num, sizeof(num), "%.3f", rec.stats.wall_time_s);
  out << num << ',' << rec.seed << "\r\n";
}

/// Run every instance in `dir` under each requested mode. Records are
/// produced in (sorted instance, mode) order regardless of the worker
/// count, so reruns differ only in the wall_time column.
inline std::vector<RunRecord> bench_directory(
    const std::filesystem::path& dir, const std::vector<RunMode>& modes,
    double epsilon, double delta, uint64_t seed, const OracleChoice& oracles,
    const RunLimits& limits, unsigned jobs = 1)
{
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    if (ext == ".qdimacs" || ext == ".cnf" || ext == ".dimacs" ||
        ext == ".qcnf")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  struct Task {
    size_t index;
    std::filesystem::path path;
    RunMode mode;
  };
  std::vector<Task> tasks;
  for (size_t i = 0; i < files.size(); i++)
    for (RunMode m : modes) tasks.push_back({tasks.size(), files[i], m});

  std::vector<RunRecord> records(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      records[tasks[i].index] =
          run_instance_file(tasks[i].path, tasks[i].mode, epsilon, delta,
                            seed, oracles, limits);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; j++) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

}  // namespace skolemcount

#endif
