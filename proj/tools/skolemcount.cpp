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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "skolemcount/bench.hpp"
#include "skolemcount/dimacs.hpp"
#include "skolemcount/estimator.hpp"
#include "skolemcount/external.hpp"
#include "skolemcount/gen.hpp"
#include "skolemcount/sampling.hpp"

using namespace skolemcount;

namespace {

// Exit codes shared by count/baseline/brute:
//   0 estimate produced, 1 parse/usage failure, 2 abort, 3 resource limit.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAbort = 2;
constexpr int kExitLimit = 3;

std::string read_input(const std::string& path)
{
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_record(const RunRecord& rec, const std::string& log_base)
{
  std::cout << "c instance " << rec.instance << "\n";
  std::cout << "c mode " << to_string(rec.mode) << " epsilon " << rec.epsilon
            << " delta " << rec.delta << " seed " << rec.seed << "\n";
  std::cout << "c t " << rec.stats.iterations << " sat_calls "
            << rec.stats.sat_calls << " count_calls "
            << rec.stats.count_calls << " sample_calls "
            << rec.stats.sample_calls << " clamped "
            << rec.stats.clamped_iterations << "\n";
  std::cout << "c wall_time_s " << rec.stats.wall_time_s << "\n";
  std::cout << "c status " << to_string(rec.status) << "\n";
  if (!rec.message.empty()) std::cout << "c note " << rec.message << "\n";
  if (rec.estimate) {
    if (rec.estimate->exact)
      std::cout << "c exact_count " << rec.estimate->exact->get_str()
                << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", rec.estimate->ln());
    std::cout << "c estimate_ln " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.10g", rec.estimate->log2());
    std::cout << "c estimate_log2 " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.10g",
                  log_base == "2" ? rec.estimate->log2()
                                  : rec.estimate->ln());
    std::cout << "s " << buf << "\n";
  }
}

int status_to_exit(RunStatus s)
{
  switch (s) {
    case RunStatus::Ok: return kExitOk;
    case RunStatus::Abort: return kExitAbort;
    case RunStatus::Limit: return kExitLimit;
    case RunStatus::Error: return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Skolem function counting toolkit"};
  app.require_subcommand(1);

  std::string path, output, oracle_spec = "exact", sampler_spec = "auto";
  std::string log_base = "e";
  double epsilon = 0.8, delta = 0.4;
  uint64_t seed = 1;
  uint64_t max_sat_calls = 0;
  double timeout_s = 0;
  uint64_t enum_cap = 1ULL << 20;
  unsigned jobs = 1;
  std::vector<std::string> mode_names{"skolemfc", "baseline"};

  auto add_common = [&](CLI::App* cmd, bool with_oracle) {
    cmd->add_option("file", path, "instance file (QDIMACS or annotated CNF)")
        ->required();
    cmd->add_option("--max-sat-calls", max_sat_calls,
                    "cap on SAT-engine invocations (0 = unlimited)");
    cmd->add_option("--timeout-s", timeout_s,
                    "per-run wall-clock limit in seconds (0 = unlimited)");
    if (with_oracle) {
      cmd->add_option("--epsilon", epsilon, "tolerance, 0 < epsilon <= 2")
          ->capture_default_str();
      cmd->add_option("--delta", delta, "confidence, 0 < delta < 1")
          ->capture_default_str();
      cmd->add_option("--seed", seed, "random seed")->capture_default_str();
      cmd->add_option("--oracle", oracle_spec,
                      "counting oracle: exact|hash|external:<cmd>")
          ->capture_default_str();
      cmd->add_option("--sampler", sampler_spec,
                      "sampling oracle: auto|exact|hash|external:<cmd>")
          ->capture_default_str();
      cmd->add_option("--log-base", log_base, "headline log base: e|2")
          ->check(CLI::IsMember({"e", "2"}))
          ->capture_default_str();
    }
  };

  CLI::App* cmd_count =
      app.add_subcommand("count", "randomized (epsilon,delta) estimate");
  add_common(cmd_count, true);

  CLI::App* cmd_baseline =
      app.add_subcommand("baseline", "exhaustive per-input exact count");
  add_common(cmd_baseline, false);
  cmd_baseline->add_option("--enum-cap", enum_cap,
                           "cap on enumerated projected models");

  CLI::App* cmd_brute = app.add_subcommand(
      "brute", "truth-table reference count (tiny inputs only)");
  add_common(cmd_brute, false);

  CLI::App* cmd_bench = app.add_subcommand(
      "bench", "run a directory of instances and emit one CSV row per run");
  cmd_bench->add_option("dir", path, "directory of instance files")
      ->required();
  cmd_bench->add_option("--mode", mode_names,
                        "modes to run: skolemfc baseline brute")
      ->capture_default_str();
  cmd_bench->add_option("--output,-o", output, "CSV output path (default stdout)");
  cmd_bench->add_option("--epsilon", epsilon, "")->capture_default_str();
  cmd_bench->add_option("--delta", delta, "")->capture_default_str();
  cmd_bench->add_option("--seed", seed, "")->capture_default_str();
  cmd_bench->add_option("--oracle", oracle_spec, "")->capture_default_str();
  cmd_bench->add_option("--sampler", sampler_spec, "")->capture_default_str();
  cmd_bench->add_option("--max-sat-calls", max_sat_calls, "");
  cmd_bench->add_option("--timeout-s", timeout_s, "per-instance timeout");
  cmd_bench->add_option("--enum-cap", enum_cap, "");
  cmd_bench->add_option("--jobs,-j", jobs, "parallel workers")
      ->capture_default_str();

  std::string family = "factorization";
  uint32_t width = 5, gen_n = 4, gen_m = 4, gen_clauses = 8, gen_width = 3;
  CLI::App* cmd_gen = app.add_subcommand(
      "gen", "emit a built-in instance family as QDIMACS");
  cmd_gen->add_option("family", family,
                      "factorization|xor|unsat|wide|random")
      ->required();
  cmd_gen->add_option("--out,-o", output, "output path (default stdout)");
  cmd_gen->add_option("--width", width, "bit width (factorization)");
  cmd_gen->add_option("--inputs", gen_n, "input count (wide/random)");
  cmd_gen->add_option("--outputs", gen_m, "output count (wide/random)");
  cmd_gen->add_option("--clauses", gen_clauses, "clause count (random)");
  cmd_gen->add_option("--clause-width", gen_width, "max clause width (random)");
  cmd_gen->add_option("--seed", seed, "generator seed (random)");

  // Oracle-protocol servers, usable as external tools over stdin/stdout.
  std::string in_path = "-";
  bool exact_mode = false;
  uint32_t num_samples = 1;
  CLI::App* cmd_solve = app.add_subcommand(
      "solve-dimacs", "read DIMACS, print s/v lines, exit 10=SAT 20=UNSAT");
  cmd_solve->add_option("file", in_path, "input (default stdin)");

  CLI::App* cmd_cproj = app.add_subcommand(
      "count-proj",
      "read DIMACS with `c ind`, print a single numeric estimate");
  cmd_cproj->add_option("file", in_path, "input (default stdin)");
  cmd_cproj->add_flag("--exact", exact_mode, "count exactly");
  cmd_cproj->add_option("--epsilon", epsilon, "")->capture_default_str();
  cmd_cproj->add_option("--delta", delta, "")->capture_default_str();
  cmd_cproj->add_option("--seed", seed, "")->capture_default_str();

  CLI::App* cmd_sproj = app.add_subcommand(
      "sample-proj",
      "read DIMACS with `c ind`, print projected models one per line");
  cmd_sproj->add_option("file", in_path, "input (default stdin)");
  cmd_sproj->add_option("-n,--num", num_samples, "number of samples")
      ->capture_default_str();
  cmd_sproj->add_option("--epsilon", epsilon, "")->capture_default_str();
  cmd_sproj->add_option("--seed", seed, "")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    RunLimits limits;
    limits.max_sat_calls = max_sat_calls;
    limits.timeout_s = timeout_s;
    limits.enum_cap = enum_cap;

    if (app.got_subcommand(cmd_count) || app.got_subcommand(cmd_baseline) ||
        app.got_subcommand(cmd_brute)) {
      RunMode mode = app.got_subcommand(cmd_count)     ? RunMode::Skolemfc
                     : app.got_subcommand(cmd_baseline) ? RunMode::Baseline
                                                        : RunMode::Brute;
      OracleChoice oracles = parse_oracle_choice(oracle_spec, sampler_spec);
      std::vector<std::string> warnings;
      Specification spec =
          load_specification(std::filesystem::path(path), &warnings);
      for (const std::string& w : warnings)
        std::cerr << "c warning: " << w << "\n";
      std::vector<std::string> diags = validate(spec);
      if (!diags.empty()) {
        for (const std::string& d : diags)
          std::cerr << "error: " << d << "\n";
        return kExitUsage;
      }
      RunRecord rec = run_specification(
          spec, std::filesystem::path(path).filename().string(), mode,
          epsilon, delta, seed, oracles, limits);
      print_record(rec, log_base);
      if (rec.status == RunStatus::Error && !rec.message.empty())
        std::cerr << "error: " << rec.message << "\n";
      return status_to_exit(rec.status);
    }

    if (app.got_subcommand(cmd_bench)) {
      OracleChoice oracles = parse_oracle_choice(oracle_spec, sampler_spec);
      std::vector<RunMode> modes;
      for (const std::string& name : mode_names) {
        if (name == "skolemfc")
          modes.push_back(RunMode::Skolemfc);
        else if (name == "baseline")
          modes.push_back(RunMode::Baseline);
        else if (name == "brute")
          modes.push_back(RunMode::Brute);
        else
          throw SpecError("unknown mode '" + name + "'");
      }
      std::vector<RunRecord> records =
          bench_directory(std::filesystem::path(path), modes, epsilon, delta,
                          seed, oracles, limits, jobs);
      std::ofstream file_out;
      std::ostream* out = &std::cout;
      if (!output.empty()) {
        file_out.open(output, std::ios::binary);
        if (!file_out) throw ParseError("cannot open output " + output);
        out = &file_out;
      }
      write_csv_header(*out);
      for (const RunRecord& rec : records) write_csv_row(*out, rec);
      return kExitOk;
    }

    if (app.got_subcommand(cmd_gen)) {
      Specification spec;
      if (family == "factorization") {
        spec = make_factorization_spec(width);
      } else if (family == "xor") {
        spec = make_xor_identity_spec();
      } else if (family == "unsat") {
        spec = make_unsat_spec();
      } else if (family == "wide") {
        spec = make_wide_spec(gen_n, gen_m);
      } else if (family == "random") {
        spec = make_random_spec(gen_n, gen_m, gen_clauses, gen_width, seed);
      } else {
        throw SpecError("unknown family '" + family + "'");
      }
      if (output.empty()) {
        write_qdimacs(std::cout, spec);
      } else {
        std::ofstream out(output);
        if (!out) throw ParseError("cannot open output " + output);
        write_qdimacs(out, spec);
      }
      return kExitOk;
    }

    if (app.got_subcommand(cmd_solve)) {
      ProjectedFormula pf = parse_projected_dimacs(read_input(in_path));
      Budget budget;
      Solver solver(pf.cnf, {}, &budget);
      if (!solver.solve()) {
        std::cout << "s UNSATISFIABLE\n";
        return 20;
      }
      std::cout << "s SATISFIABLE\n";
      std::cout << "v";
      for (uint32_t v = 1; v <= pf.cnf.num_vars; v++)
        std::cout << ' ' << (solver.model_value(VarId{v}) ? int(v) : -int(v));
      std::cout << " 0\n";
      return 10;
    }

    if (app.got_subcommand(cmd_cproj)) {
      ProjectedFormula pf = parse_projected_dimacs(read_input(in_path));
      Budget budget = Budget::with_limits(max_sat_calls, timeout_s);
      CountResult r = exact_mode
                          ? exact_count(pf, budget)
                          : approx_count(pf, epsilon, delta, seed, budget);
      std::cout << r.count.get_str() << "\n";
      return kExitOk;
    }

    if (app.got_subcommand(cmd_sproj)) {
      ProjectedFormula pf = parse_projected_dimacs(read_input(in_path));
      Budget budget;
      SelfReducibleSampler sampler(pf);
      for (uint32_t i = 0; i < num_samples; i++) {
        SampleResult s = sampler.sample(derive_seed(seed, 0, i), budget);
        for (const auto& [v, b] : s.assignment.bindings())
          std::cout << (b ? int(v.index) : -int(v.index)) << ' ';
        std::cout << "0\n";
      }
      return kExitOk;
    }
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
