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

#ifndef SKOLEMCOUNT_EXTERNAL_HPP
#define SKOLEMCOUNT_EXTERNAL_HPP

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "counting.hpp"
#include "dimacs.hpp"
#include "sampling.hpp"
#include "solver.hpp"
#include "types.hpp"

namespace skolemcount {

// Adapters that delegate oracle work to external processes over DIMACS:
//   * solver:  DIMACS on stdin, "s ..."/"v ..." on stdout, exit 10 = SAT
//              and 20 = UNSAT;
//   * counter: DIMACS with a `c ind ... 0` line on stdin, a single numeric
//              estimate on stdout;
//   * sampler: same input, one projected model per line in DIMACS literal
//              format.
// The internal engine stays the default; these exist for interoperability.

struct ExternalToolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SubprocessResult {
  int exit_code = -1;
  std::string out;
};

/// Run `argv`, feed `input` to its stdin, collect stdout. Both pipes are
/// pumped together so neither side can deadlock on a full buffer.
inline SubprocessResult run_subprocess(const std::vector<std::string>& argv,
                                       const std::string& input)
{
  if (argv.empty()) throw ExternalToolError("empty external command");
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
    throw ExternalToolError("pipe() failed");

  pid_t pid = fork();
  if (pid < 0) throw ExternalToolError("fork() failed");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::vector<char*> cargv;
    for (const std::string& a : argv)
      cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }

  close(in_pipe[0]);
  close(out_pipe[1]);
  fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);

  SubprocessResult res;
  size_t written = 0;
  bool stdin_open = true;
  char buf[4096];
  for (;;) {
    struct pollfd fds[2];
    nfds_t nfds = 0;
    int out_idx = -1, in_idx = -1;
    fds[nfds] = {out_pipe[0], POLLIN, 0};
    out_idx = static_cast<int>(nfds++);
    if (stdin_open) {
      fds[nfds] = {in_pipe[1], POLLOUT, 0};
      in_idx = static_cast<int>(nfds++);
    }
    if (poll(fds, nfds, -1) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (in_idx >= 0 && (fds[in_idx].revents & (POLLOUT | POLLERR))) {
      if (written >= input.size() || (fds[in_idx].revents & POLLERR)) {
        close(in_pipe[1]);
        stdin_open = false;
      } else {
        ssize_t w = write(in_pipe[1], input.data() + written,
                          input.size() - written);
        if (w > 0)
          written += static_cast<size_t>(w);
        else if (w < 0 && errno != EAGAIN && errno != EINTR) {
          close(in_pipe[1]);
          stdin_open = false;
        }
        if (written >= input.size()) {
          close(in_pipe[1]);
          stdin_open = false;
        }
      }
    }
    if (fds[out_idx].revents & (POLLIN | POLLHUP)) {
      ssize_t r = read(out_pipe[0], buf, sizeof(buf));
      if (r > 0) {
        res.out.append(buf, static_cast<size_t>(r));
      } else if (r == 0 || (r < 0 && errno != EAGAIN && errno != EINTR)) {
        break;
      }
    }
  }
  close(out_pipe[0]);
  if (stdin_open) close(in_pipe[1]);
  int status = 0;
  waitpid(pid, &status, 0);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

inline std::vector<std::string> split_command(const std::string& cmd)
{
  std::vector<std::string> argv;
  std::istringstream in(cmd);
  std::string tok;
  while (in >> tok) argv.push_back(tok);
  return argv;
}

/// Delegates single solve calls to an external DIMACS solver process.
/// Assumptions are passed as extra unit clauses; there is no incremental
/// interface across calls.
class ExternalSatSolver {
 public:
  explicit ExternalSatSolver(std::string command)
      : argv_(split_command(command))
  {
  }

  SolveResult solve(const Cnf& cnf, std::span<const Lit> assumptions = {})
  {
    Cnf work = cnf;
    for (const Lit& l : assumptions) work.add_clause({l});
    std::ostringstream in;
    in << "p cnf " << work.num_vars << ' ' << work.clauses.size() << '\n';
    write_clauses(in, work);

    SubprocessResult r = run_subprocess(argv_, in.str());
    if (r.exit_code == 20) return SolveResult{Status::Unsat, std::nullopt};
    if (r.exit_code != 10)
      throw ExternalToolError("external solver exited with code " +
                              std::to_string(r.exit_code));

    Assignment model;
    std::istringstream out(r.out);
    std::string line;
    while (std::getline(out, line)) {
      std::istringstream ls(line);
      std::string tag;
      if (!(ls >> tag) || tag != "v") continue;
      long long lit;
      while (ls >> lit) {
        if (lit == 0) break;
        VarId v{static_cast<uint32_t>(lit < 0 ? -lit : lit)};
        if (v.index >= 1 && v.index <= cnf.num_vars) model.set(v, lit > 0);
      }
    }
    // unmentioned variables default to false
    for (uint32_t v = 1; v <= cnf.num_vars; v++)
      if (!model.contains(VarId{v})) model.set(VarId{v}, false);
    return SolveResult{Status::Sat, std::move(model)};
  }

 private:
  std::vector<std::string> argv_;
};

/// Counting oracle backed by an external projected counter. The tool's
/// answer is trusted to meet the requested tolerances.
class ExternalCountingOracle final : public CountingOracle {
 public:
  explicit ExternalCountingOracle(std::string command)
      : command_(std::move(command))
  {
  }

  CountResult count(const ProjectedFormula& pf, double epsilon, double delta,
                    uint64_t seed, Budget& budget) override
  {
    budget.check_deadline();
    std::vector<std::string> argv = split_command(command_);
    argv.push_back("--epsilon");
    argv.push_back(std::to_string(epsilon));
    argv.push_back("--delta");
    argv.push_back(std::to_string(delta));
    argv.push_back("--seed");
    argv.push_back(std::to_string(seed));
    SubprocessResult r = run_subprocess(argv, to_projected_dimacs(pf));
    if (r.exit_code != 0)
      throw ExternalToolError("external counter exited with code " +
                              std::to_string(r.exit_code));

    std::string token = last_numeric_token(r.out);
    if (token.empty())
      throw ExternalToolError("external counter produced no estimate");
    CountResult res;
    if (token.find_first_of(".eE") == std::string::npos &&
        mpz_set_str(res.count.get_mpz_t(), token.c_str(), 10) == 0) {
      res.log2_estimate = res.count == 0
                              ? -std::numeric_limits<double>::infinity()
                              : log2_of_mpz(res.count);
    } else {
      double v = std::strtod(token.c_str(), nullptr);
      res.log2_estimate = v <= 0
                              ? -std::numeric_limits<double>::infinity()
                              : std::log2(v);
      res.count = mpz_from_log2(res.log2_estimate);
    }
    res.is_exact = false;
    res.epsilon = epsilon;
    res.delta = delta;
    return res;
  }

  std::string name() const override { return "external:" + command_; }

 private:
  static std::string last_numeric_token(const std::string& text)
  {
    std::istringstream in(text);
    std::string tok, best;
    while (in >> tok) {
      char* end = nullptr;
      std::strtod(tok.c_str(), &end);
      if (end && *end == '\0' && end != tok.c_str()) best = tok;
    }
    return best;
  }

  std::string command_;
};

/// Sampling oracle backed by an external tool emitting one projected model
/// per line as 0-terminated DIMACS literals.
class ExternalSamplingOracle final : public SamplingOracle {
 public:
  explicit ExternalSamplingOracle(std::string command)
      : command_(std::move(command))
  {
  }

  SampleResult sample(const ProjectedFormula& pf, double epsilon_s,
                      uint64_t seed, Budget& budget) override
  {
    budget.check_deadline();
    std::vector<std::string> argv = split_command(command_);
    argv.push_back("--epsilon");
    argv.push_back(std::to_string(epsilon_s));
    argv.push_back("--seed");
    argv.push_back(std::to_string(seed));
    SubprocessResult r = run_subprocess(argv, to_projected_dimacs(pf));
    if (r.exit_code != 0)
      throw ExternalToolError("external sampler exited with code " +
                              std::to_string(r.exit_code));

    std::istringstream out(r.out);
    std::string line;
    while (std::getline(out, line)) {
      std::istringstream ls(line);
      long long lit;
      Assignment a;
      bool any = false;
      while (ls >> lit) {
        if (lit == 0) break;
        any = true;
        a.set(VarId{static_cast<uint32_t>(lit < 0 ? -lit : lit)}, lit > 0);
      }
      if (any) return SampleResult{std::move(a), 0};
    }
    throw ExternalToolError("external sampler produced no model");
  }

  std::string name() const override { return "external:" + command_; }

 private:
  std::string command_;
};

}  // namespace skolemcount

#endif
