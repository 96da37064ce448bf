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

#ifndef SKOLEMCOUNT_COUNTING_HPP
#define SKOLEMCOUNT_COUNTING_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "budget.hpp"
#include "dimacs.hpp"
#include "enumerate.hpp"
#include "rand.hpp"
#include "transform.hpp"
#include "types.hpp"

namespace skolemcount {

// Exact and (epsilon,delta)-approximate projected model counting. The
// approximate counter follows the usual hashing recipe: random parity
// constraints of density 1/2 over the projection set shatter the solution
// space, a bounded enumeration measures one cell, and a median over
// independent rounds buys the confidence.

/// Base-2 logarithm of a positive big integer, computed from the exact
/// mantissa/exponent split so it never overflows a double.
inline double log2_of_mpz(const mpz_class& n)
{
  if (n <= 0) throw SpecError("log of a non-positive count");
  signed long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return static_cast<double>(exp) + std::log2(mant);
}

/// Nearest big integer to 2^x (for reporting approximate counts).
inline mpz_class mpz_from_log2(double x)
{
  if (x < 0) return 0;
  mpf_class v(0, 128);
  double ip;
  double frac = std::modf(x, &ip);
  v = std::exp2(frac);
  mpf_mul_2exp(v.get_mpf_t(), v.get_mpf_t(),
               static_cast<unsigned long>(ip));
  v += 0.5;
  mpz_class out;
  mpz_set_f(out.get_mpz_t(), v.get_mpf_t());
  return out;
}

struct CountResult {
  mpz_class count;        // exact value, or rounded estimate when !is_exact
  double log2_estimate;   // log2 of the count/estimate; -inf for zero
  bool is_exact = false;
  double epsilon = 0.0;   // tolerance actually achieved/used
  double delta = 0.0;     // confidence actually achieved/used
  uint64_t sat_calls = 0; // SAT-engine invocations consumed by this call

  double log2_value() const { return log2_estimate; }
  /// Estimate as a double; may be +inf for astronomically large counts.
  double linear_value() const { return std::exp2(log2_estimate); }

  static CountResult exact(mpz_class n, uint64_t calls)
  {
    CountResult r;
    r.log2_estimate =
        n == 0 ? -std::numeric_limits<double>::infinity() : log2_of_mpz(n);
    r.count = std::move(n);
    r.is_exact = true;
    r.sat_calls = calls;
    return r;
  }
};

/// |Sol(pf) projected| by blocking-clause enumeration, exact. Cost is one
/// SAT call per projected model; caps come from the budget.
inline CountResult exact_count(const ProjectedFormula& pf, Budget& budget,
                               SolverConfig cfg = {})
{
  uint64_t before = budget.sat_calls();
  EnumerationResult e = enumerate_projected(
      pf, std::numeric_limits<uint64_t>::max(), &budget, cfg);
  return CountResult::exact(mpz_class(static_cast<unsigned long>(
                                e.models.size())),
                            budget.sat_calls() - before);
}

namespace detail {

/// Append the CNF encoding of parity(vars) = rhs via a chain of fresh
/// equivalence variables; the chain variables must stay outside any
/// projection set.
inline void add_parity_constraint(Cnf& cnf, const std::vector<VarId>& vars,
                                  bool rhs)
{
  if (vars.empty()) {
    if (rhs) cnf.add_clause(std::vector<Lit>{});  // 0 = 1: unsatisfiable
    return;
  }
  Lit running = pos(vars[0]);
  for (size_t i = 1; i < vars.size(); i++) {
    Lit a = running, b = pos(vars[i]);
    VarId z = cnf.new_var();
    cnf.add_clause({neg(z), a, b});
    cnf.add_clause({neg(z), ~a, ~b});
    cnf.add_clause({pos(z), ~a, b});
    cnf.add_clause({pos(z), a, ~b});
    running = pos(z);
  }
  cnf.add_clause({rhs ? running : ~running});
}

struct ParityRow {
  std::vector<VarId> vars;
  bool rhs;
};

inline std::vector<ParityRow> random_parity_rows(const VarSet& projection,
                                                 size_t how_many, Rng& rng)
{
  std::vector<ParityRow> rows(how_many);
  for (ParityRow& row : rows) {
    for (VarId v : projection)
      if (rng.next_bit()) row.vars.push_back(v);
    row.rhs = rng.next_bit();
  }
  return rows;
}

/// Bounded count of pf /\ rows[0..m) up to `limit` projected models.
/// Returns limit+1 when more than `limit` models exist.
inline uint64_t hashed_cell_count(const ProjectedFormula& pf,
                                  const std::vector<ParityRow>& rows,
                                  size_t m, uint64_t limit, Budget& budget)
{
  Cnf cnf = pf.cnf;
  for (size_t i = 0; i < m; i++)
    add_parity_constraint(cnf, rows[i].vars, rows[i].rhs);
  EnumerationResult e =
      enumerate_projected({std::move(cnf), pf.projection}, limit, &budget);
  return e.overflow ? limit + 1 : e.models.size();
}

/// P[Bin(r, q) >= k], evaluated in log space for stability.
inline double binomial_tail_ge(int r, double q, int k)
{
  double total = 0.0;
  for (int i = k; i <= r; i++) {
    double lt = std::lgamma(r + 1.0) - std::lgamma(i + 1.0) -
                std::lgamma(r - i + 1.0) + i * std::log(q) +
                (r - i) * std::log1p(-q);
    total += std::exp(lt);
  }
  return total;
}

/// Smallest odd round count whose median beats failure probability delta,
/// assuming each round errs with probability at most 0.36.
inline int median_rounds(double delta)
{
  constexpr double kRoundFailure = 0.36;
  for (int r = 1; r <= 999; r += 2) {
    if (binomial_tail_ge(r, kRoundFailure, (r + 1) / 2) <= delta) return r;
  }
  return 1001;
}

}  // namespace detail

/// (epsilon,delta)-approximate projected count. Counts small enough to
/// enumerate directly are returned exactly (epsilon reported as 0); above
/// that, parity-hashing rounds with a median. The returned epsilon/delta
/// reflect what the result actually guarantees.
inline CountResult approx_count(const ProjectedFormula& pf, double epsilon,
                                double delta, uint64_t seed, Budget& budget,
                                SolverConfig cfg = {})
{
  if (!(epsilon > 0)) throw SpecError("approx_count: epsilon must be > 0");
  if (!(delta > 0 && delta < 1))
    throw SpecError("approx_count: delta must be in (0,1)");

  uint64_t calls_before = budget.sat_calls();
  const uint64_t pivot = static_cast<uint64_t>(
      std::ceil(9.84 * (1 + epsilon / (1 + epsilon)) *
                (1 + 1.0 / epsilon) * (1 + 1.0 / epsilon)));

  // Small-count short-circuit: exact below the pivot.
  EnumerationResult direct = enumerate_projected(pf, pivot, &budget, cfg);
  if (!direct.overflow)
    return CountResult::exact(
        mpz_class(static_cast<unsigned long>(direct.models.size())),
        budget.sat_calls() - calls_before);

  const size_t p = pf.projection.size();
  const int rounds = detail::median_rounds(delta);
  std::vector<double> estimates;
  estimates.reserve(rounds);
  size_t prev_m = 1;
  for (int round = 0; round < rounds; round++) {
    Rng rng(derive_seed(seed, 0xc047, round));
    std::vector<detail::ParityRow> rows =
        detail::random_parity_rows(pf.projection, p, rng);

    // Cell counts are monotone in the number of prefix hashes; binary
    // search for the first level whose cell fits under the pivot.
    // lo always holds an over-full cell, hi a fitting one (once found).
    size_t lo = 0;
    size_t hi = p;
    bool hi_known = false;
    uint64_t hi_cell = 0;
    size_t probe = std::min(std::max<size_t>(prev_m, 1), p);
    for (;;) {
      uint64_t cell =
          detail::hashed_cell_count(pf, rows, probe, pivot, budget);
      if (cell > pivot) {
        lo = probe;
      } else {
        hi = probe;
        hi_known = true;
        hi_cell = cell;
      }
      if (hi_known && hi - lo == 1) break;
      if (!hi_known && lo == p) break;  // saturated: every level over-full
      probe = hi_known ? lo + (hi - lo) / 2
                       : std::min(p, std::max<size_t>(probe * 2, 1));
    }
    double est_log2;
    if (!hi_known) {
      est_log2 = std::log2(static_cast<double>(pivot)) +
                 static_cast<double>(p);
    } else {
      prev_m = hi;
      est_log2 = (hi_cell == 0
                      ? -std::numeric_limits<double>::infinity()
                      : std::log2(static_cast<double>(hi_cell)) +
                            static_cast<double>(hi));
    }
    estimates.push_back(est_log2);
  }
  std::sort(estimates.begin(), estimates.end());
  double median = estimates[estimates.size() / 2];

  CountResult r;
  r.log2_estimate = median;
  r.count = mpz_from_log2(median);
  r.is_exact = false;
  r.epsilon = epsilon;
  r.delta = delta;
  r.sat_calls = budget.sat_calls() - calls_before;
  return r;
}

/// ApproxCount applied to the doubled formula with projection X.
inline CountResult count_g(const DoubledFormula& g, double epsilon_g,
                           double delta_g, uint64_t seed, Budget& budget)
{
  return approx_count(g.formula, epsilon_g, delta_g, seed, budget);
}

// ---------------------------------------------------------------------------
// Oracle interface used by the estimators.

class CountingOracle {
 public:
  virtual ~CountingOracle() = default;
  virtual CountResult count(const ProjectedFormula& pf, double epsilon,
                            double delta, uint64_t seed, Budget& budget) = 0;
  virtual std::string name() const = 0;
};

/// Exact counts behind the approximate contract; trivially satisfies any
/// (epsilon,delta). Results are memoized by formula content, which keeps
/// repeated cofactor counts cheap; invocations are still charged by the
/// caller, not here.
class ExactCountingOracle final : public CountingOracle {
 public:
  explicit ExactCountingOracle(SolverConfig cfg = {}) : cfg_(cfg) {}

  CountResult count(const ProjectedFormula& pf, double, double, uint64_t,
                    Budget& budget) override
  {
    std::string key = to_projected_dimacs(pf);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      CountResult r = CountResult::exact(it->second, 0);
      return r;
    }
    CountResult r = exact_count(pf, budget, cfg_);
    cache_.emplace(std::move(key), r.count);
    return r;
  }

  std::string name() const override { return "exact"; }

 private:
  SolverConfig cfg_;
  std::unordered_map<std::string, mpz_class> cache_;
};

class HashCountingOracle final : public CountingOracle {
 public:
  explicit HashCountingOracle(SolverConfig cfg = {}) : cfg_(cfg) {}

  CountResult count(const ProjectedFormula& pf, double epsilon, double delta,
                    uint64_t seed, Budget& budget) override
  {
    return approx_count(pf, epsilon, delta, seed, budget, cfg_);
  }

  std::string name() const override { return "hash"; }

 private:
  SolverConfig cfg_;
};

}  // namespace skolemcount

#endif
