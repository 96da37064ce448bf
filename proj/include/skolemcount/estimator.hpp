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

#ifndef SKOLEMCOUNT_ESTIMATOR_HPP
#define SKOLEMCOUNT_ESTIMATOR_HPP

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "counting.hpp"
#include "naive.hpp"
#include "sampling.hpp"
#include "transform.hpp"
#include "types.hpp"

namespace skolemcount {

// Counting how many Skolem function vectors satisfy a specification
// F(X,Y). The count factors into a product over input assignments of the
// number of outputs each admits, so its logarithm is a sum over the inputs
// with at least two outputs (the X-projection of the doubled formula G).
// The randomized estimator samples that sum: it draws inputs
// almost-uniformly from Sol(G) projected on X, feeds the normalized
// per-input log-counts to a stopping-rule mean estimator, and scales by an
// approximate count of |Sol(G) projected on X|.

constexpr double kLn2 = 0.6931471805599453;

/// Derived tolerances and confidences for the oracle calls of one run.
struct ParamSet {
  double eps_f;        // stopping-rule tolerance, 0.6 eps
  double delta_f;      // stopping-rule confidence, 0.4 delta
  double s_threshold;  // 4 ln(2/delta_f) (1+eps_f) / eps_f^2
  double eps_s;        // sampler tolerance, 0.2 eps
  double delta_c;      // per-count confidence, 0.4 delta / (m s)
  double eps_c;        // per-count tolerance, 4 sqrt(2) - 1
  double eps_g;        // |S2| count tolerance, 0.1 eps
  double delta_g;      // |S2| count confidence, 0.1 delta
};

inline ParamSet derive_params(double epsilon, double delta,
                              uint32_t num_outputs)
{
  if (!(epsilon > 0 && epsilon <= 2))
    throw SpecError("epsilon must be in (0, 2]");
  if (!(delta > 0 && delta < 1)) throw SpecError("delta must be in (0, 1)");
  if (num_outputs == 0) throw SpecError("specification has no outputs");
  ParamSet p;
  p.eps_f = 0.6 * epsilon;
  p.delta_f = 0.4 * delta;
  p.s_threshold =
      4.0 * std::log(2.0 / p.delta_f) * (1.0 + p.eps_f) / (p.eps_f * p.eps_f);
  p.eps_s = 0.2 * epsilon;
  p.delta_c = 0.4 * delta / (num_outputs * p.s_threshold);
  p.eps_c = 4.0 * std::sqrt(2.0) - 1.0;
  p.eps_g = 0.1 * epsilon;
  p.delta_g = 0.1 * delta;
  return p;
}

/// Logarithm of a Skolem-function count. Held in base 2 internally;
/// the exact companion is present when the count was computed exactly.
struct LogCount {
  double log2_value = 0.0;
  std::optional<mpz_class> exact;

  double ln() const { return log2_value * kLn2; }
  double log2() const { return log2_value; }

  static LogCount from_exact(mpz_class n)
  {
    LogCount lc;
    lc.log2_value = n <= 1 ? 0.0 : log2_of_mpz(n);
    lc.exact = std::move(n);
    return lc;
  }
};

struct RunStats {
  uint64_t iterations = 0;          // t
  double accumulated = 0.0;         // x, in normalized base-2 units
  uint64_t sat_calls = 0;
  uint64_t count_calls = 0;         // counting-oracle invocations
  uint64_t sample_calls = 0;        // sampling-oracle invocations
  uint64_t clamped_iterations = 0;  // per-draw values pushed back into range
  double wall_time_s = 0.0;
  std::optional<std::string> abort_reason;
};

// ---------------------------------------------------------------------------
// Stopping rule

struct StoppingRuleResult {
  double estimate;
  uint64_t iterations;
  double accumulated;
};

/// Accumulate i.i.d. draws from [0,1] until the sum reaches
/// s = 4 ln(2/delta)(1+eps)/eps^2; the mean estimate s/t is then within a
/// (1 +- eps) factor of the true mean with probability > 1 - delta.
template <typename Gen>
StoppingRuleResult stopping_rule(double epsilon, double delta, Gen&& next_rv)
{
  if (!(epsilon > 0 && epsilon <= 2))
    throw SpecError("stopping_rule: epsilon must be in (0, 2]");
  if (!(delta > 0 && delta < 1))
    throw SpecError("stopping_rule: delta must be in (0, 1)");
  const double s =
      4.0 * std::log(2.0 / delta) * (1.0 + epsilon) / (epsilon * epsilon);
  double x = 0.0;
  uint64_t t = 0;
  while (x < s) {
    double z = next_rv();
    if (!(z >= 0.0 && z <= 1.0))
      throw SpecError("stopping_rule: draw outside [0,1]");
    x += z;
    t++;
  }
  return StoppingRuleResult{s / static_cast<double>(t), t, x};
}

// ---------------------------------------------------------------------------
// Randomized Skolem-count estimator

struct EstimateResult {
  bool aborted = false;       // counting-error budget check failed
  LogCount estimate;          // meaningful iff !aborted
  RunStats stats;
  ParamSet params;
};

/// The randomized counter. Returns an estimate of log |Skolem(F,Y)| within
/// a (1 +- epsilon) factor with probability at least 1 - delta, or aborts
/// when the per-count tolerance cannot be shown to stay inside its share
/// of the error budget.
inline EstimateResult skolemfc(const Specification& spec, double epsilon,
                               double delta, CountingOracle& counter,
                               SamplingOracle& sampler, uint64_t seed,
                               Budget& budget)
{
  auto start = std::chrono::steady_clock::now();
  const uint32_t m = spec.num_outputs();
  EstimateResult res;
  res.params = derive_params(epsilon, delta, m);
  const ParamSet& prm = res.params;

  uint64_t calls_before = budget.sat_calls();
  auto finish = [&](EstimateResult& r) -> EstimateResult& {
    r.stats.sat_calls = budget.sat_calls() - calls_before;
    r.stats.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    return r;
  };

  DoubledFormula g = build_g(spec);

  // No input admits two distinct outputs: the Skolem function is unique
  // (inputs outside Sol(F) projected on X do not distinguish functions),
  // so the log-count is exactly zero. The loop below would never
  // terminate on an unsatisfiable G because its draws have mean zero.
  {
    Solver probe(g.formula.cnf, {}, &budget);
    if (!probe.solve()) {
      res.estimate = LogCount::from_exact(1);
      return finish(res);
    }
  }

  // Stopping-rule loop over normalized per-input log-counts. Counts lie in
  // [2, 2^m] for genuine members of S2, so each draw lives in [1/m, 1];
  // approximate counts may leak outside by their (1+eps_c) slack and are
  // clamped back, with the event recorded.
  double x = 0.0;
  uint64_t t = 0;
  double worst_count_eps = 0.0;
  const double lo = 1.0 / static_cast<double>(m);
  while (x < prm.s_threshold) {
    SampleResult sigma = sampler.sample(
        g.formula, prm.eps_s, derive_seed(seed, 0x5a, t), budget);
    res.stats.sample_calls++;

    Cnf cof = cofactor(spec, sigma.assignment);
    CountResult cr =
        counter.count(ProjectedFormula{std::move(cof), spec.outputs},
                      prm.eps_c, prm.delta_c, derive_seed(seed, 0xc0, t),
                      budget);
    res.stats.count_calls++;
    if (!cr.is_exact) worst_count_eps = std::max(worst_count_eps, cr.epsilon);

    double c = cr.log2_value() / static_cast<double>(m);
    if (c < lo || c > 1.0 || std::isnan(c)) {
      c = std::isnan(c) || c < lo ? lo : 1.0;
      res.stats.clamped_iterations++;
    }
    x += c;
    t++;
  }
  res.stats.iterations = t;
  res.stats.accumulated = x;

  CountResult gcount =
      counter.count(g.formula, prm.eps_g, prm.delta_g,
                    derive_seed(seed, 0x9c, 0), budget);
  res.stats.count_calls++;

  const double g_lin = gcount.linear_value();
  const double est_log2 =
      (prm.s_threshold / static_cast<double>(t)) * m * g_lin;
  res.estimate.log2_value = est_log2;

  // Error-budget check on the per-count approximation: with the tolerance
  // the counting oracle actually delivered (zero when it answered
  // exactly), the accumulated counting error g*log(1+eps) must stay below
  // a tenth of the estimate, or the result cannot be certified.
  const double count_error = g_lin * std::log2(1.0 + worst_count_eps);
  if (count_error > 0.1 * est_log2) {
    res.aborted = true;
    res.stats.abort_reason =
        "counting-oracle error budget exceeded: g*log(1+eps_c) > 0.1*Est";
  }
  return finish(res);
}

// ---------------------------------------------------------------------------
// Exhaustive baseline

struct BaselineResult {
  LogCount estimate;          // sum of per-input log-counts
  bool product_is_exact = false;
  RunStats stats;
  std::vector<std::pair<Assignment, mpz_class>> per_sigma;
};

/// Enumerate Sol(G) projected on X outright and add up exact per-input
/// log-counts. Exact up to floating-point summation; the integer product
/// is carried alongside while it stays below `product_bit_cap` bits.
inline BaselineResult baseline(const Specification& spec, Budget& budget,
                               uint64_t enum_cap = 1ULL << 20,
                               uint64_t product_bit_cap = 1ULL << 20)
{
  auto start = std::chrono::steady_clock::now();
  BaselineResult res;
  uint64_t calls_before = budget.sat_calls();

  DoubledFormula g = build_g(spec);
  EnumerationResult s2 = enumerate_projected(g.formula, enum_cap, &budget);
  if (s2.overflow)
    throw ResourceLimitError("projected enumeration cap exceeded",
                             budget.sat_calls() - calls_before);

  double log2_sum = 0.0;
  mpz_class product = 1;
  bool product_ok = true;
  for (const Assignment& sigma : s2.models) {
    Cnf cof = cofactor(spec, sigma);
    CountResult c = exact_count(
        ProjectedFormula{std::move(cof), spec.outputs}, budget);
    res.stats.count_calls++;
    log2_sum += log2_of_mpz(c.count);
    if (product_ok) {
      product *= c.count;
      if (mpz_sizeinbase(product.get_mpz_t(), 2) > product_bit_cap)
        product_ok = false;
    }
    res.per_sigma.emplace_back(sigma, std::move(c.count));
  }
  res.estimate.log2_value = log2_sum;
  if (product_ok) res.estimate.exact = product;
  res.product_is_exact = product_ok;
  res.stats.iterations = s2.models.size();
  res.stats.sat_calls = budget.sat_calls() - calls_before;
  res.stats.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return res;
}

// ---------------------------------------------------------------------------
// Exhaustive reference count

/// Product over all input assignments of the number of admissible outputs
/// (with empty/singleton ranges contributing a factor of one). Implemented
/// on the independent recursive counter, not the CDCL engine, so it can
/// stand as an oracle for everything above. Exponential in |X|.
inline mpz_class brute_force_skolem_count(const Specification& spec)
{
  const uint32_t n = spec.num_inputs();
  if (n > 20) throw SpecError("brute_force_skolem_count: more than 20 inputs");

  NaiveCounter counter(spec.cnf);
  mpz_class product = 1;
  std::vector<Lit> units(spec.inputs.size(), Lit{});
  const uint64_t total = 1ULL << n;
  for (uint64_t mask = 0; mask < total; mask++) {
    for (size_t i = 0; i < spec.inputs.size(); i++) {
      bool bit = (mask >> i) & 1ULL;
      units[i] = bit ? pos(spec.inputs[i]) : neg(spec.inputs[i]);
    }
    mpz_class cnt = counter.count(units);
    if (cnt > 1) product *= cnt;
  }
  return product;
}

}  // namespace skolemcount

#endif
