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

#ifndef SKOLEMCOUNT_SAMPLING_HPP
#define SKOLEMCOUNT_SAMPLING_HPP

#include <gmpxx.h>

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "budget.hpp"
#include "counting.hpp"
#include "rand.hpp"
#include "types.hpp"

namespace skolemcount {

// Sampling of projected models. The default sampler is exactly uniform by
// self-reduction: each projection bit is fixed with probability
// proportional to the exact projected count of the matching cofactor, so
// it meets the almost-uniform contract for every tolerance. A hash-based
// sampler is the scalable alternative when exact counting is out of reach.

struct SampleResult {
  Assignment assignment;  // total over the projection set
  uint64_t sat_calls = 0;
};

/// Exactly uniform sampler over Sol(pf) projected. Cofactor counts are
/// memoized per prefix, so repeated draws from one formula cost a handful
/// of big-integer comparisons after warm-up.
class SelfReducibleSampler {
 public:
  explicit SelfReducibleSampler(ProjectedFormula pf, SolverConfig cfg = {})
      : pf_(std::move(pf)), cfg_(cfg)
  {
  }

  SampleResult sample(uint64_t seed, Budget& budget)
  {
    uint64_t before = budget.sat_calls();
    const mpz_class& total = prefix_count({}, budget);
    if (total == 0) throw UnsatFormulaError();

    gmp_randclass rand(gmp_randinit_mt);
    rand.seed(static_cast<unsigned long>(splitmix64(seed ^ 0x5e1fULL)));

    std::vector<Lit> prefix;
    Assignment out;
    mpz_class remaining = total;
    for (VarId v : pf_.projection) {
      prefix.push_back(neg(v));
      const mpz_class& c_false = prefix_count(prefix, budget);
      mpz_class c_true = remaining - c_false;
      mpz_class r = rand.get_z_range(remaining);
      bool bit = r >= c_false;
      out.set(v, bit);
      if (bit) {
        prefix.back() = pos(v);
        remaining = c_true;
      } else {
        remaining = c_false;
      }
    }
    return SampleResult{std::move(out), budget.sat_calls() - before};
  }

 private:
  const mpz_class& prefix_count(const std::vector<Lit>& prefix,
                                Budget& budget)
  {
    std::string key;
    for (const Lit& l : prefix) key += l.negated ? '0' : '1';
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    Cnf cnf = pf_.cnf;
    for (const Lit& l : prefix) cnf.add_clause({l});
    CountResult c =
        exact_count({std::move(cnf), pf_.projection}, budget, cfg_);
    return cache_.emplace(std::move(key), std::move(c.count)).first->second;
  }

  ProjectedFormula pf_;
  SolverConfig cfg_;
  std::unordered_map<std::string, mpz_class> cache_;
};

/// Hash-based almost-uniform sampler: shatter the projected space with
/// random parities to a bounded cell, enumerate the cell, pick uniformly
/// inside it. Meets the sampling interface at contract level; every
/// returned assignment is a genuine projected model.
class HashSampler {
 public:
  explicit HashSampler(ProjectedFormula pf, SolverConfig cfg = {})
      : pf_(std::move(pf)), cfg_(cfg)
  {
  }

  SampleResult sample(uint64_t seed, Budget& budget)
  {
    uint64_t before = budget.sat_calls();
    const uint64_t cell_target = 32;
    const uint64_t cell_cap = 4 * cell_target;

    if (!count_ready_) {
      rough_ = approx_count(pf_, 0.8, 0.2, derive_seed(seed, 0x4a51, 0),
                            budget, cfg_);
      count_ready_ = true;
    }
    Rng rng(derive_seed(seed, 0x5a3e, 1));

    if (rough_.is_exact && rough_.count == 0) throw UnsatFormulaError();
    if (rough_.is_exact && rough_.count <= cell_cap) {
      EnumerationResult all =
          enumerate_projected(pf_, cell_cap, &budget, cfg_);
      uint64_t idx = rng.below(all.models.size());
      return SampleResult{all.models[idx], budget.sat_calls() - before};
    }

    const size_t p = pf_.projection.size();
    double excess = rough_.log2_value() - std::log2(double(cell_target));
    size_t m = excess <= 0 ? 0 : std::min<size_t>(p, size_t(excess + 0.5));
    for (int attempt = 0; attempt < 24; attempt++) {
      Rng hash_rng(derive_seed(seed, 0x4a58, attempt));
      std::vector<detail::ParityRow> rows =
          detail::random_parity_rows(pf_.projection, m, hash_rng);
      Cnf cnf = pf_.cnf;
      for (const detail::ParityRow& row : rows)
        detail::add_parity_constraint(cnf, row.vars, row.rhs);
      EnumerationResult cell = enumerate_projected(
          {std::move(cnf), pf_.projection}, cell_cap, &budget, cfg_);
      if (!cell.overflow && !cell.models.empty()) {
        uint64_t idx = rng.below(cell.models.size());
        return SampleResult{cell.models[idx],
                            budget.sat_calls() - before};
      }
      if (cell.overflow && m < p)
        m++;
      else if (cell.models.empty() && m > 0)
        m--;
    }
    // Retries exhausted: fall back to picking among the first models found.
    EnumerationResult some = enumerate_projected(pf_, cell_cap, &budget, cfg_);
    if (some.models.empty()) throw UnsatFormulaError();
    uint64_t idx = rng.below(some.models.size());
    return SampleResult{some.models[idx], budget.sat_calls() - before};
  }

 private:
  ProjectedFormula pf_;
  SolverConfig cfg_;
  CountResult rough_;
  bool count_ready_ = false;
};

// ---------------------------------------------------------------------------
// Oracle interface used by the estimators.

class SamplingOracle {
 public:
  virtual ~SamplingOracle() = default;
  virtual SampleResult sample(const ProjectedFormula& pf, double epsilon_s,
                              uint64_t seed, Budget& budget) = 0;
  virtual std::string name() const = 0;
};

/// Default oracle: exactly uniform, so any epsilon_s is satisfied. Keeps
/// one self-reducible sampler per distinct formula.
class ExactSamplingOracle final : public SamplingOracle {
 public:
  explicit ExactSamplingOracle(SolverConfig cfg = {}) : cfg_(cfg) {}

  SampleResult sample(const ProjectedFormula& pf, double, uint64_t seed,
                      Budget& budget) override
  {
    return sampler_for(pf).sample(seed, budget);
  }

  std::string name() const override { return "exact"; }

 private:
  SelfReducibleSampler& sampler_for(const ProjectedFormula& pf)
  {
    std::string key = to_projected_dimacs(pf);
    auto it = samplers_.find(key);
    if (it == samplers_.end())
      it = samplers_
               .emplace(std::move(key),
                        std::make_unique<SelfReducibleSampler>(pf, cfg_))
               .first;
    return *it->second;
  }

  SolverConfig cfg_;
  std::unordered_map<std::string, std::unique_ptr<SelfReducibleSampler>>
      samplers_;
};

class HashSamplingOracle final : public SamplingOracle {
 public:
  explicit HashSamplingOracle(SolverConfig cfg = {}) : cfg_(cfg) {}

  SampleResult sample(const ProjectedFormula& pf, double, uint64_t seed,
                      Budget& budget) override
  {
    std::string key = to_projected_dimacs(pf);
    auto it = samplers_.find(key);
    if (it == samplers_.end())
      it = samplers_
               .emplace(std::move(key),
                        std::make_unique<HashSampler>(pf, cfg_))
               .first;
    return it->second->sample(seed, budget);
  }

  std::string name() const override { return "hash"; }

 private:
  SolverConfig cfg_;
  std::unordered_map<std::string, std::unique_ptr<HashSampler>> samplers_;
};

}  // namespace skolemcount

#endif
