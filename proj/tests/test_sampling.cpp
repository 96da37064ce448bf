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

#include <catch2/catch_amalgamated.hpp>
#include <map>

#include "skolemcount/gen.hpp"
#include "skolemcount/sampling.hpp"
#include "skolemcount/transform.hpp"
#include "testutil.hpp"

using namespace skolemcount;
using namespace skolemcount::test;

TEST_CASE("self-reducible sampler hits the published support uniformly")
{
  // seven projected models; counts are cached, so a large draw budget is
  // cheap after the first pass
  Specification spec = make_factorization_spec(5);
  DoubledFormula g = build_g(spec);
  Budget budget;
  SelfReducibleSampler sampler(g.formula);

  const int draws = 100000;
  std::map<uint64_t, int> freq;
  for (int i = 0; i < draws; i++) {
    SampleResult s = sampler.sample(derive_seed(99, 0, i), budget);
    freq[bits_value(s.assignment, spec.inputs)]++;
  }
  std::set<uint64_t> support{12, 16, 18, 20, 24, 28, 30};
  for (const auto& [value, count] : freq) {
    REQUIRE(support.count(value) == 1);
    // binomial 3-sigma band around draws/7
    double expectation = draws / 7.0;
    double sigma = std::sqrt(draws * (1.0 / 7) * (6.0 / 7));
    REQUIRE(std::abs(count - expectation) <= 3 * sigma);
  }
  REQUIRE(freq.size() == 7);
}

TEST_CASE("sampler is exactly uniform within chi-square resolution")
{
  // free 3-bit space: 8 outcomes, 1e5 draws; the statistic must stay
  // below the 0.99 quantile of chi2 with 7 degrees of freedom
  Cnf cnf;
  VarSet proj;
  for (int i = 0; i < 3; i++) proj.push_back(cnf.new_var());
  Budget budget;
  SelfReducibleSampler sampler({cnf, proj});

  const int draws = 100000;
  std::vector<int> freq(8, 0);
  for (int i = 0; i < draws; i++) {
    SampleResult s = sampler.sample(derive_seed(7, 1, i), budget);
    freq[bits_value(s.assignment, proj)]++;
  }
  double expected = draws / 8.0;
  double chi2 = 0;
  for (int count : freq) {
    double d = count - expected;
    chi2 += d * d / expected;
  }
  REQUIRE(chi2 < 18.475);  // chi2_{0.99, df=7}
}

TEST_CASE("single projected model is returned with certainty")
{
  Cnf cnf;
  VarId v = cnf.new_var();
  cnf.add_clause({pos(v)});
  Budget budget;
  SelfReducibleSampler sampler({cnf, {v}});
  for (int i = 0; i < 20; i++) {
    SampleResult s = sampler.sample(derive_seed(3, 0, i), budget);
    REQUIRE(s.assignment.at(v) == true);
  }
}

TEST_CASE("sampling an unsatisfiable formula is an error")
{
  Cnf cnf;
  VarId v = cnf.new_var();
  cnf.add_clause({pos(v)});
  cnf.add_clause({neg(v)});
  Budget budget;
  SelfReducibleSampler sampler({cnf, {v}});
  REQUIRE_THROWS_AS(sampler.sample(1, budget), UnsatFormulaError);

  HashSampler hash_sampler({cnf, {v}});
  REQUIRE_THROWS_AS(hash_sampler.sample(1, budget), UnsatFormulaError);
}

TEST_CASE("sampled assignments always extend to full models")
{
  Rng rng(17);
  Budget budget;
  for (int iter = 0; iter < 40; iter++) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(8));
    Cnf cnf = random_cnf(n, 1 + static_cast<uint32_t>(rng.below(2 * n)), 3,
                         rng);
    VarSet proj;
    for (uint32_t v = 1; v <= n; v++)
      if (rng.next_bit()) proj.push_back(VarId{v});
    if (proj.empty()) proj.push_back(VarId{1});

    std::set<Assignment> support = brute_projected_models(cnf, proj);
    if (support.empty()) continue;

    SelfReducibleSampler sampler({cnf, proj});
    for (int d = 0; d < 10; d++) {
      SampleResult s =
          sampler.sample(derive_seed(iter, 2, d), budget);
      REQUIRE(support.count(s.assignment) == 1);
    }
  }
}

TEST_CASE("hash sampler emits genuine projected models")
{
  // big enough projected space to engage the hashing path
  Cnf cnf;
  VarSet proj;
  for (int i = 0; i < 12; i++) proj.push_back(cnf.new_var());
  cnf.add_clause({pos(proj[0]), pos(proj[1]), pos(proj[2])});
  Budget budget;
  HashSampler sampler({cnf, proj});

  std::vector<uint8_t> vals(cnf.num_vars + 1, 0);
  for (int d = 0; d < 25; d++) {
    SampleResult s = sampler.sample(derive_seed(5, 3, d), budget);
    REQUIRE(s.assignment.binds_exactly(proj));
    for (uint32_t v = 1; v <= cnf.num_vars; v++)
      vals[v] = s.assignment.at(VarId{v});
    REQUIRE(eval_cnf(cnf, vals));
  }
}

TEST_CASE("hash sampler covers a small support fully")
{
  // seven models: the sampler short-circuits through exact enumeration
  Cnf cnf;
  VarSet proj;
  for (int i = 0; i < 3; i++) proj.push_back(cnf.new_var());
  cnf.add_clause({pos(proj[0]), pos(proj[1]), pos(proj[2])});
  Budget budget;
  HashSampler sampler({cnf, proj});
  std::set<uint64_t> seen;
  for (int d = 0; d < 300; d++) {
    SampleResult s = sampler.sample(derive_seed(31, 4, d), budget);
    seen.insert(bits_value(s.assignment, proj));
  }
  REQUIRE(seen.size() == 7);
}

TEST_CASE("sampling oracles are deterministic per seed")
{
  Specification spec = make_factorization_spec(4);
  DoubledFormula g = build_g(spec);
  Budget budget;
  ExactSamplingOracle a, b;
  for (int i = 0; i < 10; i++) {
    SampleResult ra = a.sample(g.formula, 0.16, 1000 + i, budget);
    SampleResult rb = b.sample(g.formula, 0.16, 1000 + i, budget);
    REQUIRE(ra.assignment == rb.assignment);
  }
}
