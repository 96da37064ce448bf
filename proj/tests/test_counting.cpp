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

#include "skolemcount/counting.hpp"
#include "skolemcount/gen.hpp"
#include "testutil.hpp"

using namespace skolemcount;
using namespace skolemcount::test;

static ProjectedFormula free_formula(uint32_t bits)
{
  Cnf cnf;
  VarSet proj;
  for (uint32_t i = 0; i < bits; i++) proj.push_back(cnf.new_var());
  return {std::move(cnf), std::move(proj)};
}

TEST_CASE("exact count on tiny formulas")
{
  Budget budget;
  ProjectedFormula pf;
  pf.cnf.num_vars = 2;
  pf.cnf.add_clause({pos(VarId{1}), pos(VarId{2})});
  pf.projection = {VarId{1}, VarId{2}};
  CountResult r = exact_count(pf, budget);
  REQUIRE(r.count == 3);
  REQUIRE(r.is_exact);
  REQUIRE(r.epsilon == 0.0);
  REQUIRE(r.delta == 0.0);
  REQUIRE(r.sat_calls >= 4);  // three models plus the closing unsat call
}

TEST_CASE("exact count of an unsatisfiable formula is zero")
{
  Budget budget;
  ProjectedFormula pf;
  pf.cnf.num_vars = 1;
  pf.cnf.add_clause({pos(VarId{1})});
  pf.cnf.add_clause({neg(VarId{1})});
  pf.projection = {VarId{1}};
  REQUIRE(exact_count(pf, budget).count == 0);
}

TEST_CASE("exact count agrees with the truth table on random instances")
{
  Rng rng(31);
  Budget budget;
  for (int iter = 0; iter < 100; iter++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.below(9));
    Cnf cnf = random_cnf(n, 1 + static_cast<uint32_t>(rng.below(3 * n)), 3,
                         rng);
    VarSet proj;
    for (uint32_t v = 1; v <= n; v++)
      if (rng.next_bit()) proj.push_back(VarId{v});
    CountResult got = exact_count({cnf, proj}, budget);
    REQUIRE(got.count ==
            mpz_class(static_cast<unsigned long>(
                brute_projected_models(cnf, proj).size())));
  }
}

TEST_CASE("exact counting is monotone under added unit clauses")
{
  Rng rng(32);
  Budget budget;
  for (int iter = 0; iter < 60; iter++) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(8));
    Cnf cnf = random_cnf(n, 1 + static_cast<uint32_t>(rng.below(2 * n)), 3,
                         rng);
    VarSet proj;
    for (uint32_t v = 1; v <= n; v++) proj.push_back(VarId{v});
    CountResult before = exact_count({cnf, proj}, budget);
    uint32_t v = 1 + static_cast<uint32_t>(rng.below(n));
    Cnf restricted = cnf;
    restricted.add_clause({rng.next_bit() ? pos(VarId{v}) : neg(VarId{v})});
    CountResult after = exact_count({restricted, proj}, budget);
    REQUIRE(after.count <= before.count);
  }
}

TEST_CASE("approximate counter answers small counts exactly")
{
  Budget budget;

  // single projected model
  Cnf one;
  VarId v = one.new_var();
  one.add_clause({pos(v)});
  CountResult r1 = approx_count({one, {v}}, 0.8, 0.2, 7, budget);
  REQUIRE(r1.is_exact);
  REQUIRE(r1.count == 1);

  // unsatisfiable: zero with certainty
  Cnf none;
  VarId w = none.new_var();
  none.add_clause({pos(w)});
  none.add_clause({neg(w)});
  CountResult r0 = approx_count({none, {w}}, 0.8, 0.2, 7, budget);
  REQUIRE(r0.is_exact);
  REQUIRE(r0.count == 0);

  // seven models: below every reasonable pivot
  Cnf seven;
  VarSet proj;
  for (int i = 0; i < 3; i++) proj.push_back(seven.new_var());
  seven.add_clause({pos(proj[0]), pos(proj[1]), pos(proj[2])});
  CountResult r7 = approx_count({seven, proj}, 0.8, 0.2, 7, budget);
  REQUIRE(r7.is_exact);
  REQUIRE(r7.count == 7);
}

TEST_CASE("approximate counter parameter validation")
{
  Budget budget;
  ProjectedFormula pf = free_formula(4);
  REQUIRE_THROWS_AS(approx_count(pf, 0.0, 0.2, 1, budget), SpecError);
  REQUIRE_THROWS_AS(approx_count(pf, 0.5, 0.0, 1, budget), SpecError);
  REQUIRE_THROWS_AS(approx_count(pf, 0.5, 1.0, 1, budget), SpecError);
}

TEST_CASE("hashing estimates track a known power-of-two count")
{
  // light version of the statistical acceptance gate: 2^10 projected
  // models, epsilon 0.8 / delta 0.2, checked over a few dozen seeds
  Budget budget;
  ProjectedFormula pf = free_formula(10);
  const double lo = 1024.0 / 1.8, hi = 1024.0 * 1.8;
  int inside = 0;
  const int trials = 40;
  for (int s = 0; s < trials; s++) {
    CountResult r = approx_count(pf, 0.8, 0.2, 1000 + s, budget);
    REQUIRE_FALSE(r.is_exact);
    double est = r.linear_value();
    if (est >= lo && est <= hi) inside++;
  }
  REQUIRE(inside >= 28);  // 0.8 - 3 sigma on 40 trials
}

TEST_CASE("doubled-formula count on the factorization instance")
{
  // epsilon_g at the paper's operating point keeps the pivot far above 7,
  // so the short-circuit answers exactly
  Budget budget;
  Specification spec = make_factorization_spec(5);
  DoubledFormula g = build_g(spec);
  CountResult r = count_g(g, 0.08, 0.04, 3, budget);
  REQUIRE(r.is_exact);
  REQUIRE(r.count == 7);
}

TEST_CASE("doubled-formula count is zero for functional specifications")
{
  Budget budget;
  DoubledFormula g = build_g(make_xor_identity_spec());
  CountResult r = count_g(g, 0.08, 0.04, 3, budget);
  REQUIRE(r.count == 0);

  DoubledFormula gu = build_g(make_unsat_spec());
  REQUIRE(count_g(gu, 0.08, 0.04, 3, budget).count == 0);
}

TEST_CASE("parity constraints encode the advertised relation")
{
  // x1 xor x2 = 1 over a free 2-bit space leaves exactly the two odd
  // assignments
  Cnf cnf;
  VarId a = cnf.new_var(), b = cnf.new_var();
  detail::add_parity_constraint(cnf, {a, b}, true);
  std::set<Assignment> models = brute_projected_models(cnf, {a, b});
  REQUIRE(models.size() == 2);
  for (const Assignment& m : models) REQUIRE(m.at(a) != m.at(b));

  // empty support: rhs 0 is a no-op, rhs 1 is a contradiction
  Cnf empty_ok;
  empty_ok.new_var();
  detail::add_parity_constraint(empty_ok, {}, false);
  REQUIRE(solve(empty_ok).status == Status::Sat);
  Cnf empty_bad;
  empty_bad.new_var();
  detail::add_parity_constraint(empty_bad, {}, true);
  REQUIRE(solve(empty_bad).status == Status::Unsat);
}

TEST_CASE("median round count honours the confidence parameter")
{
  REQUIRE(detail::median_rounds(0.5) == 1);
  int r1 = detail::median_rounds(0.2);
  int r2 = detail::median_rounds(0.01);
  int r3 = detail::median_rounds(1e-4);
  REQUIRE(r1 >= 1);
  REQUIRE(r2 > r1);
  REQUIRE(r3 > r2);
  REQUIRE(r1 % 2 == 1);
  REQUIRE(r3 % 2 == 1);
  REQUIRE(detail::binomial_tail_ge(r3, 0.36, (r3 + 1) / 2) <= 1e-4);
}

TEST_CASE("log helpers match gmp arithmetic")
{
  mpz_class big = 1;
  mpz_mul_2exp(big.get_mpz_t(), big.get_mpz_t(), 300);
  big += 12345;
  double l = log2_of_mpz(big);
  REQUIRE(l == Catch::Approx(300.0).margin(1e-9));
  REQUIRE(log2_of_mpz(mpz_class(288)) ==
          Catch::Approx(std::log2(288.0)).epsilon(1e-12));
  REQUIRE(mpz_from_log2(10.0) == 1024);
  REQUIRE(mpz_from_log2(std::log2(288.0)) == 288);
}
