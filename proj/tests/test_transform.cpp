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
#include <set>

#include "skolemcount/dimacs.hpp"
#include "skolemcount/enumerate.hpp"
#include "skolemcount/gen.hpp"
#include "skolemcount/transform.hpp"
#include "testutil.hpp"

using namespace skolemcount;
using namespace skolemcount::test;

static Specification tiny_or_spec()
{
  // (x1 or y2), inputs {1}, outputs {2}
  return parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 2 0\n");
}

TEST_CASE("doubled formula projects to inputs with two or more outputs")
{
  Specification spec = tiny_or_spec();
  DoubledFormula g = build_g(spec);
  REQUIRE(g.formula.projection == spec.inputs);

  EnumerationResult models = enumerate_projected(g.formula);
  REQUIRE(models.models.size() == 1);
  REQUIRE(models.models[0].at(VarId{1}) == true);  // only x1=1 admits both y
}

TEST_CASE("doubled formula size accounting")
{
  Specification spec = tiny_or_spec();
  DoubledFormula g = build_g(spec);
  const size_t m = spec.outputs.size();
  REQUIRE(g.aux.size() == m);
  REQUIRE(g.y_map.size() == m);
  // two copies of F plus the disequality: m indicators, 3m+1 clauses
  REQUIRE(g.formula.cnf.clauses.size() ==
          2 * spec.cnf.clauses.size() + 3 * m + 1);
  REQUIRE(g.formula.cnf.num_vars == spec.cnf.num_vars + 2 * m);

  Specification fact = make_factorization_spec(4);
  DoubledFormula gf = build_g(fact);
  const size_t mf = fact.outputs.size();
  REQUIRE(gf.formula.cnf.clauses.size() ==
          2 * fact.cnf.clauses.size() + 3 * mf + 1);
  REQUIRE(gf.aux.size() == mf);
}

TEST_CASE("unsatisfiable specification doubles to an unsatisfiable formula")
{
  Specification spec = make_unsat_spec();
  DoubledFormula g = build_g(spec);
  REQUIRE(solve(g.formula.cnf).status == Status::Unsat);
}

TEST_CASE("projection of G equals the brute-force two-output set")
{
  // exhaustive cross-check of the doubled construction on random specs
  Rng rng(2024);
  int nonempty = 0;
  for (int iter = 0; iter < 200; iter++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.below(5));
    uint32_t m = 1 + static_cast<uint32_t>(rng.below(5));
    if (n + m > 12) continue;
    Specification spec = make_random_spec(
        n, m, 1 + static_cast<uint32_t>(rng.below(2 * (n + m))), 3,
        rng.next_u64());
    std::set<Assignment> want = brute_s2(spec);
    EnumerationResult got = enumerate_projected(build_g(spec).formula);
    std::set<Assignment> got_set(got.models.begin(), got.models.end());
    INFO("iteration " << iter);
    REQUIRE(got_set == want);
    if (!want.empty()) nonempty++;
  }
  REQUIRE(nonempty > 50);  // panel exercised both empty and non-empty S2
}

TEST_CASE("factorization instance matches its published projection")
{
  Specification spec = make_factorization_spec(5);
  REQUIRE(validate(spec).empty());
  DoubledFormula g = build_g(spec);
  EnumerationResult models = enumerate_projected(g.formula);
  REQUIRE(models.models.size() == 7);

  std::set<uint64_t> values;
  for (const Assignment& a : models.models)
    values.insert(bits_value(a, spec.inputs));
  REQUIRE(values == std::set<uint64_t>{12, 16, 18, 20, 24, 28, 30});
}

TEST_CASE("cofactor pins the inputs and keeps the output space")
{
  Specification spec = make_factorization_spec(5);
  VarSet y01;  // the ten named output bits come first in the builder
  for (uint32_t v = 6; v <= 15; v++) y01.push_back(VarId{v});

  auto sigma_of = [&](uint64_t value) {
    Assignment sigma;
    for (size_t i = 0; i < spec.inputs.size(); i++)
      sigma.set(spec.inputs[i], (value >> i) & 1ULL);
    return sigma;
  };

  Cnf cof30 = cofactor(spec, sigma_of(30));
  REQUIRE(cof30.num_vars == spec.cnf.num_vars);
  EnumerationResult sols30 = enumerate_projected({cof30, y01});
  REQUIRE(sols30.models.size() == 3);
  std::set<std::pair<uint64_t, uint64_t>> pairs;
  VarSet y0(y01.begin(), y01.begin() + 5);
  VarSet y1(y01.begin() + 5, y01.end());
  for (const Assignment& a : sols30.models)
    pairs.insert({bits_value(a, y0), bits_value(a, y1)});
  REQUIRE(pairs == std::set<std::pair<uint64_t, uint64_t>>{
                       {2, 15}, {3, 10}, {5, 6}});

  Cnf cof16 = cofactor(spec, sigma_of(16));
  EnumerationResult sols16 = enumerate_projected({cof16, y01});
  REQUIRE(sols16.models.size() == 2);
  pairs.clear();
  for (const Assignment& a : sols16.models)
    pairs.insert({bits_value(a, y0), bits_value(a, y1)});
  REQUIRE(pairs == std::set<std::pair<uint64_t, uint64_t>>{{2, 8}, {4, 4}});
}

TEST_CASE("cofactor on the tiny instance")
{
  Specification spec = tiny_or_spec();
  Assignment sigma;
  sigma.set(VarId{1}, true);
  Cnf cof = cofactor(spec, sigma);
  EnumerationResult sols = enumerate_projected({cof, spec.outputs});
  REQUIRE(sols.models.size() == 2);
}

TEST_CASE("cofactor rejects partial assignments")
{
  Specification spec = make_factorization_spec(5);
  Assignment partial;
  partial.set(spec.inputs[0], true);
  REQUIRE_THROWS_AS(cofactor(spec, partial), SpecError);
}

TEST_CASE("fresh renaming")
{
  Cnf cnf;
  VarId x1 = cnf.new_var();
  VarId y2 = cnf.new_var();
  cnf.add_clause({pos(x1), pos(y2)});

  SECTION("single variable")
  {
    auto [renamed, map] = fresh_rename(cnf, {y2});
    REQUIRE(map.size() == 1);
    REQUIRE(map.at(y2) == VarId{3});
    REQUIRE(renamed.num_vars == 3);
    REQUIRE(renamed.clauses[0].literals ==
            std::vector<Lit>{pos(x1), pos(VarId{3})});
  }
  SECTION("empty set is the identity")
  {
    auto [renamed, map] = fresh_rename(cnf, {});
    REQUIRE(map.empty());
    REQUIRE(renamed == cnf);
  }
  SECTION("renaming everything doubles the range")
  {
    Cnf three;
    three.new_var();
    three.new_var();
    three.new_var();
    three.add_clause({pos(VarId{1}), neg(VarId{2}), pos(VarId{3})});
    auto [renamed, map] = fresh_rename(three, vars_of(three));
    REQUIRE(renamed.num_vars == 6);
    REQUIRE(renamed.clauses[0].literals.size() == 3);
    for (const Lit& l : renamed.clauses[0].literals)
      REQUIRE(l.var.index > 3);
  }
  SECTION("out-of-range variables are rejected")
  {
    REQUIRE_THROWS_AS(fresh_rename(cnf, {VarId{9}}), SpecError);
  }
}

TEST_CASE("G emission carries the projection comment")
{
  Specification spec = tiny_or_spec();
  DoubledFormula g = build_g(spec);
  ProjectedFormula back =
      parse_projected_dimacs(to_projected_dimacs(g.formula));
  REQUIRE(back.projection == spec.inputs);
  REQUIRE(back.cnf == g.formula.cnf);
}

TEST_CASE("cofactor count never exceeds the output space")
{
  Rng rng(5);
  for (int iter = 0; iter < 50; iter++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.below(3));
    uint32_t m = 1 + static_cast<uint32_t>(rng.below(4));
    Specification spec =
        make_random_spec(n, m, 1 + static_cast<uint32_t>(rng.below(8)), 3,
                         rng.next_u64());
    Assignment sigma;
    for (VarId v : spec.inputs) sigma.set(v, rng.next_bit());
    Cnf cof = cofactor(spec, sigma);
    EnumerationResult sols = enumerate_projected({cof, spec.outputs});
    REQUIRE(sols.models.size() <= (1ULL << m));
  }
}
