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

#include "skolemcount/dimacs.hpp"
#include "skolemcount/gen.hpp"
#include "skolemcount/types.hpp"
#include "testutil.hpp"

using namespace skolemcount;

TEST_CASE("qdimacs basic parse")
{
  Specification spec = parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 2 0\n");
  REQUIRE(spec.inputs == VarSet{VarId{1}});
  REQUIRE(spec.outputs == VarSet{VarId{2}});
  REQUIRE(spec.cnf.num_vars == 2);
  REQUIRE(spec.cnf.clauses.size() == 1);
  REQUIRE(spec.cnf.clauses[0].literals ==
          std::vector<Lit>{pos(VarId{1}), pos(VarId{2})});
}

TEST_CASE("qdimacs free variables become inputs")
{
  Specification spec = parse_qdimacs("p cnf 2 1\ne 2 0\n1 2 0\n");
  REQUIRE(spec.inputs == VarSet{VarId{1}});
  REQUIRE(spec.outputs == VarSet{VarId{2}});
}

TEST_CASE("qdimacs rejects double quantification")
{
  REQUIRE_THROWS_AS(
      parse_qdimacs("p cnf 2 1\na 1 0\na 1 0\ne 2 0\n1 2 0\n"), ParseError);
  REQUIRE_THROWS_AS(parse_qdimacs("p cnf 2 1\na 1 0\ne 1 2 0\n1 2 0\n"),
                    ParseError);
}

TEST_CASE("qdimacs rejects quantifier alternation")
{
  REQUIRE_THROWS_AS(
      parse_qdimacs("p cnf 3 1\na 1 0\ne 2 0\na 3 0\n1 2 0\n"), ParseError);
}

TEST_CASE("qdimacs consecutive blocks of the same kind are one block")
{
  Specification spec =
      parse_qdimacs("p cnf 3 1\na 1 0\na 2 0\ne 3 0\n1 3 0\n");
  REQUIRE(spec.inputs == VarSet{VarId{1}, VarId{2}});
}

TEST_CASE("qdimacs parse failures")
{
  REQUIRE_THROWS_AS(parse_qdimacs("p dnf 2 1\n1 2 0\n"), ParseError);
  REQUIRE_THROWS_AS(parse_qdimacs("1 2 0\n"), ParseError);
  REQUIRE_THROWS_AS(parse_qdimacs("p cnf 2 1\ne 2 0\n1 3 0\n"), ParseError);
  REQUIRE_THROWS_AS(parse_qdimacs("p cnf 2 1\ne 2 0\n1 2\n"), ParseError);
  REQUIRE_THROWS_AS(parse_qdimacs("p cnf 2 1\na 1 2 0\n1 2 0\n"),
                    ParseError);  // empty output set
}

TEST_CASE("qdimacs drops tautologies with a warning")
{
  std::vector<std::string> warnings;
  Specification spec =
      parse_qdimacs("p cnf 2 2\ne 1 2 0\n1 -1 2 0\n1 2 0\n", &warnings);
  REQUIRE(spec.cnf.clauses.size() == 1);
  REQUIRE_FALSE(warnings.empty());
}

TEST_CASE("annotated dimacs basic parse")
{
  Specification spec =
      parse_dimacs_annotated("c x 1 0\nc y 2 0\np cnf 2 1\n1 2 0\n");
  REQUIRE(spec.inputs == VarSet{VarId{1}});
  REQUIRE(spec.outputs == VarSet{VarId{2}});
}

TEST_CASE("annotated dimacs rejects undeclared and overlapping variables")
{
  REQUIRE_THROWS_AS(
      parse_dimacs_annotated("c x 1 0\nc y 2 0\np cnf 3 1\n1 3 0\n"),
      ParseError);
  REQUIRE_THROWS_AS(
      parse_dimacs_annotated("c x 1 0\nc y 1 2 0\np cnf 2 1\n1 2 0\n"),
      ParseError);
}

TEST_CASE("both formats agree on the same instance")
{
  Specification a = parse_qdimacs("p cnf 3 2\na 1 0\ne 2 3 0\n1 2 0\n-2 3 0\n");
  Specification b = parse_dimacs_annotated(
      "c x 1 0\nc y 2 3 0\np cnf 3 2\n1 2 0\n-2 3 0\n");
  REQUIRE(a.cnf == b.cnf);
  REQUIRE(a.inputs == b.inputs);
  REQUIRE(a.outputs == b.outputs);
}

TEST_CASE("validate flags the spec invariants")
{
  Specification ok = parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 2 0\n");
  REQUIRE(validate(ok).empty());

  Specification no_outputs = ok;
  no_outputs.outputs.clear();
  auto diags = validate(no_outputs);
  REQUIRE_FALSE(diags.empty());
  REQUIRE(diags[0].find("empty output set") != std::string::npos);

  Specification bad_range = ok;
  bad_range.cnf.clauses[0].literals[0].var = VarId{9};
  diags = validate(bad_range);
  bool found = false;
  for (const auto& d : diags)
    if (d.find("out of range") != std::string::npos) found = true;
  REQUIRE(found);

  Specification overlap = ok;
  overlap.inputs = VarSet{VarId{1}, VarId{2}};
  diags = validate(overlap);
  found = false;
  for (const auto& d : diags)
    if (d.find("overlap") != std::string::npos) found = true;
  REQUIRE(found);
}

TEST_CASE("qdimacs round-trip preserves the specification")
{
  Rng rng(42);
  for (int iter = 0; iter < 100; iter++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.below(4));
    uint32_t m = 1 + static_cast<uint32_t>(rng.below(4));
    Specification spec = make_random_spec(
        n, m, 2 + static_cast<uint32_t>(rng.below(10)), 3, rng.next_u64());
    // parsing dedupes/drops, so normalize through one initial round-trip
    Specification first = parse_qdimacs(to_qdimacs(spec));
    Specification second = parse_qdimacs(to_qdimacs(first));
    REQUIRE(first.cnf == second.cnf);
    REQUIRE(first.inputs == second.inputs);
    REQUIRE(first.outputs == second.outputs);
  }
}

TEST_CASE("projected dimacs round-trip")
{
  ProjectedFormula pf;
  pf.cnf.num_vars = 3;
  pf.cnf.add_clause({pos(VarId{1}), neg(VarId{3})});
  pf.projection = {VarId{1}, VarId{2}};
  ProjectedFormula back = parse_projected_dimacs(to_projected_dimacs(pf));
  REQUIRE(back.cnf == pf.cnf);
  REQUIRE(back.projection == pf.projection);
}

TEST_CASE("assignment container behaves like a sorted map")
{
  Assignment a;
  a.set(VarId{5}, true);
  a.set(VarId{2}, false);
  a.set(VarId{5}, false);
  REQUIRE(a.size() == 2);
  REQUIRE(a.at(VarId{5}) == false);
  REQUIRE_FALSE(a.contains(VarId{1}));
  REQUIRE_THROWS_AS(a.at(VarId{1}), std::out_of_range);
  REQUIRE(a.binds_exactly(VarSet{VarId{2}, VarId{5}}));
  REQUIRE_FALSE(a.binds_exactly(VarSet{VarId{2}}));

  Assignment b;
  b.set(VarId{2}, false);
  b.set(VarId{5}, false);
  REQUIRE(a == b);
}
