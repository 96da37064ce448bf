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

#ifndef SKOLEMCOUNT_TESTUTIL_HPP
#define SKOLEMCOUNT_TESTUTIL_HPP

#include <cstdint>
#include <set>
#include <vector>

#include "skolemcount/naive.hpp"
#include "skolemcount/rand.hpp"
#include "skolemcount/types.hpp"

namespace skolemcount::test {

/// Random CNF over `num_vars` variables; clause lengths 1..max_width.
inline Cnf random_cnf(uint32_t num_vars, uint32_t num_clauses,
                      uint32_t max_width, Rng& rng)
{
  Cnf cnf;
  cnf.num_vars = num_vars;
  for (uint32_t c = 0; c < num_clauses; c++) {
    uint32_t len = 1 + static_cast<uint32_t>(rng.below(max_width));
    std::vector<uint32_t> vars;
    while (vars.size() < std::min(len, num_vars)) {
      uint32_t v = 1 + static_cast<uint32_t>(rng.below(num_vars));
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
    }
    std::vector<Lit> lits;
    for (uint32_t v : vars)
      lits.push_back(rng.next_bit() ? neg(VarId{v}) : pos(VarId{v}));
    cnf.add_clause(std::move(lits));
  }
  return cnf;
}

/// Truth-table satisfiability for small formulas, with optional fixed
/// literals. Independent of the engine under test.
inline bool brute_satisfiable(const Cnf& cnf,
                              const std::vector<Lit>& fixed = {})
{
  std::vector<uint8_t> vals(cnf.num_vars + 1, 0);
  const uint64_t total = 1ULL << cnf.num_vars;
  for (uint64_t mask = 0; mask < total; mask++) {
    for (uint32_t v = 1; v <= cnf.num_vars; v++)
      vals[v] = (mask >> (v - 1)) & 1ULL;
    bool ok = true;
    for (const Lit& l : fixed)
      if ((vals[l.var.index] != 0) == l.negated) {
        ok = false;
        break;
      }
    if (ok && eval_cnf(cnf, vals)) return true;
  }
  return false;
}

/// Members of S2 for a specification: inputs admitting >= 2 outputs,
/// computed by exhaustive evaluation.
inline std::set<Assignment> brute_s2(const Specification& spec)
{
  std::set<Assignment> s2;
  const uint32_t n = spec.num_inputs();
  const uint64_t sig_total = 1ULL << n;
  for (uint64_t smask = 0; smask < sig_total; smask++) {
    std::vector<Lit> units;
    Assignment sigma;
    for (uint32_t i = 0; i < n; i++) {
      bool bit = (smask >> i) & 1ULL;
      sigma.set(spec.inputs[i], bit);
      units.push_back(bit ? pos(spec.inputs[i]) : neg(spec.inputs[i]));
    }
    if (naive_model_count(spec.cnf, units) >= 2) s2.insert(sigma);
  }
  return s2;
}

/// Integer value of an assignment over an ordered bit vector (LSB first).
inline uint64_t bits_value(const Assignment& a, const VarSet& vars)
{
  uint64_t v = 0;
  for (size_t i = 0; i < vars.size(); i++)
    if (a.at(vars[i])) v |= 1ULL << i;
  return v;
}

}  // namespace skolemcount::test

#endif
