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

#ifndef SKOLEMCOUNT_ENUMERATE_HPP
#define SKOLEMCOUNT_ENUMERATE_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "budget.hpp"
#include "solver.hpp"
#include "types.hpp"

namespace skolemcount {

struct EnumerationResult {
  std::vector<Assignment> models;  // distinct projected models
  bool overflow = false;           // true iff more than `limit` exist
};

/// AllSAT over the projection set: repeatedly solve and block the found
/// projection. Exhaustive when the projected model count is within `limit`;
/// otherwise returns the first `limit` models with the overflow flag set.
inline EnumerationResult enumerate_projected(
    const ProjectedFormula& pf,
    uint64_t limit = std::numeric_limits<uint64_t>::max(),
    Budget* budget = nullptr, SolverConfig cfg = {})
{
  EnumerationResult out;
  Solver solver(pf.cnf, cfg, budget);
  std::vector<Lit> block;
  while (solver.solve()) {
    if (out.models.size() == limit) {
      out.overflow = true;
      return out;
    }
    Assignment proj;
    block.clear();
    for (VarId v : pf.projection) {
      bool val = solver.model_value(v);
      proj.set(v, val);
      block.push_back(val ? neg(v) : pos(v));
    }
    out.models.push_back(std::move(proj));
    if (block.empty()) break;  // empty projection: single projected model
    solver.add_clause(block);
  }
  return out;
}

}  // namespace skolemcount

#endif
