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

#ifndef SKOLEMCOUNT_TRANSFORM_HPP
#define SKOLEMCOUNT_TRANSFORM_HPP

#include <map>
#include <vector>

#include "types.hpp"

namespace skolemcount {

// Formula surgery used by every counting algorithm in this library:
// the doubled formula G(X,Y,Y') whose X-projection is the set of inputs
// admitting at least two outputs, and the input cofactor F /\ (X = sigma).

/// G(X,Y,Y') = F(X,Y) /\ F(X,Y') /\ (Y != Y'), projected on X.
struct DoubledFormula {
  ProjectedFormula formula;          // projection equals the spec's inputs
  std::map<VarId, VarId> y_map;      // original output -> primed copy
  VarSet aux;                        // difference indicators, one per output
};

/// Copy of `cnf` with every occurrence of a variable in `vars` replaced by
/// a fresh variable allocated above the current range. Returns the copy and
/// the renaming map.
inline std::pair<Cnf, std::map<VarId, VarId>> fresh_rename(const Cnf& cnf,
                                                           const VarSet& vars)
{
  for (VarId v : vars)
    if (v.index == 0 || v.index > cnf.num_vars)
      throw SpecError("fresh_rename: variable out of range");
  Cnf out = cnf;
  std::map<VarId, VarId> renaming;
  for (VarId v : vars) renaming[v] = out.new_var();
  for (Clause& c : out.clauses)
    for (Lit& l : c.literals) {
      auto it = renaming.find(l.var);
      if (it != renaming.end()) l.var = it->second;
    }
  return {std::move(out), std::move(renaming)};
}

/// Build the doubled formula. The disequality is encoded with one
/// indicator d_i per output bit (three clauses each) plus a single wide
/// OR clause, so it adds exactly m variables and 3m+1 clauses on top of
/// the two copies of F. The d_i direction d_i -> (y_i xor y_i') keeps the
/// X-projection exact; their converse direction is only partially encoded,
/// which is harmless under projection.
inline DoubledFormula build_g(const Specification& spec)
{
  DoubledFormula g;

  auto [doubled, y_map] = fresh_rename(spec.cnf, spec.outputs);
  // conjoin the original copy
  Cnf cnf = spec.cnf;
  cnf.num_vars = doubled.num_vars;
  for (const Clause& c : doubled.clauses) cnf.clauses.push_back(c);

  std::vector<Lit> big_or;
  VarSet aux;
  for (VarId y : spec.outputs) {
    VarId yp = y_map.at(y);
    VarId d = cnf.new_var();
    cnf.add_clause({neg(d), pos(y), pos(yp)});
    cnf.add_clause({neg(d), neg(y), neg(yp)});
    cnf.add_clause({pos(d), pos(y), neg(yp)});
    big_or.push_back(pos(d));
    aux.push_back(d);
  }
  cnf.add_clause(std::move(big_or));

  g.formula = ProjectedFormula{std::move(cnf), spec.inputs};
  g.y_map = std::move(y_map);
  g.aux = make_var_set(std::move(aux));
  return g;
}

/// F with every input pinned to sigma's value via unit clauses. The models
/// of the result, restricted to the outputs, are exactly the outputs
/// consistent with sigma.
inline Cnf cofactor(const Specification& spec, const Assignment& sigma)
{
  if (!sigma.total_over(spec.inputs))
    throw SpecError("cofactor: assignment is not total over the inputs");
  Cnf out = spec.cnf;
  for (VarId v : spec.inputs)
    out.add_clause({sigma.at(v) ? pos(v) : neg(v)});
  return out;
}

}  // namespace skolemcount

#endif
