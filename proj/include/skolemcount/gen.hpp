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

#ifndef SKOLEMCOUNT_GEN_HPP
#define SKOLEMCOUNT_GEN_HPP

#include <deque>
#include <vector>

#include "rand.hpp"
#include "types.hpp"

namespace skolemcount {

// Built-in instance families for tests and benchmark demos. Circuits are
// Tseitin-encoded with full biconditional gates so every auxiliary
// variable is a function of the circuit inputs; auxiliaries are
// existentially quantified alongside the real outputs, which leaves all
// projected counts untouched.

class CnfBuilder {
 public:
  VarId new_var() { return cnf_.new_var(); }

  void clause(std::initializer_list<Lit> lits) { cnf_.add_clause(lits); }
  void clause(std::vector<Lit> lits) { cnf_.add_clause(std::move(lits)); }

  Lit and_gate(Lit a, Lit b)
  {
    VarId g = new_var();
    cnf_.add_clause({neg(g), a});
    cnf_.add_clause({neg(g), b});
    cnf_.add_clause({pos(g), ~a, ~b});
    aux_.push_back(g);
    return pos(g);
  }

  Lit or_gate(Lit a, Lit b) { return ~and_gate(~a, ~b); }

  Lit xor_gate(Lit a, Lit b)
  {
    VarId g = new_var();
    cnf_.add_clause({neg(g), a, b});
    cnf_.add_clause({neg(g), ~a, ~b});
    cnf_.add_clause({pos(g), ~a, b});
    cnf_.add_clause({pos(g), a, ~b});
    aux_.push_back(g);
    return pos(g);
  }

  // (sum, carry)
  std::pair<Lit, Lit> half_adder(Lit a, Lit b)
  {
    return {xor_gate(a, b), and_gate(a, b)};
  }

  std::pair<Lit, Lit> full_adder(Lit a, Lit b, Lit c)
  {
    Lit ab = xor_gate(a, b);
    Lit sum = xor_gate(ab, c);
    Lit carry = or_gate(and_gate(a, b), and_gate(ab, c));
    return {sum, carry};
  }

  void require(Lit l) { cnf_.add_clause({l}); }
  void require_equal(Lit a, Lit b)
  {
    cnf_.add_clause({~a, b});
    cnf_.add_clause({a, ~b});
  }

  const Cnf& cnf() const { return cnf_; }
  Cnf take_cnf() { return std::move(cnf_); }
  const std::vector<VarId>& aux_vars() const { return aux_; }

 private:
  Cnf cnf_;
  std::vector<VarId> aux_;
};

/// Unsigned school-book multiplier: returns the 2*width product bits,
/// least significant first.
inline std::vector<Lit> multiplier(CnfBuilder& b, const std::vector<Lit>& y0,
                                   const std::vector<Lit>& y1)
{
  const size_t w = y0.size();
  // one slack column for the structurally possible (semantically zero)
  // carry out of the top bit
  std::vector<std::deque<Lit>> columns(2 * w + 1);
  for (size_t i = 0; i < w; i++)
    for (size_t j = 0; j < w; j++)
      columns[i + j].push_back(b.and_gate(y0[i], y1[j]));

  std::vector<Lit> out;
  for (size_t k = 0; k < 2 * w; k++) {
    auto& col = columns[k];
    while (col.size() > 1) {
      if (col.size() >= 3) {
        Lit a = col.front();
        col.pop_front();
        Lit c1 = col.front();
        col.pop_front();
        Lit c2 = col.front();
        col.pop_front();
        auto [sum, carry] = b.full_adder(a, c1, c2);
        col.push_back(sum);
        columns[k + 1].push_back(carry);
      } else {
        Lit a = col.front();
        col.pop_front();
        Lit c1 = col.front();
        col.pop_front();
        auto [sum, carry] = b.half_adder(a, c1);
        col.push_back(sum);
        columns[k + 1].push_back(carry);
      }
    }
    if (col.empty()) {
      // pad with a forced-false wire
      VarId f = b.new_var();
      b.require(neg(f));
      out.push_back(pos(f));
    } else {
      out.push_back(col.front());
    }
  }
  return out;
}

/// a <= b over equal-width unsigned vectors.
inline void require_leq(CnfBuilder& b, const std::vector<Lit>& a,
                        const std::vector<Lit>& eb)
{
  VarId t = b.new_var();
  b.require(pos(t));
  Lit gt = neg(t);   // accumulated "a > b on inspected prefix"
  Lit eq = pos(t);   // accumulated "a == b on inspected prefix"
  for (size_t k = a.size(); k-- > 0;) {
    Lit here_gt = b.and_gate(a[k], ~eb[k]);
    gt = b.or_gate(gt, b.and_gate(eq, here_gt));
    eq = b.and_gate(eq, ~b.xor_gate(a[k], eb[k]));
  }
  b.require(~gt);
}

/// Factorization specification over `width`-bit integers: the input X must
/// equal Y0*Y1 with 2 <= Y0 <= Y1. Inputs are the X bits; outputs are the
/// Y bits plus the circuit auxiliaries.
inline Specification make_factorization_spec(uint32_t width = 5)
{
  CnfBuilder b;
  std::vector<Lit> x, y0, y1;
  for (uint32_t i = 0; i < width; i++) x.push_back(pos(b.new_var()));
  for (uint32_t i = 0; i < width; i++) y0.push_back(pos(b.new_var()));
  for (uint32_t i = 0; i < width; i++) y1.push_back(pos(b.new_var()));

  std::vector<Lit> prod = multiplier(b, y0, y1);
  for (uint32_t k = 0; k < width; k++) b.require_equal(prod[k], x[k]);
  for (size_t k = width; k < prod.size(); k++) b.require(~prod[k]);

  // Y0 >= 2: some bit above the lowest is set.
  std::vector<Lit> high(y0.begin() + 1, y0.end());
  b.clause(high);

  require_leq(b, y0, y1);

  Specification spec;
  spec.cnf = b.take_cnf();
  VarSet inputs, outputs;
  for (const Lit& l : x) inputs.push_back(l.var);
  for (const Lit& l : y0) outputs.push_back(l.var);
  for (const Lit& l : y1) outputs.push_back(l.var);
  for (VarId v : b.aux_vars()) outputs.push_back(v);
  // forced-false pad wires and the comparator seed are auxiliaries too
  VarSet named = set_union(make_var_set(inputs), make_var_set(outputs));
  for (uint32_t v = 1; v <= spec.cnf.num_vars; v++)
    if (!set_contains(named, VarId{v})) outputs.push_back(VarId{v});
  spec.inputs = make_var_set(std::move(inputs));
  spec.outputs = make_var_set(std::move(outputs));
  return spec;
}

/// y <-> x1 xor x2: every input has exactly one admissible output, so the
/// Skolem function is unique.
inline Specification make_xor_identity_spec()
{
  Cnf cnf;
  VarId x1 = cnf.new_var(), x2 = cnf.new_var(), y = cnf.new_var();
  cnf.add_clause({neg(y), pos(x1), pos(x2)});
  cnf.add_clause({neg(y), neg(x1), neg(x2)});
  cnf.add_clause({pos(y), neg(x1), pos(x2)});
  cnf.add_clause({pos(y), pos(x1), neg(x2)});
  return Specification{std::move(cnf), {x1, x2}, {y}};
}

inline Specification make_unsat_spec()
{
  Cnf cnf;
  VarId x = cnf.new_var(), y = cnf.new_var();
  cnf.add_clause({pos(x), pos(y)});
  cnf.add_clause({pos(x), neg(y)});
  cnf.add_clause({neg(x), pos(y)});
  cnf.add_clause({neg(x), neg(y)});
  return Specification{std::move(cnf), {x}, {y}};
}

/// Lightly constrained specification with wide-open outputs: every input
/// admits close to 2^m outputs, so the doubled formula's projection covers
/// all 2^n inputs while per-input counts stay huge. Exhaustive enumeration
/// is hopeless beyond small n; the randomized estimator is not.
inline Specification make_wide_spec(uint32_t n, uint32_t m)
{
  Cnf cnf;
  VarSet inputs, outputs;
  for (uint32_t i = 0; i < n; i++) inputs.push_back(cnf.new_var());
  for (uint32_t i = 0; i < m; i++) outputs.push_back(cnf.new_var());
  if (m >= 2) {
    cnf.add_clause({pos(outputs[0]), pos(outputs[1])});
    cnf.add_clause({neg(outputs[m - 2]), neg(outputs[m - 1])});
  }
  if (n >= 1 && m >= 3)
    cnf.add_clause({pos(inputs[0]), neg(inputs[n - 1]), pos(outputs[2])});
  return Specification{std::move(cnf), std::move(inputs),
                       std::move(outputs)};
}

/// Random k-CNF specification with an n/m variable split; used by the
/// property suites. Clauses draw variables without replacement.
inline Specification make_random_spec(uint32_t n, uint32_t m,
                                      uint32_t num_clauses, uint32_t width,
                                      uint64_t seed)
{
  if (m == 0) throw SpecError("make_random_spec: m must be at least 1");
  Cnf cnf;
  VarSet inputs, outputs;
  for (uint32_t i = 0; i < n; i++) inputs.push_back(cnf.new_var());
  for (uint32_t i = 0; i < m; i++) outputs.push_back(cnf.new_var());
  Rng rng(splitmix64(seed ^ 0x5eedULL));
  const uint32_t total = n + m;
  for (uint32_t c = 0; c < num_clauses; c++) {
    std::vector<uint32_t> vars;
    uint32_t len = 1 + static_cast<uint32_t>(rng.below(width));
    while (vars.size() < std::min(len, total)) {
      uint32_t v = 1 + static_cast<uint32_t>(rng.below(total));
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
    }
    std::vector<Lit> lits;
    for (uint32_t v : vars)
      lits.push_back(rng.next_bit() ? neg(VarId{v}) : pos(VarId{v}));
    cnf.add_clause(std::move(lits));
  }
  return Specification{std::move(cnf), std::move(inputs),
                       std::move(outputs)};
}

}  // namespace skolemcount

#endif
