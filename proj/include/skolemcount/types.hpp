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

#ifndef SKOLEMCOUNT_TYPES_HPP
#define SKOLEMCOUNT_TYPES_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skolemcount {

/// 1-based variable id, DIMACS convention. Index 0 is reserved/invalid.
struct VarId {
  uint32_t index = 0;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

struct Lit {
  VarId var;
  bool negated = false;
  friend auto operator<=>(const Lit&, const Lit&) = default;
};

inline Lit pos(VarId v) { return Lit{v, false}; }
inline Lit neg(VarId v) { return Lit{v, true}; }
inline Lit operator~(Lit l) { return Lit{l.var, !l.negated}; }

inline int to_dimacs(Lit l)
{
  return l.negated ? -static_cast<int>(l.var.index)
                   : static_cast<int>(l.var.index);
}

inline Lit lit_from_dimacs(int n)
{
  if (n == 0) throw std::invalid_argument("DIMACS literal cannot be 0");
  return n > 0 ? pos(VarId{static_cast<uint32_t>(n)})
               : neg(VarId{static_cast<uint32_t>(-n)});
}

struct Clause {
  std::vector<Lit> literals;
  friend bool operator==(const Clause&, const Clause&) = default;
};

inline bool is_tautology(const Clause& c)
{
  for (const Lit& a : c.literals)
    for (const Lit& b : c.literals)
      if (a.var == b.var && a.negated != b.negated) return true;
  return false;
}

struct Cnf {
  uint32_t num_vars = 0;
  std::vector<Clause> clauses;

  VarId new_var() { return VarId{++num_vars}; }

  void add_clause(std::vector<Lit> lits)
  {
    clauses.push_back(Clause{std::move(lits)});
  }
  void add_clause(std::initializer_list<Lit> lits)
  {
    clauses.push_back(Clause{std::vector<Lit>(lits)});
  }

  friend bool operator==(const Cnf&, const Cnf&) = default;
};

/// Sorted, duplicate-free set of variable ids.
using VarSet = std::vector<VarId>;

inline VarSet make_var_set(std::vector<VarId> vars)
{
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

inline bool set_contains(const VarSet& s, VarId v)
{
  return std::binary_search(s.begin(), s.end(), v);
}

inline bool sets_disjoint(const VarSet& a, const VarSet& b)
{
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

inline VarSet set_union(const VarSet& a, const VarSet& b)
{
  VarSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

/// All variables occurring in some clause of the formula.
inline VarSet vars_of(const Cnf& cnf)
{
  std::vector<VarId> vs;
  for (const Clause& c : cnf.clauses)
    for (const Lit& l : c.literals) vs.push_back(l.var);
  return make_var_set(std::move(vs));
}

/// Partial or total truth assignment, kept sorted by variable id.
class Assignment {
 public:
  Assignment() = default;

  void set(VarId v, bool value)
  {
    auto it = std::lower_bound(
        bindings_.begin(), bindings_.end(), v,
        [](const auto& p, VarId w) { return p.first < w; });
    if (it != bindings_.end() && it->first == v)
      it->second = value;
    else
      bindings_.insert(it, {v, value});
  }

  std::optional<bool> get(VarId v) const
  {
    auto it = std::lower_bound(
        bindings_.begin(), bindings_.end(), v,
        [](const auto& p, VarId w) { return p.first < w; });
    if (it != bindings_.end() && it->first == v) return it->second;
    return std::nullopt;
  }

  bool contains(VarId v) const { return get(v).has_value(); }

  bool at(VarId v) const
  {
    auto b = get(v);
    if (!b) throw std::out_of_range("variable not bound in assignment");
    return *b;
  }

  size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }

  const std::vector<std::pair<VarId, bool>>& bindings() const
  {
    return bindings_;
  }

  /// True iff the assignment binds exactly the variables of `s`.
  bool binds_exactly(const VarSet& s) const
  {
    if (bindings_.size() != s.size()) return false;
    for (size_t i = 0; i < s.size(); i++)
      if (bindings_[i].first != s[i]) return false;
    return true;
  }

  bool total_over(const VarSet& s) const
  {
    for (VarId v : s)
      if (!contains(v)) return false;
    return true;
  }

  Assignment restrict_to(const VarSet& s) const
  {
    Assignment out;
    for (const auto& [v, b] : bindings_)
      if (set_contains(s, v)) out.bindings_.push_back({v, b});
    return out;
  }

  std::vector<Lit> as_literals() const
  {
    std::vector<Lit> ls;
    ls.reserve(bindings_.size());
    for (const auto& [v, b] : bindings_) ls.push_back(b ? pos(v) : neg(v));
    return ls;
  }

  /// Canonical string key, usable for hashing and set membership.
  std::string key() const
  {
    std::string k;
    k.reserve(bindings_.size() * 6);
    for (const auto& [v, b] : bindings_) {
      k += b ? '+' : '-';
      k += std::to_string(v.index);
      k += ';';
    }
    return k;
  }

  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::pair<VarId, bool>> bindings_;
};

/// CNF relation between inputs X and outputs Y, existentially quantified
/// in Y; the object every algorithm in this library consumes.
struct Specification {
  Cnf cnf;
  VarSet inputs;   // X
  VarSet outputs;  // Y

  uint32_t num_inputs() const { return static_cast<uint32_t>(inputs.size()); }
  uint32_t num_outputs() const
  {
    return static_cast<uint32_t>(outputs.size());
  }
};

/// CNF together with the variable set its models are projected onto.
struct ProjectedFormula {
  Cnf cnf;
  VarSet projection;
};

// ---------------------------------------------------------------------------
// Errors

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Contract violation by a caller (bad parameters, partial assignment, ...).
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsatFormulaError : std::runtime_error {
  UnsatFormulaError() : std::runtime_error("unsatisfiable formula") {}
};

// ---------------------------------------------------------------------------
// Validation

/// Returns one diagnostic per violated invariant; empty means well-formed.
inline std::vector<std::string> validate(const Specification& spec)
{
  std::vector<std::string> diags;
  if (spec.outputs.empty()) diags.push_back("empty output set");
  if (!sets_disjoint(spec.inputs, spec.outputs))
    diags.push_back("inputs and outputs overlap");
  for (VarId v : spec.inputs)
    if (v.index == 0 || v.index > spec.cnf.num_vars)
      diags.push_back("input variable out of range: " +
                      std::to_string(v.index));
  for (VarId v : spec.outputs)
    if (v.index == 0 || v.index > spec.cnf.num_vars)
      diags.push_back("output variable out of range: " +
                      std::to_string(v.index));

  VarSet declared = set_union(spec.inputs, spec.outputs);
  size_t idx = 0;
  for (const Clause& c : spec.cnf.clauses) {
    for (const Lit& l : c.literals) {
      if (l.var.index == 0 || l.var.index > spec.cnf.num_vars) {
        diags.push_back("literal out of range in clause " +
                        std::to_string(idx));
        break;
      }
    }
    for (const Lit& l : c.literals) {
      if (l.var.index != 0 && l.var.index <= spec.cnf.num_vars &&
          !set_contains(declared, l.var)) {
        diags.push_back("variable " + std::to_string(l.var.index) +
                        " is neither input nor output");
      }
    }
    if (is_tautology(c))
      diags.push_back("tautological clause " + std::to_string(idx));
    std::vector<Lit> sorted = c.literals;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      diags.push_back("duplicate literal in clause " + std::to_string(idx));
    idx++;
  }
  return diags;
}

}  // namespace skolemcount

#endif
