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

#ifndef SKOLEMCOUNT_NAIVE_HPP
#define SKOLEMCOUNT_NAIVE_HPP

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <vector>

#include "types.hpp"

namespace skolemcount {

// Reference implementations that share no code with the CDCL engine.
// They exist so that the engine, the counters and the estimators can be
// checked against an independent path, and they back the exhaustive
// Skolem-count operation. Strictly exponential; keep inputs small.

/// Evaluate the formula under a total assignment given as a 0/1 vector
/// indexed by variable id (entry 0 unused).
inline bool eval_cnf(const Cnf& cnf, const std::vector<uint8_t>& vals)
{
  for (const Clause& c : cnf.clauses) {
    bool sat = false;
    for (const Lit& l : c.literals) {
      if ((vals[l.var.index] != 0) != l.negated) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

/// All projected models by scanning the full truth table. Guarded to
/// formulas with at most 24 variables.
inline std::set<Assignment> brute_projected_models(const Cnf& cnf,
                                                   const VarSet& projection)
{
  if (cnf.num_vars > 24)
    throw SpecError("brute_projected_models: too many variables");
  std::set<Assignment> out;
  std::vector<uint8_t> vals(cnf.num_vars + 1, 0);
  const uint64_t total = 1ULL << cnf.num_vars;
  for (uint64_t mask = 0; mask < total; mask++) {
    for (uint32_t v = 1; v <= cnf.num_vars; v++)
      vals[v] = (mask >> (v - 1)) & 1ULL;
    if (!eval_cnf(cnf, vals)) continue;
    Assignment a;
    for (VarId v : projection) a.set(v, vals[v.index] != 0);
    out.insert(std::move(a));
  }
  return out;
}

/// Plain recursive model counter with unit propagation. Counts total
/// assignments over all `num_vars` variables; unconstrained variables
/// contribute a factor of two each. Not a projected counter.
class NaiveCounter {
 public:
  explicit NaiveCounter(const Cnf& cnf) : num_vars_(cnf.num_vars)
  {
    occ_pos_.resize(num_vars_ + 1);
    occ_neg_.resize(num_vars_ + 1);
    for (const Clause& c : cnf.clauses) {
      uint32_t ci = static_cast<uint32_t>(clauses_.size());
      std::vector<Lit> lits = c.literals;
      clauses_.push_back({lits, 0, 0});
      for (const Lit& l : lits)
        (l.negated ? occ_neg_ : occ_pos_)[l.var.index].push_back(ci);
    }
    value_.assign(num_vars_ + 1, kUnset);
  }

  mpz_class count(std::span<const Lit> units = {})
  {
    for (const Lit& l : units) {
      if (l.var.index == 0 || l.var.index > num_vars_)
        throw SpecError("unit literal out of range");
    }
    trail_.clear();
    mpz_class result = 0;
    size_t mark = trail_.size();
    bool ok = true;
    for (const Lit& l : units)
      if (!assign(l.var.index, !l.negated)) {
        ok = false;
        break;
      }
    if (ok) result = count_rec();
    undo_to(mark);
    return result;
  }

 private:
  static constexpr int8_t kUnset = -1;

  struct ClauseState {
    std::vector<Lit> lits;
    uint32_t true_count = 0;
    uint32_t false_count = 0;
  };

  bool assign(uint32_t var, bool val)
  {
    if (value_[var] != kUnset) return value_[var] == (val ? 1 : 0);
    value_[var] = val ? 1 : 0;
    trail_.push_back(var);
    num_assigned_++;
    auto& sat_occ = val ? occ_pos_[var] : occ_neg_[var];
    auto& fal_occ = val ? occ_neg_[var] : occ_pos_[var];
    for (uint32_t ci : sat_occ) clauses_[ci].true_count++;
    bool conflict = false;
    for (uint32_t ci : fal_occ) {
      ClauseState& c = clauses_[ci];
      c.false_count++;
      if (c.true_count == 0 && c.false_count == c.lits.size())
        conflict = true;  // finish updating counts before reporting
    }
    if (conflict) return false;
    // propagate freshly created units
    for (uint32_t ci : fal_occ) {
      ClauseState& c = clauses_[ci];
      if (c.true_count == 0 && c.false_count + 1 == c.lits.size()) {
        for (const Lit& l : c.lits) {
          if (value_[l.var.index] == kUnset) {
            if (!assign(l.var.index, !l.negated)) return false;
            break;
          }
        }
      }
    }
    return true;
  }

  void undo_to(size_t mark)
  {
    while (trail_.size() > mark) {
      uint32_t var = trail_.back();
      trail_.pop_back();
      bool val = value_[var] == 1;
      auto& sat_occ = val ? occ_pos_[var] : occ_neg_[var];
      auto& fal_occ = val ? occ_neg_[var] : occ_pos_[var];
      for (uint32_t ci : sat_occ) clauses_[ci].true_count--;
      for (uint32_t ci : fal_occ) clauses_[ci].false_count--;
      value_[var] = kUnset;
      num_assigned_--;
    }
  }

  // Lowest-indexed unassigned variable in a not-yet-satisfied clause.
  uint32_t pick_branch_var() const
  {
    uint32_t best = 0;
    for (const ClauseState& c : clauses_) {
      if (c.true_count > 0) continue;
      for (const Lit& l : c.lits)
        if (value_[l.var.index] == kUnset &&
            (best == 0 || l.var.index < best))
          best = l.var.index;
    }
    return best;
  }

  mpz_class count_rec()
  {
    uint32_t var = pick_branch_var();
    if (var == 0) {
      // every clause satisfied; free variables are unconstrained
      mpz_class leaf = 1;
      mpz_mul_2exp(leaf.get_mpz_t(), leaf.get_mpz_t(),
                   num_vars_ - num_assigned_);
      return leaf;
    }
    mpz_class total = 0;
    for (int b = 0; b < 2; b++) {
      size_t mark = trail_.size();
      if (assign(var, b != 0)) total += count_rec();
      undo_to(mark);
    }
    return total;
  }

  uint32_t num_vars_;
  uint32_t num_assigned_ = 0;
  std::vector<ClauseState> clauses_;
  std::vector<std::vector<uint32_t>> occ_pos_, occ_neg_;
  std::vector<int8_t> value_;
  std::vector<uint32_t> trail_;
};

inline mpz_class naive_model_count(const Cnf& cnf,
                                   std::span<const Lit> units = {})
{
  NaiveCounter counter(cnf);
  return counter.count(units);
}

}  // namespace skolemcount

#endif
