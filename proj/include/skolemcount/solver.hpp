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

#ifndef SKOLEMCOUNT_SOLVER_HPP
#define SKOLEMCOUNT_SOLVER_HPP

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "budget.hpp"
#include "rand.hpp"
#include "types.hpp"

namespace skolemcount {

// Conflict-driven clause learning engine: two-watched-literal propagation,
// activity-ordered decisions (VSIDS), phase saving, Luby restarts, first-UIP
// learning with basic clause minimization, and periodic learnt-clause
// reduction. Clauses can be added between solve calls, which is what the
// blocking-clause enumeration relies on. Fully deterministic for a fixed
// (instance, configuration, seed).

struct SolverConfig {
  uint64_t seed = 0;
  double random_branch_freq = 0.0;  // probability of a random decision var
  double var_decay = 0.95;
  double clause_decay = 0.999;
  uint32_t restart_base = 100;      // conflicts, scaled by the Luby sequence
  bool phase_saving = true;
  uint64_t max_conflicts_per_solve = 0;  // 0 = unlimited
};

enum class Status : uint8_t { Sat, Unsat };

struct SolveResult {
  Status status;
  std::optional<Assignment> model;  // total model, present iff Sat
};

class Solver {
 public:
  explicit Solver(const Cnf& cnf, SolverConfig cfg = {},
                  Budget* budget = nullptr)
      : cfg_(cfg), budget_(budget), rng_(splitmix64(cfg.seed ^ 0xa5a5a5a5ULL))
  {
    reserve_vars(cnf.num_vars);
    for (const Clause& c : cnf.clauses) add_clause(c.literals);
  }

  explicit Solver(uint32_t num_vars, SolverConfig cfg = {},
                  Budget* budget = nullptr)
      : cfg_(cfg), budget_(budget), rng_(splitmix64(cfg.seed ^ 0xa5a5a5a5ULL))
  {
    reserve_vars(num_vars);
  }

  uint32_t num_vars() const { return nvars_; }

  VarId new_var()
  {
    reserve_vars(nvars_ + 1);
    return VarId{nvars_};
  }

  /// Add a clause at the root level. Duplicate literals are merged and
  /// tautologies ignored. May make the instance unsatisfiable.
  void add_clause(std::span<const Lit> lits_in)
  {
    assert(decision_level() == 0);
    if (!ok_) return;
    std::vector<uint32_t> lits;
    lits.reserve(lits_in.size());
    for (const Lit& l : lits_in) {
      if (l.var.index == 0 || l.var.index > nvars_)
        throw SpecError("clause literal out of range");
      lits.push_back(to_ilit(l));
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); i++)
      if ((lits[i] ^ lits[i + 1]) == 1) return;  // tautology
    // drop root-false literals, skip root-satisfied clauses
    std::vector<uint32_t> kept;
    for (uint32_t l : lits) {
      int v = value(l);
      if (v == 1) return;
      if (v == 0) kept.push_back(l);
    }
    if (kept.empty()) {
      ok_ = false;
      return;
    }
    if (kept.size() == 1) {
      enqueue(kept[0], -1);
      if (propagate() != -1) ok_ = false;
      return;
    }
    attach_new_clause(std::move(kept), false);
  }

  void add_clause(std::initializer_list<Lit> lits)
  {
    add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  bool solve() { return solve(std::span<const Lit>()); }

  bool solve(std::span<const Lit> assumptions)
  {
    if (budget_) budget_->charge_sat_call();
    solve_calls_++;
    model_.clear();
    if (!ok_) return false;
    assumptions_.clear();
    for (const Lit& l : assumptions) {
      if (l.var.index == 0 || l.var.index > nvars_)
        throw SpecError("assumption literal out of range");
      assumptions_.push_back(to_ilit(l));
    }

    int result = 0;  // 0 unknown, 1 sat, -1 unsat
    uint64_t conflicts_this_call = 0;
    for (uint32_t restarts = 0; result == 0; restarts++) {
      if (budget_) budget_->check_deadline();
      uint64_t limit =
          static_cast<uint64_t>(luby(restarts)) * cfg_.restart_base;
      result = search(limit, conflicts_this_call);
      if (cfg_.max_conflicts_per_solve != 0 && result == 0 &&
          conflicts_this_call >= cfg_.max_conflicts_per_solve) {
        cancel_until(0);
        throw ResourceLimitError("conflict budget exceeded in solve",
                                 budget_ ? budget_->sat_calls() : 0);
      }
    }
    cancel_until(0);
    return result == 1;
  }

  /// Value of `v` in the last model; only valid after solve() returned true.
  bool model_value(VarId v) const
  {
    assert(!model_.empty() && v.index >= 1 && v.index <= nvars_);
    return model_[v.index] != 0;
  }

  Assignment model() const
  {
    Assignment a;
    for (uint32_t v = 1; v <= nvars_; v++)
      a.set(VarId{v}, model_[v] != 0);
    return a;
  }

  bool okay() const { return ok_; }
  uint64_t solve_calls() const { return solve_calls_; }
  uint64_t conflicts() const { return conflicts_; }

 private:
  // Literal encoding: 2*var + sign, variables numbered from 1, sign 1 means
  // negated. Slot 0/1 is unused padding so indices line up with VarIds.
  static constexpr uint32_t kUndefLit = 0;
  static constexpr int32_t kNoReason = -1;

  struct Watcher {
    uint32_t cref;
    uint32_t blocker;
  };

  struct Cls {
    std::vector<uint32_t> lits;
    double act = 0.0;
    bool learnt = false;
  };

  static uint32_t to_ilit(Lit l)
  {
    return (l.var.index << 1) | (l.negated ? 1u : 0u);
  }
  static Lit from_ilit(uint32_t l)
  {
    return Lit{VarId{l >> 1}, (l & 1) != 0};
  }

  void reserve_vars(uint32_t n)
  {
    if (n <= nvars_) return;
    nvars_ = n;
    watches_.resize(2 * (nvars_ + 1));
    assigns_.resize(nvars_ + 1, 0);
    level_.resize(nvars_ + 1, 0);
    reason_.resize(nvars_ + 1, kNoReason);
    activity_.resize(nvars_ + 1, 0.0);
    polarity_.resize(nvars_ + 1, false);
    seen_.resize(nvars_ + 1, 0);
    heap_pos_.resize(nvars_ + 1, -1);
    for (uint32_t v = static_cast<uint32_t>(heap_next_); v <= nvars_; v++)
      heap_insert(v);
    heap_next_ = nvars_ + 1;
  }

  // -1 false, 0 undef, +1 true
  int value(uint32_t lit) const
  {
    int8_t a = assigns_[lit >> 1];
    return (lit & 1) ? -a : a;
  }

  uint32_t decision_level() const
  {
    return static_cast<uint32_t>(trail_lim_.size());
  }

  void new_decision_level() { trail_lim_.push_back(trail_.size()); }

  void enqueue(uint32_t lit, int32_t reason)
  {
    uint32_t v = lit >> 1;
    assert(assigns_[v] == 0);
    assigns_[v] = (lit & 1) ? -1 : 1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(lit);
  }

  void attach_new_clause(std::vector<uint32_t> lits, bool learnt)
  {
    assert(lits.size() >= 2);
    uint32_t cref = static_cast<uint32_t>(clauses_.size());
    watches_[lits[0] ^ 1].push_back({cref, lits[1]});
    watches_[lits[1] ^ 1].push_back({cref, lits[0]});
    clauses_.push_back({std::move(lits), learnt ? cla_inc_ : 0.0, learnt});
    if (learnt) num_learnts_++;
  }

  // Propagate everything on the queue; returns conflicting clause or -1.
  int32_t propagate()
  {
    int32_t confl = -1;
    while (qhead_ < trail_.size()) {
      uint32_t p = trail_[qhead_++];        // p just became true
      std::vector<Watcher>& ws = watches_[p];  // clauses watching ~p, falsified
      size_t i = 0, j = 0;
      while (i < ws.size()) {
        Watcher w = ws[i];
        if (value(w.blocker) == 1) {
          ws[j++] = ws[i++];
          continue;
        }
        Cls& c = clauses_[w.cref];
        const uint32_t false_lit = p ^ 1;
        if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
        assert(c.lits[1] == false_lit);
        i++;
        uint32_t first = c.lits[0];
        if (first != w.blocker && value(first) == 1) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (size_t k = 2; k < c.lits.size(); k++) {
          if (value(c.lits[k]) != -1) {
            std::swap(c.lits[1], c.lits[k]);
            watches_[c.lits[1] ^ 1].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        // unit or conflicting
        ws[j++] = {w.cref, first};
        if (value(first) == -1) {
          confl = static_cast<int32_t>(w.cref);
          qhead_ = trail_.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(first, static_cast<int32_t>(w.cref));
        }
      }
      ws.resize(j);
      if (confl != -1) break;
    }
    return confl;
  }

  void cancel_until(uint32_t level)
  {
    if (decision_level() <= level) return;
    for (size_t i = trail_.size(); i-- > trail_lim_[level];) {
      uint32_t v = trail_[i] >> 1;
      if (cfg_.phase_saving) polarity_[v] = assigns_[v] == 1;
      assigns_[v] = 0;
      reason_[v] = kNoReason;
      if (heap_pos_[v] < 0) heap_insert(v);
    }
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
    qhead_ = trail_.size();
  }

  // First-UIP conflict analysis with basic reason-subsumption minimization.
  void analyze(int32_t confl, std::vector<uint32_t>& out_learnt,
               uint32_t& out_btlevel)
  {
    out_learnt.clear();
    out_learnt.push_back(kUndefLit);  // slot for the asserting literal
    int path_count = 0;
    uint32_t p = kUndefLit;
    size_t index = trail_.size();

    do {
      assert(confl != kNoReason);
      Cls& c = clauses_[confl];
      if (c.learnt) bump_clause(static_cast<uint32_t>(confl));
      for (size_t k = (p == kUndefLit ? 0 : 1); k < c.lits.size(); k++) {
        uint32_t q = c.lits[k];
        uint32_t v = q >> 1;
        if (!seen_[v] && level_[v] > 0) {
          bump_var(v);
          seen_[v] = 1;
          if (level_[v] >= decision_level())
            path_count++;
          else
            out_learnt.push_back(q);
        }
      }
      while (!seen_[trail_[index - 1] >> 1]) index--;
      p = trail_[--index];
      confl = reason_[p >> 1];
      seen_[p >> 1] = 0;
      path_count--;
    } while (path_count > 0);
    out_learnt[0] = p ^ 1;

    // drop literals whose reason is already subsumed by the clause
    to_clear_.assign(out_learnt.begin(), out_learnt.end());
    size_t kept = 1;
    for (size_t i = 1; i < out_learnt.size(); i++) {
      uint32_t v = out_learnt[i] >> 1;
      if (reason_[v] == kNoReason) {
        out_learnt[kept++] = out_learnt[i];
        continue;
      }
      const Cls& rc = clauses_[reason_[v]];
      bool redundant = true;
      for (size_t k = 1; k < rc.lits.size(); k++) {
        uint32_t u = rc.lits[k] >> 1;
        if (!seen_[u] && level_[u] > 0) {
          redundant = false;
          break;
        }
      }
      if (!redundant) out_learnt[kept++] = out_learnt[i];
    }
    out_learnt.resize(kept);

    if (out_learnt.size() == 1) {
      out_btlevel = 0;
    } else {
      size_t max_i = 1;
      for (size_t i = 2; i < out_learnt.size(); i++)
        if (level_[out_learnt[i] >> 1] > level_[out_learnt[max_i] >> 1])
          max_i = i;
      std::swap(out_learnt[1], out_learnt[max_i]);
      out_btlevel = level_[out_learnt[1] >> 1];
    }
    for (uint32_t l : to_clear_) seen_[l >> 1] = 0;
  }

  void bump_var(uint32_t v)
  {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (uint32_t w = 1; w <= nvars_; w++) activity_[w] *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
  }

  void bump_clause(uint32_t cref)
  {
    Cls& c = clauses_[cref];
    c.act += cla_inc_;
    if (c.act > 1e20) {
      for (Cls& d : clauses_)
        if (d.learnt) d.act *= 1e-20;
      cla_inc_ *= 1e-20;
    }
  }

  // 1 sat, -1 unsat, 0 restart
  int search(uint64_t conflict_limit, uint64_t& conflicts_this_call)
  {
    uint64_t local_conflicts = 0;
    std::vector<uint32_t> learnt;
    for (;;) {
      int32_t confl = propagate();
      if (confl != -1) {
        conflicts_++;
        local_conflicts++;
        conflicts_this_call++;
        if (decision_level() == 0) {
          ok_ = false;
          return -1;
        }
        uint32_t bt;
        analyze(confl, learnt, bt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          uint32_t cref = static_cast<uint32_t>(clauses_.size());
          attach_new_clause(learnt, true);
          enqueue(learnt[0], static_cast<int32_t>(cref));
        }
        var_inc_ /= cfg_.var_decay;
        cla_inc_ /= cfg_.clause_decay;
      } else {
        if (local_conflicts >= conflict_limit) {
          cancel_until(0);
          return 0;
        }
        if (cfg_.max_conflicts_per_solve != 0 &&
            conflicts_this_call >= cfg_.max_conflicts_per_solve) {
          return 0;
        }
        if (num_learnts_ > max_learnts()) reduce_learnts();

        uint32_t next = kUndefLit;
        while (decision_level() < assumptions_.size()) {
          uint32_t a = assumptions_[decision_level()];
          if (value(a) == 1) {
            new_decision_level();  // already satisfied, placeholder level
          } else if (value(a) == -1) {
            return -1;  // assumptions are jointly unsatisfiable
          } else {
            next = a;
            break;
          }
        }
        if (next == kUndefLit && decision_level() >= assumptions_.size()) {
          next = pick_branch_lit();
          if (next == kUndefLit) {
            extract_model();
            return 1;
          }
        }
        if (next != kUndefLit) {
          new_decision_level();
          enqueue(next, kNoReason);
        }
      }
    }
  }

  uint32_t pick_branch_lit()
  {
    if (cfg_.random_branch_freq > 0 &&
        rng_.next_double() < cfg_.random_branch_freq) {
      uint32_t v = 1 + static_cast<uint32_t>(rng_.below(nvars_));
      if (assigns_[v] == 0)
        return (v << 1) | (polarity_[v] ? 0u : 1u);
    }
    while (heap_size_ > 0) {
      uint32_t v = heap_[0];
      heap_remove_top();
      if (assigns_[v] == 0) return (v << 1) | (polarity_[v] ? 0u : 1u);
    }
    return kUndefLit;
  }

  void extract_model()
  {
    model_.assign(nvars_ + 1, 0);
    for (uint32_t v = 1; v <= nvars_; v++) model_[v] = assigns_[v] == 1;
  }

  size_t max_learnts() const { return 4000 + (clauses_.size() - num_learnts_) / 3; }

  // Throw away the less active half of the learnt clauses and rebuild the
  // watcher lists. Clauses currently acting as reasons are kept.
  void reduce_learnts()
  {
    std::vector<uint32_t> learnt_refs;
    for (uint32_t i = 0; i < clauses_.size(); i++)
      if (clauses_[i].learnt) learnt_refs.push_back(i);
    std::sort(learnt_refs.begin(), learnt_refs.end(),
              [&](uint32_t a, uint32_t b) {
                return clauses_[a].act < clauses_[b].act ||
                       (clauses_[a].act == clauses_[b].act && a < b);
              });
    std::vector<bool> drop(clauses_.size(), false);
    size_t limit = learnt_refs.size() / 2;
    for (size_t i = 0; i < limit; i++) {
      uint32_t cref = learnt_refs[i];
      if (clauses_[cref].lits.size() <= 2) continue;
      if (is_reason(cref)) continue;
      drop[cref] = true;
    }

    std::vector<int32_t> remap(clauses_.size(), kNoReason);
    std::vector<Cls> kept;
    kept.reserve(clauses_.size());
    for (uint32_t i = 0; i < clauses_.size(); i++) {
      if (drop[i]) continue;
      remap[i] = static_cast<int32_t>(kept.size());
      kept.push_back(std::move(clauses_[i]));
    }
    clauses_ = std::move(kept);
    num_learnts_ = 0;
    for (const Cls& c : clauses_)
      if (c.learnt) num_learnts_++;
    for (auto& ws : watches_) ws.clear();
    for (uint32_t i = 0; i < clauses_.size(); i++) {
      const Cls& c = clauses_[i];
      watches_[c.lits[0] ^ 1].push_back({i, c.lits[1]});
      watches_[c.lits[1] ^ 1].push_back({i, c.lits[0]});
    }
    for (uint32_t v = 1; v <= nvars_; v++)
      if (reason_[v] != kNoReason) reason_[v] = remap[reason_[v]];
  }

  bool is_reason(uint32_t cref) const
  {
    const Cls& c = clauses_[cref];
    uint32_t v = c.lits[0] >> 1;
    return assigns_[v] != 0 && reason_[v] == static_cast<int32_t>(cref) &&
           value(c.lits[0]) == 1;
  }

  static double luby(uint32_t i)
  {
    // Luby sequence 1,1,2,1,1,2,4,...
    uint32_t size, seq;
    for (size = 1, seq = 0; size < i + 1; seq++, size = 2 * size + 1) {
    }
    while (size - 1 != i) {
      size = (size - 1) >> 1;
      seq--;
      i = i % size;
    }
    return std::pow(2.0, seq);
  }

  // --- activity-ordered heap (max on top, ties broken by lower index) ---

  bool heap_before(uint32_t v, uint32_t w) const
  {
    return activity_[v] > activity_[w] ||
           (activity_[v] == activity_[w] && v < w);
  }

  void heap_insert(uint32_t v)
  {
    if (heap_.size() == heap_size_)
      heap_.push_back(v);
    else
      heap_[heap_size_] = v;
    heap_pos_[v] = static_cast<int32_t>(heap_size_);
    heap_size_++;
    heap_up(heap_pos_[v]);
  }

  void heap_remove_top()
  {
    uint32_t top = heap_[0];
    heap_pos_[top] = -1;
    heap_size_--;
    if (heap_size_ > 0) {
      heap_[0] = heap_[heap_size_];
      heap_pos_[heap_[0]] = 0;
      heap_down(0);
    }
  }

  void heap_up(int32_t i)
  {
    uint32_t v = heap_[i];
    while (i > 0) {
      int32_t parent = (i - 1) / 2;
      if (!heap_before(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }

  void heap_down(int32_t i)
  {
    uint32_t v = heap_[i];
    for (;;) {
      int32_t left = 2 * i + 1, right = 2 * i + 2, best = i;
      uint32_t best_var = v;
      if (left < static_cast<int32_t>(heap_size_) &&
          heap_before(heap_[left], best_var)) {
        best = left;
        best_var = heap_[left];
      }
      if (right < static_cast<int32_t>(heap_size_) &&
          heap_before(heap_[right], best_var)) {
        best = right;
        best_var = heap_[right];
      }
      if (best == i) break;
      heap_[i] = best_var;
      heap_pos_[best_var] = i;
      i = best;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }

  SolverConfig cfg_;
  Budget* budget_ = nullptr;
  Rng rng_;

  uint32_t nvars_ = 0;
  bool ok_ = true;
  std::vector<Cls> clauses_;
  size_t num_learnts_ = 0;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<int8_t> assigns_;
  std::vector<uint32_t> level_;
  std::vector<int32_t> reason_;
  std::vector<uint32_t> trail_;
  std::vector<size_t> trail_lim_;
  size_t qhead_ = 0;
  std::vector<uint32_t> assumptions_;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::vector<bool> polarity_;
  std::vector<uint8_t> seen_;
  std::vector<uint32_t> to_clear_;

  std::vector<uint32_t> heap_;
  std::vector<int32_t> heap_pos_;
  size_t heap_size_ = 0;
  size_t heap_next_ = 1;  // first var id not yet placed in the heap

  std::vector<uint8_t> model_;
  uint64_t solve_calls_ = 0;
  uint64_t conflicts_ = 0;
};

/// One-shot convenience wrapper around Solver.
inline SolveResult solve(const Cnf& cnf,
                         std::span<const Lit> assumptions = {},
                         SolverConfig cfg = {}, Budget* budget = nullptr)
{
  Solver s(cnf, cfg, budget);
  if (s.solve(assumptions))
    return SolveResult{Status::Sat, s.model()};
  return SolveResult{Status::Unsat, std::nullopt};
}

}  // namespace skolemcount

#endif
