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

#ifndef SKOLEMCOUNT_DIMACS_HPP
#define SKOLEMCOUNT_DIMACS_HPP

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "types.hpp"

namespace skolemcount {

// Readers for the two on-disk specification formats:
//   * QDIMACS: `a` lines declare the universal block (inputs X), `e` lines
//     the existential block (outputs Y). Free variables become inputs.
//   * annotated DIMACS: plain CNF plus `c x <ids> 0` / `c y <ids> 0`
//     comment lines declaring the partition explicitly.
// Both are whitespace-tolerant; integer lists are 0-terminated and may
// span lines.

namespace detail {

struct DimacsData {
  Cnf cnf;
  std::vector<VarId> universals;   // `a` lines, in file order
  std::vector<VarId> existentials; // `e` lines
  std::vector<VarId> x_decls;      // `c x` lines
  std::vector<VarId> y_decls;      // `c y` lines
  std::vector<VarId> ind_decls;    // `c ind` lines
  bool saw_header = false;
  size_t declared_clauses = 0;
};

// Range checks against num_vars happen after the whole file is read,
// because partition comments may legally precede the problem line.
inline void parse_id_list(std::istringstream& in, std::vector<VarId>& out,
                          const char* what)
{
  long long n;
  bool terminated = false;
  while (in >> n) {
    if (n == 0) {
      terminated = true;
      break;
    }
    if (n < 0)
      throw ParseError(std::string(what) + " variable out of range: " +
                       std::to_string(n));
    out.push_back(VarId{static_cast<uint32_t>(n)});
  }
  if (!terminated)
    throw ParseError(std::string(what) + " list not 0-terminated");
}

inline DimacsData read_dimacs(std::istream& in,
                              std::vector<std::string>* warnings)
{
  DimacsData d;
  std::string line;
  std::vector<Lit> current;
  bool in_exists_block = false;
  size_t lineno = 0;

  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };

  while (std::getline(in, line)) {
    lineno++;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line

    if (tok == "c") {
      std::string kind;
      if (ls >> kind) {
        if (kind == "x")
          parse_id_list(ls, d.x_decls, "c x");
        else if (kind == "y")
          parse_id_list(ls, d.y_decls, "c y");
        else if (kind == "ind")
          parse_id_list(ls, d.ind_decls, "c ind");
      }
      continue;
    }
    if (tok.size() == 1 && tok[0] == 'p') {
      if (d.saw_header) throw ParseError("duplicate problem line");
      std::string fmt;
      long long nv = -1, nc = -1;
      if (!(ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
        throw ParseError("malformed problem line at line " +
                         std::to_string(lineno));
      d.cnf.num_vars = static_cast<uint32_t>(nv);
      d.declared_clauses = static_cast<size_t>(nc);
      d.saw_header = true;
      continue;
    }
    if (tok == "a" || tok == "e") {
      if (!d.saw_header)
        throw ParseError("quantifier line before problem line");
      if (!current.empty())
        throw ParseError("quantifier line inside clause section");
      if (tok == "a") {
        if (in_exists_block)
          throw ParseError(
              "quantifier alternation beyond one a-block/one e-block");
        parse_id_list(ls, d.universals, "universal");
      } else {
        in_exists_block = true;
        parse_id_list(ls, d.existentials, "existential");
      }
      continue;
    }

    // Clause data: integers, 0 terminates a clause, may span lines.
    if (!d.saw_header) throw ParseError("clause data before problem line");
    std::istringstream cs(line);
    long long n;
    while (cs >> n) {
      if (n == 0) {
        // finalize clause: drop duplicate literals (order preserved),
        // flag tautologies
        std::vector<Lit> lits;
        lits.reserve(current.size());
        for (const Lit& l : current)
          if (std::find(lits.begin(), lits.end(), l) == lits.end())
            lits.push_back(l);
        if (lits.size() != current.size())
          warn("duplicate literal in clause " +
               std::to_string(d.cnf.clauses.size()));
        current.clear();
        Clause cl{std::move(lits)};
        if (is_tautology(cl)) {
          warn("dropping tautological clause " +
               std::to_string(d.cnf.clauses.size()));
          continue;
        }
        d.cnf.clauses.push_back(std::move(cl));
        continue;
      }
      unsigned long long mag = n < 0 ? static_cast<unsigned long long>(-n)
                                     : static_cast<unsigned long long>(n);
      if (mag > d.cnf.num_vars)
        throw ParseError("literal out of range at line " +
                         std::to_string(lineno) + ": " + std::to_string(n));
      current.push_back(lit_from_dimacs(static_cast<int>(n)));
    }
    if (!cs.eof()) {
      std::string bad;
      cs.clear();
      cs >> bad;
      throw ParseError("unexpected token '" + bad + "' at line " +
                       std::to_string(lineno));
    }
  }
  if (!d.saw_header) throw ParseError("missing problem line");
  if (!current.empty()) throw ParseError("unterminated final clause");
  auto check_range = [&](const std::vector<VarId>& vs, const char* what) {
    for (VarId v : vs)
      if (v.index == 0 || v.index > d.cnf.num_vars)
        throw ParseError(std::string(what) + " variable out of range: " +
                         std::to_string(v.index));
  };
  check_range(d.universals, "universal");
  check_range(d.existentials, "existential");
  check_range(d.x_decls, "c x");
  check_range(d.y_decls, "c y");
  check_range(d.ind_decls, "c ind");
  if (d.declared_clauses != d.cnf.clauses.size())
    warn("clause count mismatch: header declares " +
         std::to_string(d.declared_clauses) + ", parsed " +
         std::to_string(d.cnf.clauses.size()));
  return d;
}

inline void check_no_duplicate_decl(const std::vector<VarId>& decls,
                                    const char* what)
{
  std::vector<VarId> sorted = decls;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError(std::string("variable quantified twice in ") + what);
}

}  // namespace detail

/// QDIMACS reader. Universals become inputs, existentials outputs, free
/// variables are treated as inputs.
inline Specification parse_qdimacs(std::istream& in,
                                   std::vector<std::string>* warnings =
                                       nullptr)
{
  detail::DimacsData d = detail::read_dimacs(in, warnings);
  detail::check_no_duplicate_decl(d.universals, "universal block");
  detail::check_no_duplicate_decl(d.existentials, "existential block");

  VarSet inputs = make_var_set(d.universals);
  VarSet outputs = make_var_set(d.existentials);
  if (!sets_disjoint(inputs, outputs))
    throw ParseError("variable quantified twice (in both blocks)");

  // Free variables behave as inputs of the synthesis problem.
  for (VarId v : vars_of(d.cnf))
    if (!set_contains(inputs, v) && !set_contains(outputs, v))
      inputs.push_back(v);
  inputs = make_var_set(std::move(inputs));

  if (outputs.empty()) throw ParseError("empty output set");
  return Specification{std::move(d.cnf), std::move(inputs),
                       std::move(outputs)};
}

inline Specification parse_qdimacs(const std::string& text,
                                   std::vector<std::string>* warnings =
                                       nullptr)
{
  std::istringstream in(text);
  return parse_qdimacs(in, warnings);
}

/// Annotated-DIMACS reader: the partition comes from `c x`/`c y` lines and
/// must cover every variable occurring in the formula exactly once.
inline Specification parse_dimacs_annotated(std::istream& in,
                                            std::vector<std::string>*
                                                warnings = nullptr)
{
  detail::DimacsData d = detail::read_dimacs(in, warnings);
  VarSet inputs = make_var_set(d.x_decls);
  VarSet outputs = make_var_set(d.y_decls);
  if (!sets_disjoint(inputs, outputs))
    throw ParseError("overlapping declarations: a variable is in both the "
                     "x and y lists");
  for (VarId v : vars_of(d.cnf))
    if (!set_contains(inputs, v) && !set_contains(outputs, v))
      throw ParseError("variable " + std::to_string(v.index) +
                       " used but not declared");
  if (outputs.empty()) throw ParseError("empty output set");
  return Specification{std::move(d.cnf), std::move(inputs),
                       std::move(outputs)};
}

inline Specification parse_dimacs_annotated(const std::string& text,
                                            std::vector<std::string>*
                                                warnings = nullptr)
{
  std::istringstream in(text);
  return parse_dimacs_annotated(in, warnings);
}

/// Plain DIMACS with an optional `c ind <ids> 0` projection declaration
/// (the de-facto projected-counting convention). Missing declaration means
/// projection over all variables.
inline ProjectedFormula parse_projected_dimacs(std::istream& in,
                                               std::vector<std::string>*
                                                   warnings = nullptr)
{
  detail::DimacsData d = detail::read_dimacs(in, warnings);
  VarSet proj;
  if (!d.ind_decls.empty()) {
    proj = make_var_set(d.ind_decls);
  } else {
    for (uint32_t v = 1; v <= d.cnf.num_vars; v++) proj.push_back(VarId{v});
  }
  return ProjectedFormula{std::move(d.cnf), std::move(proj)};
}

inline ProjectedFormula parse_projected_dimacs(const std::string& text,
                                               std::vector<std::string>*
                                                   warnings = nullptr)
{
  std::istringstream in(text);
  return parse_projected_dimacs(in, warnings);
}

// ---------------------------------------------------------------------------
// Writers

inline void write_clauses(std::ostream& out, const Cnf& cnf)
{
  for (const Clause& c : cnf.clauses) {
    for (const Lit& l : c.literals) out << to_dimacs(l) << ' ';
    out << "0\n";
  }
}

inline void write_qdimacs(std::ostream& out, const Specification& spec)
{
  out << "p cnf " << spec.cnf.num_vars << ' ' << spec.cnf.clauses.size()
      << '\n';
  if (!spec.inputs.empty()) {
    out << 'a';
    for (VarId v : spec.inputs) out << ' ' << v.index;
    out << " 0\n";
  }
  if (!spec.outputs.empty()) {
    out << 'e';
    for (VarId v : spec.outputs) out << ' ' << v.index;
    out << " 0\n";
  }
  write_clauses(out, spec.cnf);
}

inline std::string to_qdimacs(const Specification& spec)
{
  std::ostringstream out;
  write_qdimacs(out, spec);
  return out.str();
}

inline void write_dimacs_annotated(std::ostream& out,
                                   const Specification& spec)
{
  out << "c x";
  for (VarId v : spec.inputs) out << ' ' << v.index;
  out << " 0\n";
  out << "c y";
  for (VarId v : spec.outputs) out << ' ' << v.index;
  out << " 0\n";
  out << "p cnf " << spec.cnf.num_vars << ' ' << spec.cnf.clauses.size()
      << '\n';
  write_clauses(out, spec.cnf);
}

inline void write_projected_dimacs(std::ostream& out,
                                   const ProjectedFormula& pf)
{
  out << "p cnf " << pf.cnf.num_vars << ' ' << pf.cnf.clauses.size() << '\n';
  out << "c ind";
  for (VarId v : pf.projection) out << ' ' << v.index;
  out << " 0\n";
  write_clauses(out, pf.cnf);
}

inline std::string to_projected_dimacs(const ProjectedFormula& pf)
{
  std::ostringstream out;
  write_projected_dimacs(out, pf);
  return out.str();
}

}  // namespace skolemcount

#endif
