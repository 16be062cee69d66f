#pragma once

// Partially weighted clause sets, their colored-graph encoding, and the
// projection of graph automorphisms onto model symmetries.

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbital/graph.hpp"
#include "orbital/permutation.hpp"

namespace orbital {

struct Literal {
  Point variable = 0;
  bool negated = false;

  bool satisfied_by(const Config& c) const { return (c[variable] != 0) != negated; }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// A clause weight: a finite decimal or HARD. Finite weights are kept as a
// normalized decimal string so that equal weights compare equal exactly.
class Weight {
 public:
  static Weight hard();
  // Accepts "inf", "hard", or a decimal such as "-1.50". Throws InvalidInput.
  static Weight parse(std::string_view text);

  bool is_hard() const { return hard_; }
  double value() const { return value_; }
  // "0.5" for "0.50", "inf" for HARD.
  const std::string& key() const { return key_; }

  friend bool operator==(const Weight& a, const Weight& b) { return a.key_ == b.key_; }

 private:
  bool hard_ = false;
  double value_ = 0.0;
  std::string key_ = "0";
};

struct Clause {
  std::vector<Literal> literals;  // sorted by (variable, sign)
  Weight weight;

  bool satisfied_by(const Config& c) const;
};

class WeightedClauseSet {
 public:
  WeightedClauseSet() = default;
  // Literals are canonicalized (sorted). Throws InvalidInput for unknown
  // variables, empty clauses, or a literal repeated within a clause. A clause
  // may contain a literal and its complement (it is then always satisfied).
  WeightedClauseSet(std::vector<std::string> variables, std::vector<Clause> clauses);

  const PointNames& variables() const { return variables_; }
  std::size_t variable_count() const { return variables_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool satisfies_hard(const Config& c) const;
  // Sum of weights of satisfied soft clauses; nullopt if a HARD clause fails.
  std::optional<double> log_potential(const Config& c) const;

 private:
  PointNames variables_;
  std::vector<Clause> clauses_;
};

struct Evidence {
  std::vector<std::pair<Point, bool>> assignments;  // sorted by variable

  bool empty() const { return assignments.empty(); }
  // Throws InvalidInput for unknown or repeated variables.
  static Evidence from_names(const WeightedClauseSet& s,
                             const std::vector<std::pair<std::string, bool>>& values);
  bool consistent_with(const Config& c) const;
};

// Clause file: optional "vars: a b c" header, then one clause per line as
// "<weight>|inf :: lit1 | lit2 | ...", with "!x" for a negated literal.
// '#' starts a comment. Anything that is not a plain disjunction of literals
// is rejected.
WeightedClauseSet parse_clauses(std::string_view text);
std::string format_clauses(const WeightedClauseSet& s);

// Evidence file: one "var=true" or "var=false" per line.
Evidence parse_evidence(std::string_view text, const WeightedClauseSet& s);
std::string format_evidence(const Evidence& e, const WeightedClauseSet& s);

// Graph vertex layout: unnegated variable nodes 0..n-1, negated nodes
// n..2n-1, clause nodes 2n..2n+m-1.
class ClauseVertexMap {
 public:
  enum class Kind { kPositive, kNegative, kClause };
  struct Entity {
    Kind kind;
    std::size_t index;
    friend bool operator==(const Entity&, const Entity&) = default;
  };

  ClauseVertexMap() = default;
  ClauseVertexMap(std::size_t variables, std::size_t clauses)
      : variables_(variables), clauses_(clauses) {}

  Point positive(Point var) const { return var; }
  Point negative(Point var) const { return static_cast<Point>(variables_ + var); }
  Point clause(std::size_t i) const { return static_cast<Point>(2 * variables_ + i); }
  Entity entity(Point vertex) const;
  std::size_t vertex_count() const { return 2 * variables_ + clauses_; }
  std::size_t variable_count() const { return variables_; }
  std::size_t clause_count() const { return clauses_; }

 private:
  std::size_t variables_ = 0;
  std::size_t clauses_ = 0;
};

struct ClauseGraph {
  ColoredGraph graph;
  ClauseVertexMap vertex_map;
};

// Two nodes and one negation edge per variable, one node per clause colored
// by its weight key, one edge per literal occurrence. Negated nodes get color
// 0, unnegated nodes color 1; the unnegated node of an evidence variable gets
// a TRUE or FALSE evidence color instead. Colors are compacted to be dense.
ClauseGraph build_colored_graph(const WeightedClauseSet& s, const Evidence& e = {});

struct SymmetryReport {
  ColoredGraph graph;
  ClauseVertexMap vertex_map;
  PermutationGroup graph_group;   // acts on graph vertices
  PermutationGroup model_group;   // acts on variables
  std::vector<Orbit> variable_orbits;
  std::vector<Orbit> feature_orbits;  // elements are clause indices
};

// Aut(G(S)) projected onto variables. Throws InternalError if a graph
// automorphism moves v_a and v_!a to different variables.
SymmetryReport model_symmetry_group(const WeightedClauseSet& s, const Evidence& e = {});

inline const std::vector<Orbit>& variable_orbits(const SymmetryReport& r) {
  return r.variable_orbits;
}
inline const std::vector<Orbit>& feature_orbits(const SymmetryReport& r) {
  return r.feature_orbits;
}

// True iff renaming variables by `p` maps the clause multiset (literals and
// weights) onto itself.
bool is_clause_set_symmetry(const WeightedClauseSet& s, const Permutation& p);

// `s` plus one HARD unit clause per evidence assignment, so that samplers see
// the conditional distribution.
WeightedClauseSet condition_on(const WeightedClauseSet& s, const Evidence& e);
// All-zeros assignment with the evidence values filled in.
Config evidence_state(const Evidence& e, std::size_t variables);

}  // namespace orbital
