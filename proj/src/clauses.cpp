#include "orbital/clauses.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>

#include "orbital/error.hpp"

namespace orbital {

namespace {

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_variable_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' ||
           ch == '-' || ch == '[' || ch == ']';
  });
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(strip(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

Weight Weight::hard() {
  Weight w;
  w.hard_ = true;
  w.value_ = 0.0;
  w.key_ = "inf";
  return w;
}

Weight Weight::parse(std::string_view text) {
  const std::string t = strip(text);
  if (t == "inf" || t == "INF" || t == "hard" || t == "HARD") return hard();
  std::size_t i = 0;
  bool negative = false;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) negative = t[i++] == '-';
  std::string whole, frac;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) whole += t[i++];
  bool dot = false;
  if (i < t.size() && t[i] == '.') {
    dot = true;
    ++i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) frac += t[i++];
  }
  if (i != t.size() || (whole.empty() && frac.empty()) || (dot && whole.empty() && frac.empty())) {
    throw InvalidInput("weight must be a decimal number or 'inf': '" + t + "'");
  }
  whole.erase(0, std::min(whole.find_first_not_of('0'), whole.size()));
  if (whole.empty()) whole = "0";
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string key = whole;
  if (!frac.empty()) key += "." + frac;
  if (negative && key != "0") key = "-" + key;

  Weight w;
  w.key_ = key;
  w.value_ = std::stod(key);
  return w;
}

bool Clause::satisfied_by(const Config& c) const {
  return std::any_of(literals.begin(), literals.end(),
                     [&](const Literal& l) { return l.satisfied_by(c); });
}

WeightedClauseSet::WeightedClauseSet(std::vector<std::string> variables,
                                     std::vector<Clause> clauses)
    : variables_(std::move(variables)), clauses_(std::move(clauses)) {
  for (const auto& name : variables_.names()) {
    if (!valid_variable_name(name)) throw InvalidInput("invalid variable name '" + name + "'");
  }
  for (auto& clause : clauses_) {
    if (clause.literals.empty()) throw InvalidInput("empty clause");
    for (const auto& lit : clause.literals) {
      if (lit.variable >= variables_.size()) throw InvalidInput("literal references unknown variable");
    }
    std::sort(clause.literals.begin(), clause.literals.end());
    if (std::adjacent_find(clause.literals.begin(), clause.literals.end()) !=
        clause.literals.end()) {
      throw InvalidInput("literal repeated within a clause");
    }
  }
}

bool WeightedClauseSet::satisfies_hard(const Config& c) const {
  return std::all_of(clauses_.begin(), clauses_.end(), [&](const Clause& cl) {
    return !cl.weight.is_hard() || cl.satisfied_by(c);
  });
}

std::optional<double> WeightedClauseSet::log_potential(const Config& c) const {
  if (c.size() != variable_count()) throw InvalidInput("assignment length mismatch");
  double total = 0.0;
  for (const auto& cl : clauses_) {
    const bool sat = cl.satisfied_by(c);
    if (cl.weight.is_hard()) {
      if (!sat) return std::nullopt;
    } else if (sat) {
      total += cl.weight.value();
    }
  }
  return total;
}

Evidence Evidence::from_names(const WeightedClauseSet& s,
                              const std::vector<std::pair<std::string, bool>>& values) {
  Evidence e;
  for (const auto& [name, value] : values) e.assignments.emplace_back(s.variables().index(name), value);
  std::sort(e.assignments.begin(), e.assignments.end());
  for (std::size_t i = 1; i < e.assignments.size(); ++i) {
    if (e.assignments[i].first == e.assignments[i - 1].first) {
      throw InvalidInput("variable '" + s.variables().name(e.assignments[i].first) +
                         "' assigned more than once in evidence");
    }
  }
  return e;
}

bool Evidence::consistent_with(const Config& c) const {
  return std::all_of(assignments.begin(), assignments.end(),
                     [&](const auto& a) { return (c[a.first] != 0) == a.second; });
}

WeightedClauseSet parse_clauses(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> variables;
  std::unordered_map<std::string, Point> index;
  bool declared = false;
  auto var_index = [&](const std::string& name) -> Point {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    if (declared) throw InvalidInput("clause uses undeclared variable '" + name + "'");
    if (!valid_variable_name(name)) throw InvalidInput("invalid variable name '" + name + "'");
    const Point p = static_cast<Point>(variables.size());
    variables.push_back(name);
    index.emplace(name, p);
    return p;
  };

  std::vector<Clause> clauses;
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    const std::string line = strip(raw);
    if (line.empty()) continue;
    if (line.rfind("vars:", 0) == 0) {
      if (declared || !clauses.empty()) {
        throw InvalidInput("'vars:' header must come first (line " + std::to_string(lineno) + ")");
      }
      std::istringstream names(line.substr(5));
      for (std::string name; names >> name;) var_index(name);
      declared = true;
      continue;
    }
    const auto sep = line.find("::");
    if (sep == std::string::npos) {
      throw InvalidInput("line " + std::to_string(lineno) + ": expected '<weight> :: literals'");
    }
    Clause clause;
    clause.weight = Weight::parse(line.substr(0, sep));
    const std::string body = line.substr(sep + 2);
    if (body.find_first_of("&^()=><,") != std::string::npos) {
      throw InvalidInput("line " + std::to_string(lineno) +
                         ": only clauses (disjunctions of literals) are supported");
    }
    for (const std::string& token : split(body, '|')) {
      if (token.empty()) throw InvalidInput("line " + std::to_string(lineno) + ": empty literal");
      Literal lit;
      std::string name = token;
      if (name[0] == '!') {
        lit.negated = true;
        name = strip(name.substr(1));
      }
      if (name.find_first_of(" \t!") != std::string::npos) {
        throw InvalidInput("line " + std::to_string(lineno) + ": malformed literal '" + token + "'");
      }
      lit.variable = var_index(name);
      clause.literals.push_back(lit);
    }
    clauses.push_back(std::move(clause));
  }
  return WeightedClauseSet(std::move(variables), std::move(clauses));
}

std::string format_clauses(const WeightedClauseSet& s) {
  std::ostringstream out;
  out << "vars:";
  for (const auto& name : s.variables().names()) out << ' ' << name;
  out << '\n';
  for (const auto& cl : s.clauses()) {
    out << cl.weight.key() << " ::";
    for (std::size_t i = 0; i < cl.literals.size(); ++i) {
      out << (i ? " | " : " ") << (cl.literals[i].negated ? "!" : "")
          << s.variables().name(cl.literals[i].variable);
    }
    out << '\n';
  }
  return out.str();
}

Evidence parse_evidence(std::string_view text, const WeightedClauseSet& s) {
  std::istringstream in{std::string(text)};
  std::vector<std::pair<std::string, bool>> values;
  for (std::string raw; std::getline(in, raw);) {
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    const std::string line = strip(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidInput("evidence line must be 'var=true|false': " + line);
    const std::string name = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (value != "true" && value != "false") {
      throw InvalidInput("evidence value must be true or false: " + line);
    }
    values.emplace_back(name, value == "true");
  }
  return Evidence::from_names(s, values);
}

std::string format_evidence(const Evidence& e, const WeightedClauseSet& s) {
  std::ostringstream out;
  for (const auto& [var, value] : e.assignments) {
    out << s.variables().name(var) << '=' << (value ? "true" : "false") << '\n';
  }
  return out.str();
}

ClauseVertexMap::Entity ClauseVertexMap::entity(Point vertex) const {
  if (vertex < variables_) return {Kind::kPositive, vertex};
  if (vertex < 2 * variables_) return {Kind::kNegative, vertex - variables_};
  if (vertex < vertex_count()) return {Kind::kClause, vertex - 2 * variables_};
  throw InvalidInput("vertex outside clause graph");
}

ClauseGraph build_colored_graph(const WeightedClauseSet& s, const Evidence& e) {
  const std::size_t n = s.variable_count();
  const std::size_t m = s.clauses().size();
  ClauseVertexMap map(n, m);

  // Raw colors: 0 negated, 1 unnegated, 2/3 true/false evidence, then one
  // per distinct weight key in order of first appearance.
  constexpr Color kNegated = 0, kUnnegated = 1, kTrue = 2, kFalse = 3;
  std::vector<Color> raw(map.vertex_count());
  std::vector<std::string> names(map.vertex_count());
  for (Point v = 0; v < n; ++v) {
    raw[map.positive(v)] = kUnnegated;
    raw[map.negative(v)] = kNegated;
    names[map.positive(v)] = s.variables().name(v);
    names[map.negative(v)] = "!" + s.variables().name(v);
  }
  for (const auto& [var, value] : e.assignments) {
    if (var >= n) throw InvalidInput("evidence variable out of range");
    raw[map.positive(var)] = value ? kTrue : kFalse;
  }
  std::map<std::string, Color> weight_color;
  std::vector<Edge> edges;
  for (Point v = 0; v < n; ++v) edges.emplace_back(map.positive(v), map.negative(v));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& cl = s.clauses()[i];
    auto [it, inserted] = weight_color.emplace(
        cl.weight.key(), static_cast<Color>(4 + weight_color.size()));
    raw[map.clause(i)] = it->second;
    names[map.clause(i)] = "f" + std::to_string(i + 1);
    for (const auto& lit : cl.literals) {
      edges.emplace_back(map.clause(i), lit.negated ? map.negative(lit.variable)
                                                    : map.positive(lit.variable));
    }
  }
  // Compact to dense ids preserving order.
  std::vector<Color> used(raw.begin(), raw.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<Color> colors(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    colors[v] = static_cast<Color>(std::lower_bound(used.begin(), used.end(), raw[v]) - used.begin());
  }
  return ClauseGraph{ColoredGraph(map.vertex_count(), std::move(colors), std::move(edges),
                                  std::move(names)),
                     map};
}

SymmetryReport model_symmetry_group(const WeightedClauseSet& s, const Evidence& e) {
  ClauseGraph cg = build_colored_graph(s, e);
  SymmetryReport report;
  report.graph_group = automorphism_generators(cg.graph);
  const std::size_t n = s.variable_count();
  const auto& map = cg.vertex_map;

  std::vector<Permutation> projected;
  for (const auto& g : report.graph_group.generators()) {
    std::vector<Point> m(n);
    for (Point v = 0; v < n; ++v) {
      const auto pos = map.entity(g[map.positive(v)]);
      const auto neg = map.entity(g[map.negative(v)]);
      if (pos.kind != ClauseVertexMap::Kind::kPositive ||
          neg.kind != ClauseVertexMap::Kind::kNegative || pos.index != neg.index) {
        throw InternalError("graph automorphism does not project consistently onto variables");
      }
      m[v] = static_cast<Point>(pos.index);
    }
    Permutation p(std::move(m));
    if (!p.is_identity() && std::find(projected.begin(), projected.end(), p) == projected.end()) {
      projected.push_back(std::move(p));
    }
  }
  report.model_group = PermutationGroup(n, std::move(projected));
  report.variable_orbits = orbit_partition(report.model_group);

  std::vector<Point> clause_vertices;
  for (std::size_t i = 0; i < s.clauses().size(); ++i) clause_vertices.push_back(map.clause(i));
  for (Orbit orbit : orbit_partition(report.graph_group, clause_vertices)) {
    for (Point& v : orbit.elements) v = static_cast<Point>(map.entity(v).index);
    report.feature_orbits.push_back(std::move(orbit));
  }
  report.graph = std::move(cg.graph);
  report.vertex_map = map;
  return report;
}

bool is_clause_set_symmetry(const WeightedClauseSet& s, const Permutation& p) {
  if (p.size() != s.variable_count()) throw InvalidInput("permutation degree differs from variable count");
  using Key = std::pair<std::vector<Literal>, std::string>;
  std::vector<Key> original, mapped;
  for (const auto& cl : s.clauses()) {
    original.emplace_back(cl.literals, cl.weight.key());
    std::vector<Literal> lits;
    for (const auto& lit : cl.literals) lits.push_back({p[lit.variable], lit.negated});
    std::sort(lits.begin(), lits.end());
    mapped.emplace_back(std::move(lits), cl.weight.key());
  }
  std::sort(original.begin(), original.end());
  std::sort(mapped.begin(), mapped.end());
  return original == mapped;
}

WeightedClauseSet condition_on(const WeightedClauseSet& s, const Evidence& e) {
  std::vector<Clause> clauses = s.clauses();
  for (auto [var, value] : e.assignments) {
    if (var >= s.variable_count()) throw InvalidInput("evidence variable out of range");
    clauses.push_back({{{var, !value}}, Weight::hard()});
  }
  return WeightedClauseSet(s.variables().names(), std::move(clauses));
}

Config evidence_state(const Evidence& e, std::size_t variables) {
  Config c(variables, 0);
  for (auto [var, value] : e.assignments) {
    if (var >= variables) throw InvalidInput("evidence variable out of range");
    c[var] = value ? 1 : 0;
  }
  return c;
}

}  // namespace orbital
