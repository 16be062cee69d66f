// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orbital/analysis.hpp"
#include "orbital/chains.hpp"
#include "orbital/clauses.hpp"
#include "orbital/generators.hpp"
#include "orbital/graph.hpp"
#include "orbital/permutation.hpp"
#include "test_support.hpp"

using namespace orbital;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Detail {
 public:
  template <class T>
  Detail& operator<<(const T& v) {
    s_ << v;
    return *this;
  }
  std::string str() const { return s_.str(); }

 private:
  std::ostringstream s_;
};

// ---------------------------------------------------------------- AC1
Outcome ac1() {
  const auto graph = build_colored_graph(orbital::testing::three_var()).graph;
  const auto group = automorphism_generators(graph);
  const auto order = enumerate_group(group).size();
  const bool one = group.generators().size() == 1;
  const std::string gen = one ? format_cycles(group.generators()[0], graph.names()) : "";
  Detail d;
  d << "order " << order << ", generator " << gen;
  return {order == 2 && gen == "(a b)(!a !b)(f1 f2)", d.str()};
}

// ---------------------------------------------------------------- AC2
Outcome ac2() {
  const std::size_t g = enumerate_group(automorphism_generators(gen_grid(3))).size();
  const std::size_t c = enumerate_group(automorphism_generators(gen_connected_cliques(3))).size();
  const std::size_t k = enumerate_group(automorphism_generators(gen_complete(3))).size();
  Detail d;
  d << "orders " << g << " / " << c << " / " << k;
  return {g == 8 && c == 24 && k == 362880, d.str()};
}

// ---------------------------------------------------------------- AC3
Outcome ac3() {
  struct Case {
    ColoredGraph graph;
    std::size_t orbits;
    std::set<std::size_t> cards;
  };
  const std::vector<Case> cases{{gen_grid(3), 102, {1, 2, 4, 8}},
                                {gen_connected_cliques(3), 70, {1, 4, 6, 12, 24}},
                                {gen_complete(3), 10, {1, 9, 36, 84, 126}}};
  Outcome out;
  Detail d;
  for (const auto& c : cases) {
    const auto group = automorphism_generators(c.graph);
    const auto orbits = config_space_orbits(group);
    const std::set<std::size_t> cards(orbits.sizes.begin(), orbits.sizes.end());
    const auto elements = enumerate_group(group);
    const double burnside = burnside_orbit_count(elements);
    std::size_t total = 0;
    for (auto s : orbits.sizes) total += s;
    const bool ok = orbits.count() == c.orbits && cards == c.cards && total == 512 &&
                    std::abs(burnside - static_cast<double>(c.orbits)) < 1e-9;
    out.pass = out.pass && ok;
    d << orbits.count() << " orbits (burnside " << burnside << ") ";
  }
  out.detail = d.str();
  return out;
}

// ---------------------------------------------------------------- AC4, AC5
struct KernelCase {
  std::string name;
  TransitionMatrix base;
  TransitionMatrix orbital;
  ExactDistribution pi;
  PermutationGroup group;
};

std::vector<KernelCase> kernel_cases() {
  std::vector<KernelCase> out;
  {
    const auto s = orbital::testing::symmetric_pair();
    const ClauseModel m(s);
    const auto group = model_symmetry_group(s).model_group;
    out.push_back({"symmetric_pair", transition_matrix(m, ChainKind::kGibbs),
                   transition_matrix(m, ChainKind::kOrbitalGibbs, &group), exact_pi_clauses(s), group});
  }
  for (auto [name, g] : {std::pair{"3-grid", gen_grid(3)}, std::pair{"3-cliques", gen_connected_cliques(3)}}) {
    const IndependentSetModel m(g, 1.0);
    const auto group = automorphism_generators(g);
    out.push_back({name, transition_matrix(m, ChainKind::kInsertDelete),
                   transition_matrix(m, ChainKind::kOrbitalInsertDelete, &group),
                   exact_pi_lambda(g, 1.0), group});
  }
  return out;
}

Outcome ac4() {
  Outcome out;
  Detail d;
  for (const auto& c : kernel_cases()) {
    const auto balance = check_detailed_balance(c.orbital, c.pi, 1e-10);
    const bool ok = balance.pass && has_positive_diagonal(c.orbital) && is_irreducible(c.orbital) &&
                    has_positive_diagonal(c.base) && is_irreducible(c.base);
    out.pass = out.pass && ok;
    d << c.name << " balance " << std::setprecision(2) << balance.max_violation << (ok ? " ok; " : " BAD; ");
  }
  out.detail = d.str();
  return out;
}

Outcome ac5() {
  Outcome out;
  Detail d;
  for (const auto& c : kernel_cases()) {
    const double r = symmetry_compatibility_residual(c.base, c.group);
    out.pass = out.pass && r <= 1e-12;
    d << c.name << " " << std::setprecision(2) << r << "; ";
  }
  out.detail = d.str();
  return out;
}

// ---------------------------------------------------------------- AC6
Outcome ac6() {
  Outcome out;
  Detail d;
  for (std::size_t n = 4; n <= 9; ++n) {
    const auto g = orbital::testing::complete_graph(n);
    const IndependentSetModel m(g, 1.0);
    const auto group = automorphism_generators(g);
    const auto p = transition_matrix(m, ChainKind::kOrbitalInsertDelete, &group);
    const auto pi = exact_pi_lambda(g, 1.0);
    d << "K" << n << ":";
    for (double eps : {0.1, 0.01}) {
      const auto r = mixing_time(p, pi, eps);
      const double bound = static_cast<double>(n) * std::log(static_cast<double>(n) / eps);
      out.pass = out.pass && static_cast<double>(r.tau) <= bound;
      d << " " << r.tau << "<=" << std::fixed << std::setprecision(1) << bound << std::defaultfloat;
    }
    d << "; ";
  }
  out.detail = d.str();
  return out;
}

// ---------------------------------------------------------------- AC7
// Per-entry 3 sigma comparison of an empirical row; returns worst z-score.
double row_z(const std::map<Config, std::size_t>& counts, std::size_t draws, const TransitionMatrix& p,
             const Config& from, bool& ok) {
  const std::size_t row = p.space.index_of(from);
  double worst = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double q = p(row, j);
    auto it = counts.find(p.space[j]);
    const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    const double dev = std::abs(c - static_cast<double>(draws) * q);
    const double sigma = std::sqrt(static_cast<double>(draws) * q * (1.0 - q));
    if (dev > 3.0 * sigma + 1e-9) ok = false;
    if (sigma > 0) worst = std::max(worst, dev / sigma);
    else if (dev > 0) worst = INFINITY;
  }
  return worst;
}

Outcome ac7() {
  Outcome out;
  Detail d;
  const std::size_t trials = 100'000;
  struct Pair {
    std::size_t k;
    const char* x;
    const char* y;
  };
  for (const Pair& pr : {Pair{3, "100000001", "000000001"}, Pair{4, "1000000000100000", "0000000000100000"}}) {
    const IndependentSetModel m(gen_grid(pr.k), 1.0);
    const auto group = automorphism_generators(m.graph());
    const auto elements = enumerate_group(group);
    const auto p = transition_matrix(m, ChainKind::kOrbitalInsertDelete, &group);
    const Config x = parse_bitstring(pr.x), y = parse_bitstring(pr.y);
    Rng rng = make_rng(700 + pr.k);
    std::map<Config, std::size_t> cx, cy;
    for (std::size_t i = 0; i < trials; ++i) {
      const auto o = coupling_step(m, elements, x, y, rng);
      ++cx[o.x];
      ++cy[o.y];
    }
    bool faithful = true;
    const double zx = row_z(cx, trials, p, x, faithful);
    const double zy = row_z(cy, trials, p, y, faithful);

    Rng drift_rng = make_rng(710 + pr.k);
    const auto r = coupling_drift(m, group, trials, drift_rng);
    const bool drift_ok = r.expected_drift <= r.bound + 3.0 * r.drift_se;
    out.pass = out.pass && faithful && drift_ok;
    d << pr.k << "-grid: max z " << std::setprecision(3) << std::max(zx, zy) << ", drift "
      << r.expected_drift << " <= " << r.bound << " + 3*" << r.drift_se << "; ";
  }
  const double rho4 = exact_rho(gen_grid(4), automorphism_generators(gen_grid(4)));
  out.pass = out.pass && rho4 < 1.0;
  d << "rho(4-grid) " << std::setprecision(6) << rho4;
  out.detail = d.str();
  return out;
}

// ---------------------------------------------------------------- AC8
Outcome ac8() {
  const std::size_t seeds = 20;
  const std::size_t budget = 100'000;
  const std::size_t every = 1'000;
  const double t_crit = boost::math::quantile(boost::math::students_t(static_cast<double>(seeds - 1)), 0.95);
  Outcome out;
  Detail d;
  std::map<std::string, double> gaps;
  for (auto [name, g] : {std::pair{"3-grid", gen_grid(3)}, std::pair{"3-cliques", gen_connected_cliques(3)},
                         std::pair{"3-complete", gen_complete(3)}}) {
    const IndependentSetModel m(g, 1.0);
    const auto exact = exact_pi_lambda(g, 1.0);
    const OrbitSampler sampler(automorphism_generators(g), SamplerMode::kExact);
    std::vector<double> plain, orb, diff;
    for (std::size_t s = 1; s <= seeds; ++s) {
      RunOptions opts;
      opts.steps = budget - 1;  // initial state is the first sample
      opts.seed = s;
      plain.push_back(normalized_tv_area(run_tv_curve(m, ChainKind::kInsertDelete, opts, nullptr, exact, every)));
      orb.push_back(normalized_tv_area(
          run_tv_curve(m, ChainKind::kOrbitalInsertDelete, opts, &sampler, exact, every)));
      diff.push_back(plain.back() - orb.back());
    }
    auto mean = [](const std::vector<double>& v) {
      double a = 0;
      for (double x : v) a += x;
      return a / static_cast<double>(v.size());
    };
    const double md = mean(diff);
    double var = 0;
    for (double x : diff) var += (x - md) * (x - md);
    var /= static_cast<double>(seeds - 1);
    const double t = md / std::sqrt(var / static_cast<double>(seeds));
    const double gap = 1.0 - mean(orb) / mean(plain);
    gaps[name] = gap;
    const bool ok = t > t_crit;
    out.pass = out.pass && ok;
    d << name << " area " << std::setprecision(3) << mean(plain) << " vs " << mean(orb) << " t=" << t
      << " gap " << gap << "; ";
  }
  const bool largest = gaps["3-complete"] > gaps["3-grid"] && gaps["3-complete"] > gaps["3-cliques"];
  out.pass = out.pass && largest;
  d << "t_crit " << std::setprecision(4) << t_crit << (largest ? ", complete gap largest" : ", complete gap NOT largest");
  out.detail = d.str();
  return out;
}

// ---------------------------------------------------------------- AC9
Outcome ac9() {
  Outcome out;
  Detail d;
  const std::size_t draws = 100'000;
  for (const auto& g : {gen_grid(3), gen_connected_cliques(3)}) {
    const auto group = automorphism_generators(g);
    const auto elements = enumerate_group(group);
    ProductReplacement pr(group, 9090);
    std::vector<std::size_t> counts(elements.size(), 0);
    for (std::size_t i = 0; i < draws; ++i) {
      const Permutation& e = pr.next();
      const auto it = std::lower_bound(elements.begin(), elements.end(), e);
      if (it == elements.end() || *it != e) {
        out.pass = false;
        continue;
      }
      ++counts[static_cast<std::size_t>(it - elements.begin())];
    }
    const double expected = static_cast<double>(draws) / static_cast<double>(elements.size());
    double chi = 0.0;
    for (auto c : counts) chi += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    const double df = static_cast<double>(elements.size() - 1);
    const double crit = boost::math::quantile(boost::math::chi_squared(df), 0.99);
    const double pvalue = boost::math::cdf(boost::math::complement(boost::math::chi_squared(df), chi));
    out.pass = out.pass && chi < crit;
    d << "order " << elements.size() << ": chi2 " << std::setprecision(4) << chi << " < " << crit << " (p "
      << pvalue << "); ";
  }
  out.detail = d.str();
  return out;
}

// ---------------------------------------------------------------- AC10
Outcome ac10() {
  Outcome out;
  std::mt19937_64 rng(20240);
  std::size_t graphs_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto g = orbital::testing::random_colored_graph(n, rng);
    const auto group = automorphism_generators(g);
    // Closure oracle instead of the library's own enumeration.
    const auto generated = orbital::testing::closure(n, group.generators());
    std::set<std::vector<Point>> brute;
    for (const auto& p : brute_force_automorphisms(g)) brute.emplace(p.mapping().begin(), p.mapping().end());
    graphs_ok += generated == brute;
  }
  std::size_t sets_ok = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + rng() % 4;
    std::vector<Permutation> sym{parse_cycles("(0 1)", n), parse_cycles("(2 3)", n)};
    if (trial % 2) sym.push_back(parse_cycles("(0 2)(1 3)", n));
    const auto s = orbital::testing::symmetrized_clauses(n, sym, rng);
    const auto r = model_symmetry_group(s);
    const auto m = marginals(exact_pi_clauses(s));
    bool ok = true;
    for (const auto& o : r.variable_orbits) {
      for (Point v : o.elements) {
        const double diff = std::abs(m[v] - m[o.representative()]);
        worst = std::max(worst, diff);
        ok = ok && diff <= 1e-12;
      }
    }
    sets_ok += ok;
  }
  Detail d;
  d << graphs_ok << "/100 graphs, " << sets_ok << "/20 clause sets (max marginal gap " << std::setprecision(2)
    << worst << ")";
  out.pass = graphs_ok == 100 && sets_ok == 20;
  out.detail = d.str();
  return out;
}

// ---------------------------------------------------------------- AC11
Outcome ac11() {
  Outcome out;
  Detail d;
  for (std::size_t people : {3, 4, 5}) {
    const auto n = model_symmetry_group(gen_friends_smokers(people).clauses).feature_orbits.size();
    out.pass = out.pass && n == 7;
    d << people << " people: " << n << "; ";
  }
  out.detail = d.str();
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    double limit_seconds;  // 0: no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", 1, ac1},    {"AC2", 10, ac2},   {"AC3", 0, ac3},  {"AC4", 60, ac4},
      {"AC5", 0, ac5},    {"AC6", 60, ac6},   {"AC7", 300, ac7}, {"AC8", 600, ac8},
      {"AC9", 0, ac9},    {"AC10", 0, ac10},  {"AC11", 0, ac11},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::cout << c.id << ' ' << (pass ? "PASS" : "FAIL") << ' ' << o.detail << " [" << std::fixed
              << std::setprecision(2) << secs << " s";
    if (c.limit_seconds > 0) std::cout << " / limit " << c.limit_seconds << " s";
    std::cout << "]" << std::defaultfloat << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
