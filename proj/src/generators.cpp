#include "orbital/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "orbital/error.hpp"
#include "orbital/rng.hpp"

namespace orbital {

namespace {

void require_k(std::size_t k) {
  if (k < 2) throw InvalidInput("model size k must be at least 2");
}

}  // namespace

ColoredGraph gen_grid(std::size_t k) {
  require_k(k);
  const std::size_t n = k * k;
  std::vector<std::string> names(n);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t v = r * k + c;
      names[v] = n <= 26 ? std::string(1, static_cast<char>('a' + v))
                         : "r" + std::to_string(r) + "c" + std::to_string(c);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      const auto v = static_cast<Point>(r * k + c);
      if (c + 1 < k) edges.emplace_back(v, v + 1);
      if (r + 1 < k) edges.emplace_back(v, static_cast<Point>(v + k));
    }
  }
  return ColoredGraph::uncolored(n, std::move(edges), std::move(names));
}

ColoredGraph gen_connected_cliques(std::size_t k) {
  require_k(k);
  const std::size_t size = k - 1;
  const std::size_t n = (k + 1) * size + 1;
  const auto hub = static_cast<Point>(n - 1);
  std::vector<std::string> names(n);
  std::vector<Edge> edges;
  for (std::size_t q = 0; q <= k; ++q) {
    const auto base = static_cast<Point>(q * size);
    for (std::size_t i = 0; i < size; ++i) {
      names[base + i] = "k" + std::to_string(q) + "_" + std::to_string(i);
      for (std::size_t j = i + 1; j < size; ++j) {
        edges.emplace_back(static_cast<Point>(base + i), static_cast<Point>(base + j));
      }
    }
    edges.emplace_back(base, hub);
  }
  names[hub] = "hub";
  return ColoredGraph::uncolored(n, std::move(edges), std::move(names));
}

ColoredGraph gen_complete(std::size_t k) {
  require_k(k);
  const std::size_t n = k * k;
  std::vector<std::string> names(n);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    names[u] = "v" + std::to_string(u);
    for (std::size_t v = u + 1; v < n; ++v) {
      edges.emplace_back(static_cast<Point>(u), static_cast<Point>(v));
    }
  }
  return ColoredGraph::uncolored(n, std::move(edges), std::move(names));
}

GroundedModel gen_friends_smokers(std::size_t people, double evidence_fraction,
                                  std::uint64_t seed) {
  if (people < 2) throw InvalidInput("Friends & Smokers needs at least 2 people");
  if (!(evidence_fraction >= 0.0 && evidence_fraction <= 1.0)) {
    throw InvalidInput("evidence fraction must lie in [0, 1]");
  }
  const std::size_t n = people;
  auto person = [](std::size_t i) { return "p" + std::to_string(i + 1); };
  auto smokes = [](std::size_t x) { return static_cast<Point>(x); };
  auto cancer = [n](std::size_t x) { return static_cast<Point>(n + x); };
  auto friends = [n](std::size_t x, std::size_t y) { return static_cast<Point>(2 * n + x * n + y); };

  std::vector<std::string> vars(2 * n + n * n);
  for (std::size_t x = 0; x < n; ++x) {
    vars[smokes(x)] = "S_" + person(x);
    vars[cancer(x)] = "C_" + person(x);
    for (std::size_t y = 0; y < n; ++y) vars[friends(x, y)] = "F_" + person(x) + "_" + person(y);
  }

  const Weight w_spread = Weight::parse("1.1"), w_friend = Weight::parse("-1.2");
  const Weight w_cancer = Weight::parse("1.5"), w_smoke = Weight::parse("-0.6");
  const Weight w_has = Weight::parse("-0.9");
  std::vector<Clause> clauses;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      clauses.push_back({{{friends(x, y), true}, {smokes(x), true}, {smokes(y), false}}, w_spread});
      clauses.push_back({{{friends(x, y), false}}, w_friend});
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    clauses.push_back({{{smokes(x), true}, {cancer(x), false}}, w_cancer});
    clauses.push_back({{{smokes(x), false}}, w_smoke});
    clauses.push_back({{{cancer(x), false}}, w_has});
  }

  GroundedModel model{WeightedClauseSet(std::move(vars), std::move(clauses)), {}};
  const auto observed = static_cast<std::size_t>(std::llround(evidence_fraction * static_cast<double>(n)));
  if (observed == 0) return model;

  // Partial Fisher-Yates over persons, then over candidate friends.
  Rng rng = make_rng(seed, 0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::pair<Point, bool>> values;
  for (std::size_t i = 0; i < observed; ++i) {
    std::swap(order[i], order[i + uniform_index(rng, n - i)]);
    const std::size_t p = order[i];
    values.emplace_back(smokes(p), bernoulli(rng, 0.5));
    std::vector<std::size_t> others;
    for (std::size_t q = 0; q < n; ++q) {
      if (q != p) others.push_back(q);
    }
    const std::size_t count = std::min<std::size_t>(10, n - 1);
    for (std::size_t j = 0; j < count; ++j) {
      std::swap(others[j], others[j + uniform_index(rng, others.size() - j)]);
      values.emplace_back(friends(p, others[j]), true);
    }
  }
  std::sort(values.begin(), values.end());
  model.evidence.assignments = std::move(values);
  return model;
}

}  // namespace orbital
