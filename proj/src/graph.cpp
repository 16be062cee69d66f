#include "orbital/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "orbital/error.hpp"

namespace orbital {

ColoredGraph::ColoredGraph(std::size_t n, std::vector<Color> colors,
                           std::vector<Edge> edges, std::vector<std::string> names)
    : colors_(std::move(colors)), adjacency_(n) {
  if (colors_.size() != n) throw InvalidInput("color array length differs from vertex count");
  if (n > 0) {
    color_count_ = *std::max_element(colors_.begin(), colors_.end()) + 1;
    std::vector<bool> used(color_count_, false);
    for (Color c : colors_) used[c] = true;
    if (std::find(used.begin(), used.end(), false) != used.end()) {
      throw InvalidInput("color ids must be dense starting at 0");
    }
  }
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InvalidInput("edge endpoint out of range");
    if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  names_ = names.empty() ? PointNames::numeric(n) : PointNames(std::move(names));
  if (names_.size() != n) throw InvalidInput("name list length differs from vertex count");
}

ColoredGraph ColoredGraph::uncolored(std::size_t n, std::vector<Edge> edges,
                                     std::vector<std::string> names) {
  return ColoredGraph(n, std::vector<Color>(n, 0), std::move(edges), std::move(names));
}

std::size_t ColoredGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& adj : adjacency_) d = std::max(d, adj.size());
  return d;
}

bool ColoredGraph::has_edge(Point u, Point v) const {
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

ColoredGraph ColoredGraph::relabeled(const Permutation& rho) const {
  if (rho.size() != size()) throw InvalidInput("relabeling has wrong degree");
  std::vector<Color> colors(size());
  std::vector<std::string> names(size());
  for (Point v = 0; v < size(); ++v) {
    colors[rho[v]] = colors_[v];
    names[rho[v]] = names_.name(v);
  }
  std::vector<Edge> edges;
  for (auto [u, v] : edges_) edges.emplace_back(rho[u], rho[v]);
  return ColoredGraph(size(), std::move(colors), std::move(edges), std::move(names));
}

OrderedPartition OrderedPartition::from_colors(const ColoredGraph& g) {
  OrderedPartition p;
  p.cells.resize(g.color_count());
  for (Point v = 0; v < g.size(); ++v) p.cells[g.color(v)].push_back(v);
  return p;
}

void OrderedPartition::validate(std::size_t n) const {
  std::vector<bool> seen(n, false);
  std::size_t total = 0;
  for (const auto& cell : cells) {
    if (cell.empty()) throw InvalidInput("partition has an empty cell");
    for (Point v : cell) {
      if (v >= n || seen[v]) throw InvalidInput("partition cells overlap or leave the domain");
      seen[v] = true;
      ++total;
    }
  }
  if (total != n) throw InvalidInput("partition does not cover every vertex");
}

bool OrderedPartition::is_discrete() const {
  return std::all_of(cells.begin(), cells.end(),
                     [](const auto& c) { return c.size() == 1; });
}

std::vector<std::size_t> OrderedPartition::cell_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(cells.size());
  for (const auto& c : cells) sizes.push_back(c.size());
  return sizes;
}

OrderedPartition color_refine(const ColoredGraph& g, const OrderedPartition& start) {
  start.validate(g.size());
  for (const auto& cell : start.cells) {
    for (Point v : cell) {
      if (g.color(v) != g.color(cell.front())) {
        throw InvalidInput("start partition mixes vertex colors within a cell");
      }
    }
  }
  OrderedPartition p = start;
  for (auto& cell : p.cells) std::sort(cell.begin(), cell.end());

  std::vector<std::uint32_t> count(g.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < p.cells.size(); ++s) {
      std::fill(count.begin(), count.end(), 0);
      for (Point u : p.cells[s]) {
        for (Point w : g.neighbors(u)) ++count[w];
      }
      std::vector<std::vector<Point>> next;
      next.reserve(p.cells.size());
      for (auto& cell : p.cells) {
        if (cell.size() == 1) {
          next.push_back(std::move(cell));
          continue;
        }
        std::map<std::uint32_t, std::vector<Point>> by_count;
        for (Point v : cell) by_count[count[v]].push_back(v);
        if (by_count.size() > 1) changed = true;
        for (auto& [c, sub] : by_count) next.push_back(std::move(sub));
      }
      p.cells = std::move(next);
    }
  }
  return p;
}

bool is_automorphism(const ColoredGraph& g, const Permutation& p) {
  if (p.size() != g.size()) {
    throw InvalidInput("permutation degree " + std::to_string(p.size()) +
                       " does not match graph size " + std::to_string(g.size()));
  }
  for (Point v = 0; v < g.size(); ++v) {
    if (g.color(v) != g.color(p[v])) return false;
  }
  for (auto [u, v] : g.edges()) {
    if (!g.has_edge(p[u], p[v])) return false;
  }
  return true;
}

namespace {

class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const ColoredGraph& g) : g_(g) {}

  PermutationGroup run() {
    const std::size_t n = g_.size();
    if (n == 0) return PermutationGroup::trivial(0);

    // First path: always individualize the least vertex of the target cell.
    path_.push_back(color_refine(g_, OrderedPartition::from_colors(g_)));
    while (!path_.back().is_discrete()) {
      const std::size_t t = target_cell(path_.back());
      targets_.push_back(t);
      const Point v = path_.back().cells[t].front();
      chosen_.push_back(v);
      path_.push_back(individualize(path_.back(), t, v));
    }
    leaf_ = path_.back();

    // Deepest level first so that every generator found so far fixes the
    // path prefix of the level being processed.
    for (std::size_t level = targets_.size(); level-- > 0;) {
      const auto& cell = path_[level].cells[targets_[level]];
      for (Point u : cell) {
        if (u == chosen_[level]) continue;
        if (same_orbit(u, chosen_[level])) continue;
        OrderedPartition child = individualize(path_[level], targets_[level], u);
        if (child.cell_sizes() != path_[level + 1].cell_sizes()) continue;
        if (auto sigma = search(child, level + 1)) add_generator(std::move(*sigma));
      }
    }
    return PermutationGroup(n, generators_);
  }

 private:
  static std::size_t target_cell(const OrderedPartition& p) {
    std::size_t best = p.cells.size();
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
      if (p.cells[i].size() < 2) continue;
      if (best == p.cells.size() || p.cells[i].size() < p.cells[best].size()) best = i;
    }
    return best;
  }

  OrderedPartition individualize(const OrderedPartition& p, std::size_t t, Point v) const {
    OrderedPartition q;
    q.cells.reserve(p.cells.size() + 1);
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
      if (i != t) {
        q.cells.push_back(p.cells[i]);
        continue;
      }
      q.cells.push_back({v});
      std::vector<Point> rest;
      for (Point u : p.cells[i]) {
        if (u != v) rest.push_back(u);
      }
      q.cells.push_back(std::move(rest));
    }
    return color_refine(g_, q);
  }

  // Depth-first search below `node` for a leaf whose induced map from the
  // first leaf is an automorphism.
  std::optional<Permutation> search(const OrderedPartition& node, std::size_t depth) {
    if (node.is_discrete()) {
      std::vector<Point> m(g_.size());
      for (std::size_t k = 0; k < leaf_.cells.size(); ++k) {
        m[leaf_.cells[k].front()] = node.cells[k].front();
      }
      Permutation sigma(std::move(m));
      if (is_automorphism(g_, sigma)) return sigma;
      return std::nullopt;
    }
    const std::size_t t = target_cell(node);
    for (Point v : node.cells[t]) {
      OrderedPartition child = individualize(node, t, v);
      if (depth + 1 >= path_.size() ||
          child.cell_sizes() != path_[depth + 1].cell_sizes()) {
        continue;
      }
      if (auto sigma = search(child, depth + 1)) return sigma;
    }
    return std::nullopt;
  }

  bool same_orbit(Point a, Point b) const {
    if (generators_.empty()) return false;
    return orbit_of_point(PermutationGroup(g_.size(), generators_), a).contains(b);
  }

  void add_generator(Permutation sigma) {
    if (sigma.is_identity()) return;
    if (std::find(generators_.begin(), generators_.end(), sigma) != generators_.end()) return;
    generators_.push_back(std::move(sigma));
  }

  const ColoredGraph& g_;
  std::vector<OrderedPartition> path_;
  std::vector<std::size_t> targets_;
  std::vector<Point> chosen_;
  OrderedPartition leaf_;
  std::vector<Permutation> generators_;
};

}  // namespace

PermutationGroup automorphism_generators(const ColoredGraph& g) {
  return AutomorphismSearch(g).run();
}

std::vector<Permutation> brute_force_automorphisms(const ColoredGraph& g) {
  const std::size_t n = g.size();
  if (n > 10) throw GuardExceeded("brute-force automorphism search limited to n <= 10");
  std::vector<Point> image(n);
  std::vector<bool> used(n, false);
  std::vector<Permutation> result;

  auto extend = [&](auto&& self, Point v) -> void {
    if (v == n) {
      result.emplace_back(image);
      return;
    }
    for (Point w = 0; w < n; ++w) {
      if (used[w] || g.color(w) != g.color(v)) continue;
      bool ok = true;
      for (Point u = 0; u < v && ok; ++u) {
        ok = g.has_edge(u, v) == g.has_edge(image[u], w);
      }
      if (!ok) continue;
      used[w] = true;
      image[v] = w;
      self(self, v + 1);
      used[w] = false;
    }
  };
  extend(extend, 0);
  std::sort(result.begin(), result.end());
  return result;
}

ColoredGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw InvalidInput("graph text is empty");
  std::istringstream header(lines[0]);
  std::size_t n = 0, m = 0, c = 0;
  if (!(header >> n >> m >> c)) throw InvalidInput("graph header must be 'n m c'");
  if (lines.size() != 1 + n + m) {
    throw InvalidInput("graph text has " + std::to_string(lines.size() - 1) +
                       " body lines, expected " + std::to_string(n + m));
  }
  std::vector<std::string> names(n);
  std::vector<Color> colors(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::istringstream row(lines[1 + i]);
    long long color = -1;
    if (!(row >> names[i] >> color) || color < 0 ||
        static_cast<std::size_t>(color) >= c) {
      throw InvalidInput("bad vertex line: " + lines[1 + i]);
    }
    colors[i] = static_cast<Color>(color);
  }
  PointNames index(names);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    std::istringstream row(lines[1 + n + i]);
    std::string u, v;
    if (!(row >> u >> v)) throw InvalidInput("bad edge line: " + lines[1 + n + i]);
    edges.emplace_back(index.index(u), index.index(v));
  }
  ColoredGraph g(n, std::move(colors), std::move(edges), std::move(names));
  if (g.color_count() != c && n > 0) {
    throw InvalidInput("header declares " + std::to_string(c) + " colors, found " +
                       std::to_string(g.color_count()));
  }
  return g;
}

std::string format_graph(const ColoredGraph& g) {
  std::ostringstream out;
  out << g.size() << ' ' << g.edges().size() << ' ' << g.color_count() << '\n';
  for (Point v = 0; v < g.size(); ++v) out << g.names().name(v) << ' ' << g.color(v) << '\n';
  for (auto [u, v] : g.edges()) out << g.names().name(u) << ' ' << g.names().name(v) << '\n';
  return out.str();
}

}  // namespace orbital
