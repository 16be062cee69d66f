#pragma once

// Vertex-colored undirected graphs and their automorphism groups.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbital/permutation.hpp"

namespace orbital {

using Color = std::uint32_t;
using Edge = std::pair<Point, Point>;

class ColoredGraph {
 public:
  ColoredGraph() = default;

  // Colors must be dense (every id in 0..max used). Edges are unordered; a
  // repeated edge is stored once. Self-loops and out-of-range endpoints throw
  // InvalidInput. Empty `names` means numeric names.
  ColoredGraph(std::size_t n, std::vector<Color> colors, std::vector<Edge> edges,
               std::vector<std::string> names = {});

  // All vertices color 0.
  static ColoredGraph uncolored(std::size_t n, std::vector<Edge> edges,
                                std::vector<std::string> names = {});

  std::size_t size() const { return colors_.size(); }
  std::size_t color_count() const { return color_count_; }
  Color color(Point v) const { return colors_[v]; }
  const std::vector<Color>& colors() const { return colors_; }
  // Sorted, each with first < second.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Point>& neighbors(Point v) const { return adjacency_[v]; }
  std::size_t degree(Point v) const { return adjacency_[v].size(); }
  std::size_t max_degree() const;
  bool has_edge(Point u, Point v) const;
  const PointNames& names() const { return names_; }

  // Graph in which vertex v is renamed rho(v).
  ColoredGraph relabeled(const Permutation& rho) const;

 private:
  std::vector<Color> colors_;
  std::size_t color_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Point>> adjacency_;
  PointNames names_;
};

struct OrderedPartition {
  std::vector<std::vector<Point>> cells;  // each cell sorted ascending

  // Cells ordered by color id.
  static OrderedPartition from_colors(const ColoredGraph& g);
  // Throws InvalidInput unless cells are nonempty, disjoint, and cover 0..n-1.
  void validate(std::size_t n) const;
  bool is_discrete() const;
  std::vector<std::size_t> cell_sizes() const;

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
};

// Coarsest equitable refinement of `start`: afterwards every vertex of a cell
// has the same number of neighbours in each cell. Splits are decided only by
// neighbour counts and cell positions, so the result commutes with
// relabelling. Sub-cells replace their parent in order of increasing count.
OrderedPartition color_refine(const ColoredGraph& g, const OrderedPartition& start);

// True iff p preserves colors and maps the edge set onto itself.
bool is_automorphism(const ColoredGraph& g, const Permutation& p);

// Generators of the full automorphism group, found by
// individualization-refinement with orbit pruning. Deterministic; at most
// n - 1 non-identity generators.
PermutationGroup automorphism_generators(const ColoredGraph& g);

// Every color-preserving bijection that is an automorphism, sorted. Test
// oracle; throws GuardExceeded for n > 10.
std::vector<Permutation> brute_force_automorphisms(const ColoredGraph& g);

// Text format: header "n m c", then n lines "vertex color", then m lines
// "u v". Vertex tokens are names; edges refer to them.
ColoredGraph parse_graph(std::string_view text);
std::string format_graph(const ColoredGraph& g);

}  // namespace orbital
