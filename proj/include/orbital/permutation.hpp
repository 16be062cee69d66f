#pragma once

// Permutations on {0, ..., n-1}, permutation groups given by generators, and
// their actions on points and on binary configurations.
//
// Composition reads left to right: x^(p*q) = (x^p)^q. The same convention is
// used by cycle products, so "(b c)(a b)" applies (b c) first.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "orbital/config.hpp"
#include "orbital/rng.hpp"

namespace orbital {

using Point = std::uint32_t;

inline constexpr std::size_t kDefaultGroupCap = 1'000'000;
inline constexpr std::size_t kDefaultOrbitCap = 1'000'000;

class Permutation {
 public:
  Permutation() = default;

  // Throws InvalidInput unless `mapping` is a bijection on {0..n-1}.
  explicit Permutation(std::vector<Point> mapping);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return map_.size(); }
  Point operator[](Point x) const { return map_[x]; }
  std::span<const Point> mapping() const { return map_; }

  bool is_identity() const;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<Point> mapping, Unchecked) : map_(std::move(mapping)) {}
  friend Permutation compose(const Permutation& p, const Permutation& q);

  std::vector<Point> map_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

// x^(compose(p, q)) = (x^p)^q.
Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

// Checked image of a point.
Point apply_point(const Permutation& p, Point x);

// result[p(i)] = c[i]: the set of 1-points is carried along by p.
Config apply_config(const Permutation& p, const Config& c);
// Same, writing into `out` (resized as needed). `out` must not alias `c`.
void apply_config_into(const Permutation& p, const Config& c, Config& out);

// Disjoint cycles of length >= 2, each starting at its least point, sorted by
// that point.
std::vector<std::vector<Point>> disjoint_cycles(const Permutation& p);
// Number of cycles including fixed points.
std::size_t cycle_count(const Permutation& p);

// Names for the points of a domain. Defaults to "0", "1", ...
class PointNames {
 public:
  PointNames() = default;
  explicit PointNames(std::vector<std::string> names);
  static PointNames numeric(std::size_t n);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Point x) const { return names_.at(x); }
  const std::vector<std::string>& names() const { return names_; }
  // Throws InvalidInput for an unknown name.
  Point index(std::string_view name) const;
  bool contains(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Point> index_;
};

// Parses a product of cycles such as "(a c)(d f)(g i)". Points inside a cycle
// are whitespace- or comma-separated names. Cycles are composed left to right,
// so they need not be disjoint. A point repeated inside one cycle is an error.
// "()" and "" are the identity.
Permutation parse_cycles(std::string_view text, const PointNames& names);
Permutation parse_cycles(std::string_view text, std::size_t n);

// Disjoint-cycle form sorted by least moved point, identity as "()".
std::string format_cycles(const Permutation& p, const PointNames& names);
std::string format_cycles(const Permutation& p);

class PermutationGroup {
 public:
  PermutationGroup() = default;
  // Throws InvalidInput if any generator's size differs from `degree`.
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators);

  static PermutationGroup trivial(std::size_t degree) { return {degree, {}}; }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  // True when every generator is the identity (including no generators).
  bool is_trivial() const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
};

struct Orbit {
  std::vector<Point> elements;  // sorted ascending
  Point representative() const { return elements.front(); }
  std::size_t size() const { return elements.size(); }
  bool contains(Point x) const;
};

struct ConfigOrbit {
  std::vector<Config> elements;  // sorted ascending
  const Config& representative() const { return elements.front(); }
  std::size_t size() const { return elements.size(); }
  bool contains(const Config& c) const;
};

Orbit orbit_of_point(const PermutationGroup& group, Point x);

// Orbits of the group on its whole domain, ordered by least representative.
std::vector<Orbit> orbit_partition(const PermutationGroup& group);
// Orbits on a subset of the domain. Throws InvalidInput if the subset is not
// a union of orbits.
std::vector<Orbit> orbit_partition(const PermutationGroup& group,
                                   std::span<const Point> domain);

// Exact orbit by breadth-first closure under the generators. Throws
// GuardExceeded when the orbit grows past `cap`.
ConfigOrbit orbit_of_config(const PermutationGroup& group, const Config& c,
                            std::size_t cap = kDefaultOrbitCap);

// All group elements by closure under right multiplication by generators,
// sorted. Throws GuardExceeded when the group has more than `cap` elements.
std::vector<Permutation> enumerate_group(const PermutationGroup& group,
                                         std::size_t cap = kDefaultGroupCap);

// Orbits of the group acting on all of {0,1}^degree. Requires degree <= 24.
struct ConfigSpaceOrbits {
  std::size_t degree = 0;
  std::vector<std::uint64_t> representatives;  // least mask of each orbit
  std::vector<std::size_t> sizes;
  std::size_t count() const { return sizes.size(); }
};
ConfigSpaceOrbits config_space_orbits(const PermutationGroup& group);

// Burnside count of orbits on {0,1}^n: mean of 2^(cycles of g) over elements.
double burnside_orbit_count(std::span<const Permutation> elements);

// Product replacement with an accumulator ("rattle"). Each move picks slots
// i != j, replaces slot i by slot_i * slot_j or slot_i * slot_j^-1 (coin
// flip), then multiplies the accumulator by slot i. Elements are read from
// the accumulator.
class ProductReplacement {
 public:
  // slots == 0 selects max(10, 2 * |generators| + 1); burn_in == kAuto
  // selects 60 * slots moves.
  static constexpr std::size_t kAuto = static_cast<std::size_t>(-1);

  ProductReplacement(const PermutationGroup& group, std::uint64_t seed,
                     std::size_t slots = 0, std::size_t burn_in = kAuto);

  const Permutation& next();

  std::size_t slot_count() const { return slots_.size(); }
  const std::vector<Permutation>& slots() const { return slots_; }
  const Permutation& accumulator() const { return accumulator_; }
  bool burn_in_done() const { return burn_in_done_; }

 private:
  void move();

  std::vector<Permutation> slots_;
  Permutation accumulator_;
  Permutation scratch_;
  Rng rng_;
  bool burn_in_done_ = false;
  bool trivial_ = true;
};

enum class SamplerMode { kExact, kProductReplacement };

// Draws group elements for orbit resampling. Exact mode draws uniformly from
// the enumerated group (shared, immutable); product replacement mode owns
// its own mutable state. Trivial groups never consume randomness.
class OrbitSampler {
 public:
  OrbitSampler(const PermutationGroup& group, SamplerMode mode,
               std::uint64_t seed = 0, std::size_t cap = kDefaultGroupCap);
  explicit OrbitSampler(std::shared_ptr<const std::vector<Permutation>> elements);

  // Same group and mode; product replacement state re-initialized from
  // `seed`, exact tables shared.
  OrbitSampler reseeded(std::uint64_t seed) const;

  SamplerMode mode() const { return mode_; }
  bool trivial() const { return trivial_; }
  std::size_t degree() const { return identity_.size(); }
  const std::shared_ptr<const std::vector<Permutation>>& elements() const {
    return elements_;
  }

  // Exact mode draws its index from `rng`; product replacement draws from its
  // own stream.
  const Permutation& draw(Rng& rng);

  // Replaces `state` by state^g for a freshly drawn g. `scratch` is reused.
  void resample(Config& state, Rng& rng, Config& scratch);

 private:
  SamplerMode mode_ = SamplerMode::kExact;
  bool trivial_ = true;
  Permutation identity_;
  PermutationGroup group_;
  std::shared_ptr<const std::vector<Permutation>> elements_;
  std::optional<ProductReplacement> replacement_;
};

// c^g for g drawn by `sampler`.
Config sample_orbit_uniform(OrbitSampler& sampler, const Config& c, Rng& rng);

// Generating set text: first line the point names, then one cycle-form
// permutation per line.
std::string write_generating_set(const PermutationGroup& group,
                                 const PointNames& names);
struct NamedGroup {
  PermutationGroup group;
  PointNames names;
};
NamedGroup read_generating_set(std::string_view text);

}  // namespace orbital
