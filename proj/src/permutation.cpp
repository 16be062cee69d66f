#include "orbital/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "orbital/error.hpp"

namespace orbital {

namespace {

bool is_separator(char ch) {
  return ch == ' ' || ch == '\t' || ch == ',' || ch == '\n' || ch == '\r';
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_separator(s[b])) ++b;
  while (e > b && is_separator(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Permutation::Permutation(std::vector<Point> mapping) : map_(std::move(mapping)) {
  std::vector<bool> seen(map_.size(), false);
  for (Point image : map_) {
    if (image >= map_.size() || seen[image]) {
      throw InvalidInput("mapping is not a bijection on {0.." +
                         std::to_string(map_.size()) + "-1}");
    }
    seen[image] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Point> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<Point>(i);
  return Permutation(std::move(m), Unchecked{});
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = static_cast<Point>(i);
  return Permutation(std::move(inv), Unchecked{});
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.mapping()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) {
    throw InvalidInput("cannot compose permutations of degree " +
                       std::to_string(p.size()) + " and " +
                       std::to_string(q.size()));
  }
  std::vector<Point> m(p.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = q.map_[p.map_[i]];
  return Permutation(std::move(m), Permutation::Unchecked{});
}

Point apply_point(const Permutation& p, Point x) {
  if (x >= p.size()) {
    throw InvalidInput("point " + std::to_string(x) + " outside domain of size " +
                       std::to_string(p.size()));
  }
  return p[x];
}

Config apply_config(const Permutation& p, const Config& c) {
  Config out;
  apply_config_into(p, c, out);
  return out;
}

void apply_config_into(const Permutation& p, const Config& c, Config& out) {
  if (c.size() != p.size()) {
    throw InvalidInput("configuration of length " + std::to_string(c.size()) +
                       " does not match permutation degree " +
                       std::to_string(p.size()));
  }
  out.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[p[static_cast<Point>(i)]] = c[i];
}

std::vector<std::vector<Point>> disjoint_cycles(const Permutation& p) {
  std::vector<std::vector<Point>> cycles;
  std::vector<bool> seen(p.size(), false);
  for (Point start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == start) continue;
    std::vector<Point> cycle;
    for (Point x = start; !seen[x]; x = p[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

std::size_t cycle_count(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::size_t count = 0;
  for (Point start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    ++count;
    for (Point x = start; !seen[x]; x = p[x]) seen[x] = true;
  }
  return count;
}

PointNames::PointNames(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const std::string& n = names_[i];
    if (n.empty() || std::any_of(n.begin(), n.end(), [](char ch) {
          return is_separator(ch) || ch == '(' || ch == ')';
        })) {
      throw InvalidInput("invalid point name '" + n + "'");
    }
    if (!index_.emplace(n, static_cast<Point>(i)).second) {
      throw InvalidInput("duplicate point name '" + n + "'");
    }
  }
}

PointNames PointNames::numeric(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
  return PointNames(std::move(names));
}

Point PointNames::index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw InvalidInput("unknown point '" + std::string(name) + "'");
  return it->second;
}

bool PointNames::contains(std::string_view name) const {
  return index_.count(std::string(name)) > 0;
}

Permutation parse_cycles(std::string_view text, const PointNames& names) {
  const std::size_t n = names.size();
  Permutation result = Permutation::identity(n);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && is_separator(text[pos])) ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') {
      throw InvalidInput("expected '(' in cycle text: " + std::string(text));
    }
    const std::size_t close = text.find(')', pos);
    if (close == std::string_view::npos) {
      throw InvalidInput("unterminated cycle in: " + std::string(text));
    }
    const std::string_view body = text.substr(pos + 1, close - pos - 1);
    if (body.find('(') != std::string_view::npos) {
      throw InvalidInput("nested '(' in cycle text: " + std::string(text));
    }
    std::vector<Point> cycle;
    std::vector<bool> in_cycle(n, false);
    std::size_t i = 0;
    while (i < body.size()) {
      while (i < body.size() && is_separator(body[i])) ++i;
      std::size_t j = i;
      while (j < body.size() && !is_separator(body[j])) ++j;
      if (j > i) {
        const Point x = names.index(body.substr(i, j - i));
        if (in_cycle[x]) {
          throw InvalidInput("point '" + names.name(x) +
                             "' repeated within a cycle: " + std::string(text));
        }
        in_cycle[x] = true;
        cycle.push_back(x);
      }
      i = j;
    }
    if (cycle.size() >= 2) {
      std::vector<Point> m(n);
      for (Point x = 0; x < n; ++x) m[x] = x;
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        m[cycle[k]] = cycle[(k + 1) % cycle.size()];
      }
      result = compose(result, Permutation(std::move(m)));
    }
    pos = close + 1;
    skip_space();
  }
  return result;
}

Permutation parse_cycles(std::string_view text, std::size_t n) {
  return parse_cycles(text, PointNames::numeric(n));
}

std::string format_cycles(const Permutation& p, const PointNames& names) {
  if (names.size() != p.size()) {
    throw InvalidInput("point names do not match permutation degree");
  }
  const auto cycles = disjoint_cycles(p);
  if (cycles.empty()) return "()";
  std::string out;
  for (const auto& cycle : cycles) {
    out += '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k) out += ' ';
      out += names.name(cycle[k]);
    }
    out += ')';
  }
  return out;
}

std::string format_cycles(const Permutation& p) {
  return format_cycles(p, PointNames::numeric(p.size()));
}

PermutationGroup::PermutationGroup(std::size_t degree,
                                   std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.size() != degree_) {
      throw InvalidInput("generator of degree " + std::to_string(g.size()) +
                         " in group of degree " + std::to_string(degree_));
    }
  }
}

bool PermutationGroup::is_trivial() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const Permutation& g) { return g.is_identity(); });
}

bool Orbit::contains(Point x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

bool ConfigOrbit::contains(const Config& c) const {
  return std::binary_search(elements.begin(), elements.end(), c);
}

Orbit orbit_of_point(const PermutationGroup& group, Point x) {
  if (x >= group.degree()) {
    throw InvalidInput("point " + std::to_string(x) + " outside domain of size " +
                       std::to_string(group.degree()));
  }
  std::vector<bool> seen(group.degree(), false);
  std::vector<Point> queue{x};
  seen[x] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : group.generators()) {
      const Point y = g[queue[head]];
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return Orbit{std::move(queue)};
}

std::vector<Orbit> orbit_partition(const PermutationGroup& group) {
  std::vector<Orbit> orbits;
  std::vector<bool> covered(group.degree(), false);
  for (Point x = 0; x < group.degree(); ++x) {
    if (covered[x]) continue;
    Orbit orbit = orbit_of_point(group, x);
    for (Point y : orbit.elements) covered[y] = true;
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<Orbit> orbit_partition(const PermutationGroup& group,
                                   std::span<const Point> domain) {
  std::vector<bool> in_domain(group.degree(), false);
  for (Point x : domain) {
    if (x >= group.degree()) throw InvalidInput("domain point out of range");
    in_domain[x] = true;
  }
  std::vector<Orbit> orbits;
  std::vector<bool> covered(group.degree(), false);
  for (Point x = 0; x < group.degree(); ++x) {
    if (!in_domain[x] || covered[x]) continue;
    Orbit orbit = orbit_of_point(group, x);
    for (Point y : orbit.elements) {
      if (!in_domain[y]) {
        throw InvalidInput("domain is not closed under the group action");
      }
      covered[y] = true;
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

ConfigOrbit orbit_of_config(const PermutationGroup& group, const Config& c,
                            std::size_t cap) {
  if (c.size() != group.degree()) {
    throw InvalidInput("configuration length does not match group degree");
  }
  std::unordered_set<Config, ConfigHash> seen{c};
  std::vector<Config> queue{c};
  Config image;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : group.generators()) {
      apply_config_into(g, queue[head], image);
      if (seen.insert(image).second) {
        if (seen.size() > cap) {
          throw GuardExceeded("orbit too large for exact enumeration (cap " +
                              std::to_string(cap) + ")");
        }
        queue.push_back(image);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return ConfigOrbit{std::move(queue)};
}

std::vector<Permutation> enumerate_group(const PermutationGroup& group,
                                         std::size_t cap) {
  if (cap < 1) throw InvalidInput("group enumeration cap must be at least 1");
  std::vector<Permutation> gens;
  for (const auto& g : group.generators()) {
    if (!g.is_identity()) gens.push_back(g);
  }
  std::vector<Permutation> elements{Permutation::identity(group.degree())};
  std::unordered_set<Permutation, PermutationHash> seen{elements.front()};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : gens) {
      Permutation h = compose(elements[head], g);
      if (seen.insert(h).second) {
        if (seen.size() > cap) {
          throw GuardExceeded("group has more than " + std::to_string(cap) +
                              " elements (enumeration cap)");
        }
        elements.push_back(std::move(h));
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

ConfigSpaceOrbits config_space_orbits(const PermutationGroup& group) {
  const std::size_t n = group.degree();
  if (n > 24) throw GuardExceeded("config space orbits need degree <= 24");
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<bool> seen(total, false);
  ConfigSpaceOrbits result;
  result.degree = n;

  // Generators acting on masks directly.
  std::vector<std::vector<Point>> maps;
  for (const auto& g : group.generators()) {
    maps.emplace_back(g.mapping().begin(), g.mapping().end());
  }
  auto image = [&](const std::vector<Point>& m, std::uint64_t mask) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) out |= std::uint64_t{1} << m[i];
    }
    return out;
  };

  std::vector<std::uint64_t> queue;
  for (std::uint64_t start = 0; start < total; ++start) {
    if (seen[start]) continue;
    queue.assign(1, start);
    seen[start] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& m : maps) {
        const std::uint64_t y = image(m, queue[head]);
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
      }
    }
    result.representatives.push_back(start);
    result.sizes.push_back(queue.size());
  }
  return result;
}

double burnside_orbit_count(std::span<const Permutation> elements) {
  if (elements.empty()) throw InvalidInput("Burnside count needs a nonempty group");
  long double total = 0;
  for (const auto& g : elements) total += std::ldexp(1.0L, static_cast<int>(cycle_count(g)));
  return static_cast<double>(total / static_cast<long double>(elements.size()));
}

ProductReplacement::ProductReplacement(const PermutationGroup& group,
                                       std::uint64_t seed, std::size_t slots,
                                       std::size_t burn_in)
    : accumulator_(Permutation::identity(group.degree())), rng_(make_rng(seed, 0x5052)) {
  std::vector<Permutation> gens;
  for (const auto& g : group.generators()) {
    if (!g.is_identity()) gens.push_back(g);
  }
  trivial_ = gens.empty();
  if (slots == 0) slots = std::max<std::size_t>(10, 2 * gens.size() + 1);
  if (slots < std::max<std::size_t>(2, gens.size())) {
    throw InvalidInput("product replacement needs at least max(2, |generators|) slots");
  }
  if (burn_in == kAuto) burn_in = 60 * slots;
  if (trivial_) {
    slots_.assign(slots, accumulator_);
    burn_in_done_ = true;
    return;
  }
  slots_.reserve(slots);
  for (std::size_t i = 0; i < slots; ++i) slots_.push_back(gens[i % gens.size()]);
  for (std::size_t i = 0; i < burn_in; ++i) move();
  burn_in_done_ = true;
}

void ProductReplacement::move() {
  const std::size_t s = slots_.size();
  const std::size_t i = uniform_index(rng_, s);
  std::size_t j = uniform_index(rng_, s - 1);
  if (j >= i) ++j;
  const bool invert = bernoulli(rng_, 0.5);
  slots_[i] = invert ? compose(slots_[i], slots_[j].inverse())
                     : compose(slots_[i], slots_[j]);
  const std::size_t k = uniform_index(rng_, s);
  accumulator_ = compose(accumulator_, slots_[k]);
}

const Permutation& ProductReplacement::next() {
  if (!trivial_) move();
  return accumulator_;
}

OrbitSampler::OrbitSampler(const PermutationGroup& group, SamplerMode mode,
                           std::uint64_t seed, std::size_t cap)
    : mode_(mode),
      trivial_(group.is_trivial()),
      identity_(Permutation::identity(group.degree())),
      group_(group) {
  if (mode_ == SamplerMode::kExact) {
    elements_ = std::make_shared<const std::vector<Permutation>>(
        enumerate_group(group, cap));
    trivial_ = elements_->size() == 1;
  } else {
    replacement_.emplace(group, seed);
  }
}

OrbitSampler::OrbitSampler(std::shared_ptr<const std::vector<Permutation>> elements)
    : mode_(SamplerMode::kExact), elements_(std::move(elements)) {
  if (!elements_ || elements_->empty()) {
    throw InvalidInput("exact orbit sampler needs a nonempty element list");
  }
  identity_ = Permutation::identity(elements_->front().size());
  trivial_ = elements_->size() == 1;
  group_ = PermutationGroup(identity_.size(), *elements_);
}

OrbitSampler OrbitSampler::reseeded(std::uint64_t seed) const {
  OrbitSampler copy = *this;
  if (mode_ == SamplerMode::kProductReplacement) copy.replacement_.emplace(group_, seed);
  return copy;
}

const Permutation& OrbitSampler::draw(Rng& rng) {
  if (trivial_) return identity_;
  if (mode_ == SamplerMode::kExact) return (*elements_)[uniform_index(rng, elements_->size())];
  return replacement_->next();
}

void OrbitSampler::resample(Config& state, Rng& rng, Config& scratch) {
  if (trivial_) return;
  apply_config_into(draw(rng), state, scratch);
  state.swap(scratch);
}

Config sample_orbit_uniform(OrbitSampler& sampler, const Config& c, Rng& rng) {
  if (c.size() != sampler.degree()) {
    throw InvalidInput("configuration length does not match group degree");
  }
  Config out = c, scratch;
  sampler.resample(out, rng, scratch);
  return out;
}

std::string write_generating_set(const PermutationGroup& group,
                                 const PointNames& names) {
  if (names.size() != group.degree()) {
    throw InvalidInput("point names do not match group degree");
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out << ' ';
    out << names.name(static_cast<Point>(i));
  }
  out << '\n';
  for (const auto& g : group.generators()) out << format_cycles(g, names) << '\n';
  return out.str();
}

NamedGroup read_generating_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_names = false;
  NamedGroup result;
  std::vector<Permutation> gens;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!have_names) {
      std::istringstream fields(t);
      std::vector<std::string> names;
      for (std::string name; fields >> name;) names.push_back(name);
      result.names = PointNames(std::move(names));
      have_names = true;
      continue;
    }
    gens.push_back(parse_cycles(t, result.names));
  }
  if (!have_names) throw InvalidInput("generating set file has no point-name line");
  result.group = PermutationGroup(result.names.size(), std::move(gens));
  return result;
}

}  // namespace orbital
