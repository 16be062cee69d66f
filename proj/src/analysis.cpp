#include "orbital/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "orbital/error.hpp"

namespace orbital {

StateSpace::StateSpace(std::vector<Config> states) : states_(std::move(states)) {
  if (!states_.empty()) degree_ = states_.front().size();
  if (degree_ > 64) throw GuardExceeded("state spaces are limited to 64 points");
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].size() != degree_) throw InvalidInput("states of different lengths");
    if (!index_.emplace(to_mask(states_[i]), i).second) throw InvalidInput("duplicate state");
  }
}

std::optional<std::size_t> StateSpace::find(const Config& c) const {
  if (c.size() != degree_) return std::nullopt;
  auto it = index_.find(to_mask(c));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t StateSpace::index_of(const Config& c) const {
  auto i = find(c);
  if (!i) throw InvalidInput("configuration " + to_bitstring(c) + " is not in the state space");
  return *i;
}

double ExactDistribution::prob(const Config& c) const {
  auto i = space.find(c);
  return i ? probs[*i] : 0.0;
}

namespace {

void check_enumeration_guard(std::size_t n, std::size_t max_points) {
  if (n > max_points) {
    throw GuardExceeded("exact enumeration limited to " + std::to_string(max_points) +
                        " points, model has " + std::to_string(n));
  }
}

std::uint64_t apply_mask(std::span<const Point> m, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if ((mask >> i) & 1u) out |= std::uint64_t{1} << m[i];
  }
  return out;
}

ExactDistribution normalize(std::vector<Config> states, const std::vector<double>& log_weights) {
  if (states.empty()) throw Infeasible("distribution has empty support");
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> probs(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = std::exp(log_weights[i] - top);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  ExactDistribution d;
  d.space = StateSpace(std::move(states));
  d.probs = std::move(probs);
  d.partition_value = total * std::exp(top);
  return d;
}

}  // namespace

std::vector<Config> enumerate_independent_sets(const ColoredGraph& g, std::size_t max_vertices) {
  const std::size_t n = g.size();
  check_enumeration_guard(n, max_vertices);
  std::vector<std::uint64_t> neighbor_mask(n, 0);
  for (auto [u, v] : g.edges()) {
    neighbor_mask[u] |= std::uint64_t{1} << v;
    neighbor_mask[v] |= std::uint64_t{1} << u;
  }
  std::vector<std::uint64_t> sets;
  // Depth-first over vertices in index order yields every independent set
  // once; sorting afterwards fixes the order by mask.
  auto extend = [&](auto&& self, std::size_t v, std::uint64_t set, std::uint64_t blocked) -> void {
    if (v == n) {
      sets.push_back(set);
      return;
    }
    self(self, v + 1, set, blocked);
    if (!((blocked >> v) & 1u)) {
      self(self, v + 1, set | (std::uint64_t{1} << v), blocked | neighbor_mask[v]);
    }
  };
  extend(extend, 0, 0, 0);
  std::sort(sets.begin(), sets.end());
  std::vector<Config> out;
  out.reserve(sets.size());
  for (auto s : sets) out.push_back(from_mask(s, n));
  return out;
}

ExactDistribution exact_pi_lambda(const ColoredGraph& g, double lambda) {
  if (!(lambda > 0.0)) throw InvalidInput("lambda must be positive");
  auto states = enumerate_independent_sets(g);
  std::vector<double> logw(states.size());
  const double ll = std::log(lambda);
  for (std::size_t i = 0; i < states.size(); ++i) logw[i] = ll * static_cast<double>(count_ones(states[i]));
  return normalize(std::move(states), logw);
}

ExactDistribution exact_pi_clauses(const WeightedClauseSet& s, const Evidence& e) {
  const std::size_t n = s.variable_count();
  check_enumeration_guard(n, kMaxEnumerationPoints);
  std::vector<Config> states;
  std::vector<double> logw;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Config c = from_mask(mask, n);
    if (!e.consistent_with(c)) continue;
    auto lp = s.log_potential(c);
    if (!lp) continue;
    states.push_back(std::move(c));
    logw.push_back(*lp);
  }
  if (states.empty()) throw Infeasible("no assignment satisfies the HARD clauses and evidence");
  return normalize(std::move(states), logw);
}

std::vector<double> marginals(const ExactDistribution& d) {
  std::vector<double> m(d.space.degree(), 0.0);
  for (std::size_t i = 0; i < d.space.size(); ++i) {
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (d.space[i][v]) m[v] += d.probs[i];
    }
  }
  return m;
}

namespace {

TransitionMatrix zero_matrix(StateSpace space) {
  TransitionMatrix p;
  const std::size_t m = space.size();
  p.space = std::move(space);
  p.entries.assign(m * m, 0.0);
  return p;
}

TransitionMatrix base_insert_delete(const IndependentSetModel& m) {
  TransitionMatrix p = zero_matrix(StateSpace(enumerate_independent_sets(m.graph())));
  const double n = static_cast<double>(m.vertex_count());
  const double lambda = m.lambda();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Config& x = p.space[i];
    for (Point v = 0; v < m.vertex_count(); ++v) {
      Config y = x;
      if (x[v]) {
        y[v] = 0;
        p(i, p.space.index_of(y)) += 1.0 / (n * (1.0 + lambda));
        p(i, i) += lambda / (n * (1.0 + lambda));
      } else if (m.can_insert(x, v)) {
        y[v] = 1;
        p(i, p.space.index_of(y)) += lambda / (n * (1.0 + lambda));
        p(i, i) += 1.0 / (n * (1.0 + lambda));
      } else {
        p(i, i) += 1.0 / n;
      }
    }
  }
  return p;
}

TransitionMatrix base_gibbs(const ClauseModel& m) {
  const std::size_t n = m.variable_count();
  check_enumeration_guard(n, kMaxEnumerationPoints);
  std::vector<Config> states;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Config c = from_mask(mask, n);
    if (m.clauses().satisfies_hard(c)) states.push_back(std::move(c));
  }
  TransitionMatrix p = zero_matrix(StateSpace(std::move(states)));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Config& x = p.space[i];
    for (Point v = 0; v < n; ++v) {
      const double p1 = m.conditional_one(x, v);
      Config y = x;
      y[v] = 0;
      if (p1 < 1.0) p(i, p.space.index_of(y)) += (1.0 - p1) / static_cast<double>(n);
      y[v] = 1;
      if (p1 > 0.0) p(i, p.space.index_of(y)) += p1 / static_cast<double>(n);
    }
  }
  return p;
}

TransitionMatrix finish(TransitionMatrix base, ChainKind kind, const PermutationGroup* group,
                        std::size_t orbit_cap) {
  if (!is_orbital(kind)) return base;
  if (!group) throw InvalidInput("orbital transition matrix needs a group");
  return orbit_average(base, *group, orbit_cap);
}

}  // namespace

TransitionMatrix transition_matrix(const IndependentSetModel& m, ChainKind kind,
                                   const PermutationGroup* group, std::size_t orbit_cap) {
  if (is_gibbs(kind)) throw InvalidInput("Gibbs kernels need a clause model");
  return finish(base_insert_delete(m), kind, group, orbit_cap);
}

TransitionMatrix transition_matrix(const ClauseModel& m, ChainKind kind,
                                   const PermutationGroup* group, std::size_t orbit_cap) {
  if (!is_gibbs(kind)) throw InvalidInput("insert/delete kernels need an independent-set model");
  return finish(base_gibbs(m), kind, group, orbit_cap);
}

TransitionMatrix orbit_average(const TransitionMatrix& base, const PermutationGroup& group,
                               std::size_t orbit_cap) {
  if (group.degree() != base.space.degree()) throw InvalidInput("group degree differs from state length");
  const std::size_t m = base.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> orbit_id(m, kUnset);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t i = 0; i < m; ++i) {
    if (orbit_id[i] != kUnset) continue;
    const ConfigOrbit orbit = orbit_of_config(group, base.space[i], orbit_cap);
    std::vector<std::size_t> members;
    for (const Config& c : orbit.elements) {
      auto j = base.space.find(c);
      if (!j) throw InvalidInput("state space is not closed under the group action");
      orbit_id[*j] = orbits.size();
      members.push_back(*j);
    }
    orbits.push_back(std::move(members));
  }
  TransitionMatrix p = zero_matrix(base.space);
  std::vector<double> mass(orbits.size());
  for (std::size_t i = 0; i < m; ++i) {
    std::fill(mass.begin(), mass.end(), 0.0);
    for (std::size_t j = 0; j < m; ++j) mass[orbit_id[j]] += base(i, j);
    for (std::size_t j = 0; j < m; ++j) {
      p(i, j) = mass[orbit_id[j]] / static_cast<double>(orbits[orbit_id[j]].size());
    }
  }
  return p;
}

TransitionMatrix orbit_average_by_elements(const TransitionMatrix& base,
                                           std::span<const Permutation> elements) {
  if (elements.empty()) throw InvalidInput("need at least one group element");
  const std::size_t m = base.size();
  // image[g][j] = index of state_j^g.
  std::vector<std::vector<std::size_t>> image(elements.size(), std::vector<std::size_t>(m));
  for (std::size_t g = 0; g < elements.size(); ++g) {
    for (std::size_t j = 0; j < m; ++j) {
      auto k = base.space.find(apply_config(elements[g], base.space[j]));
      if (!k) throw InvalidInput("state space is not closed under the group action");
      image[g][j] = *k;
    }
  }
  TransitionMatrix p = zero_matrix(base.space);
  const double scale = 1.0 / static_cast<double>(elements.size());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t g = 0; g < elements.size(); ++g) s += base(i, image[g][j]);
      p(i, j) = s * scale;
    }
  }
  return p;
}

BalanceReport check_detailed_balance(const TransitionMatrix& p, const ExactDistribution& pi,
                                     double tol) {
  if (p.size() != pi.space.size()) throw InvalidInput("matrix and distribution sizes differ");
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = pi.prob(p.space[i]);
  BalanceReport r;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      r.max_violation = std::max(r.max_violation, std::abs(w[i] * p(i, j) - w[j] * p(j, i)));
    }
  }
  r.pass = r.max_violation <= tol;
  return r;
}

double stationarity_residual(const TransitionMatrix& p, const ExactDistribution& pi) {
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = pi.prob(p.space[i]);
  double worst = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += w[i] * p(i, j);
    worst = std::max(worst, std::abs(s - w[j]));
  }
  return worst;
}

std::vector<double> stationary_distribution(const TransitionMatrix& p, double tol,
                                            std::size_t max_iterations) {
  const std::size_t m = p.size();
  std::vector<double> v(m, 1.0 / static_cast<double>(m)), next(m);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (v[i] == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) next[j] += v[i] * p(i, j);
    }
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      next[j] /= total;
      change = std::max(change, std::abs(next[j] - v[j]));
    }
    v.swap(next);
    if (change <= tol) break;
  }
  return v;
}

bool has_positive_diagonal(const TransitionMatrix& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p(i, i) > 0.0)) return false;
  }
  return true;
}

namespace {

std::vector<std::size_t> bfs_levels(const TransitionMatrix& p, bool transpose) {
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(p.size(), kUnseen);
  if (p.size() == 0) return level;
  std::vector<std::size_t> queue{0};
  level[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t i = queue[head];
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double w = transpose ? p(j, i) : p(i, j);
      if (w > 0.0 && level[j] == kUnseen) {
        level[j] = level[i] + 1;
        queue.push_back(j);
      }
    }
  }
  return level;
}

}  // namespace

bool is_irreducible(const TransitionMatrix& p) {
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  for (bool transpose : {false, true}) {
    const auto level = bfs_levels(p, transpose);
    if (std::find(level.begin(), level.end(), kUnseen) != level.end()) return false;
  }
  return true;
}

std::size_t period(const TransitionMatrix& p) {
  if (!is_irreducible(p)) throw InvalidInput("period is defined here only for irreducible chains");
  const auto level = bfs_levels(p, false);
  std::size_t d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p(i, j) > 0.0) {
        const auto diff = static_cast<long long>(level[i]) + 1 - static_cast<long long>(level[j]);
        d = std::gcd(d, static_cast<std::size_t>(std::llabs(diff)));
      }
    }
  }
  return d;
}

double symmetry_compatibility_residual(const TransitionMatrix& p, const PermutationGroup& group) {
  double worst = 0.0;
  for (const auto& g : group.generators()) {
    std::vector<std::size_t> image(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      auto k = p.space.find(apply_config(g, p.space[i]));
      if (!k) throw InvalidInput("state space is not closed under the group action");
      image[i] = *k;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < p.size(); ++j) {
        worst = std::max(worst, std::abs(p(i, j) - p(image[i], image[j])));
      }
    }
  }
  return worst;
}

double orbit_constancy_residual(const ExactDistribution& pi, const PermutationGroup& group) {
  double worst = 0.0;
  for (const auto& g : group.generators()) {
    for (std::size_t i = 0; i < pi.space.size(); ++i) {
      worst = std::max(worst, std::abs(pi.probs[i] - pi.prob(apply_config(g, pi.space[i]))));
    }
  }
  return worst;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw InvalidInput("distributions of different sizes");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double tv_distance(const ExactDistribution& p, const ExactDistribution& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.space.size(); ++i) s += std::abs(p.probs[i] - q.prob(p.space[i]));
  for (std::size_t j = 0; j < q.space.size(); ++j) {
    if (!p.space.find(q.space[j])) s += q.probs[j];
  }
  return 0.5 * s;
}

EmpiricalTV::EmpiricalTV(const ExactDistribution& exact)
    : exact_(&exact), counts_(exact.space.size(), 0) {}

void EmpiricalTV::add(const Config& c) {
  ++counts_[exact_->space.index_of(c)];
  ++total_;
}

double EmpiricalTV::distance() const {
  if (total_ == 0) throw InvalidInput("no samples accumulated");
  double s = 0.0;
  const double inv = 1.0 / static_cast<double>(total_);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    s += std::abs(static_cast<double>(counts_[i]) * inv - exact_->probs[i]);
  }
  return 0.5 * s;
}

ExactDistribution EmpiricalTV::distribution() const {
  ExactDistribution d;
  d.space = exact_->space;
  d.probs.resize(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    d.probs[i] = total_ ? static_cast<double>(counts_[i]) / static_cast<double>(total_) : 0.0;
  }
  d.partition_value = static_cast<double>(total_);
  return d;
}

TVSeries tv_curve(const ChainTrace& trace, const ExactDistribution& exact,
                  std::span<const std::size_t> checkpoints) {
  if (trace.record_every != 1) throw InvalidInput("TV curves need an unthinned trace");
  TVSeries series;
  series.kind = trace.kind;
  series.seed = trace.seed;
  EmpiricalTV acc(exact);
  std::vector<std::size_t> sorted(checkpoints.begin(), checkpoints.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t next = 0;
  for (std::size_t k : sorted) {
    if (k == 0 || k > trace.states.size()) {
      throw InvalidInput("checkpoint " + std::to_string(k) + " outside 1.." +
                         std::to_string(trace.states.size()));
    }
    while (next < k) acc.add(trace.states[next++]);
    series.points.emplace_back(k, acc.distance());
  }
  return series;
}

double normalized_tv_area(const TVSeries& series) {
  const auto& pts = series.points;
  if (pts.empty()) throw InvalidInput("empty TV series");
  if (pts.size() == 1) return pts.front().second;
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += 0.5 * (pts[i].second + pts[i - 1].second) *
            static_cast<double>(pts[i].first - pts[i - 1].first);
  }
  return area / static_cast<double>(pts.back().first - pts.front().first);
}

void write_tv_csv(const TVSeries& series, std::ostream& out, bool header) {
  if (header) out << "samples,d_tv,chain_kind,seed\n";
  for (auto [k, d] : series.points) {
    out << k << ',' << d << ',' << chain_kind_name(series.kind) << ',' << series.seed << '\n';
  }
}

namespace {

template <class Model>
TVSeries streamed_tv(const Model& m, ChainKind kind, const RunOptions& options,
                     const OrbitSampler* sampler, const ExactDistribution& exact,
                     std::size_t checkpoint_every) {
  if (checkpoint_every == 0) throw InvalidInput("checkpoint interval must be positive");
  TVSeries series;
  series.kind = kind;
  series.seed = options.seed;
  EmpiricalTV acc(exact);
  RunOptions opts = options;
  opts.record_every = 1;
  visit_chain(m, kind, opts, sampler, [&](std::size_t t, const Config& x) {
    acc.add(x);
    if (acc.samples() % checkpoint_every == 0 || t == opts.steps) {
      series.points.emplace_back(acc.samples(), acc.distance());
    }
  });
  return series;
}

}  // namespace

TVSeries run_tv_curve(const IndependentSetModel& m, ChainKind kind, const RunOptions& options,
                      const OrbitSampler* sampler, const ExactDistribution& exact,
                      std::size_t checkpoint_every) {
  return streamed_tv(m, kind, options, sampler, exact, checkpoint_every);
}

TVSeries run_tv_curve(const ClauseModel& m, ChainKind kind, const RunOptions& options,
                      const OrbitSampler* sampler, const ExactDistribution& exact,
                      std::size_t checkpoint_every) {
  return streamed_tv(m, kind, options, sampler, exact, checkpoint_every);
}

MixingReport mixing_time(const TransitionMatrix& p, const ExactDistribution& pi, double epsilon,
                         std::size_t horizon) {
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  if (!is_irreducible(p)) throw InvalidInput("mixing time needs an irreducible chain");
  if (period(p) != 1) throw InvalidInput("mixing time needs an aperiodic chain");
  const std::size_t m = p.size();
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) w[i] = pi.prob(p.space[i]);

  std::vector<double> power = p.entries, next(m * m);
  MixingReport report;
  for (std::size_t t = 1; t <= horizon; ++t) {
    if (t > 1) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        double* out = next.data() + i * m;
        for (std::size_t k = 0; k < m; ++k) {
          const double a = power[i * m + k];
          if (a == 0.0) continue;
          const double* row = p.entries.data() + k * m;
          for (std::size_t j = 0; j < m; ++j) out[j] += a * row[j];
        }
        const double total = std::accumulate(out, out + m, 0.0);
        for (std::size_t j = 0; j < m; ++j) out[j] /= total;
      }
      power.swap(next);
    }
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += std::abs(power[i * m + j] - w[j]);
      d = std::max(d, 0.5 * s);
    }
    if (report.tau && d > report.distances.back() + 1e-12) report.monotone_after_crossing = false;
    report.distances.push_back(d);
    if (!report.tau && d <= epsilon) report.tau = t;
    if (report.tau && d < 1e-14) break;
  }
  if (!report.tau) {
    throw Error("mixing horizon " + std::to_string(horizon) +
                " reached before crossing epsilon; last distance " +
                std::to_string(report.distances.back()));
  }
  return report;
}

namespace {

struct DistanceOnePair {
  Point v;
};

Point differing_vertex(const IndependentSetModel& m, const Config& x, const Config& y) {
  if (x.size() != m.vertex_count() || y.size() != m.vertex_count()) {
    throw InvalidInput("pair states have wrong length");
  }
  if (!m.is_independent(x) || !m.is_independent(y)) throw InvalidInput("pair states must be independent sets");
  if (hamming_distance(x, y) != 1) throw InvalidInput("pair must differ in exactly one vertex");
  for (Point v = 0; v < x.size(); ++v) {
    if (x[v] != y[v]) {
      if (!x[v]) throw InvalidInput("differing vertex must belong to X, not Y");
      return v;
    }
  }
  throw InternalError("unreachable");
}

bool case_iv(const IndependentSetModel& m, const Config& x, const Config& y, Point v, Point w) {
  return w != v && !x[w] && !m.can_insert(x, w) && m.can_insert(y, w);
}

}  // namespace

CouplingOutcome coupling_step(const IndependentSetModel& m, std::span<const Permutation> elements,
                              const Config& x, const Config& y, Rng& rng) {
  if (elements.empty()) throw InvalidInput("coupling needs the enumerated group");
  const Point v = differing_vertex(m, x, y);
  const Point w = static_cast<Point>(uniform_index(rng, m.vertex_count()));
  const Permutation& g = elements[uniform_index(rng, elements.size())];
  const bool coin = bernoulli(rng, m.lambda() / (1.0 + m.lambda()));

  CouplingOutcome out;
  auto moved = [&](const Config& a, const Config& b) {
    out.x = apply_config(g, a);
    out.y = apply_config(g, b);
  };
  if (w == v) {
    out.which = CouplingCase::kSameVertex;
    coin ? moved(x, x) : moved(y, y);
  } else if (x[w]) {
    out.which = CouplingCase::kDeleteShared;
    if (!coin) {
      Config xd = x, yd = y;
      xd[w] = 0;
      yd[w] = 0;
      moved(xd, yd);
    } else {
      moved(x, y);
    }
  } else if (m.can_insert(x, w)) {
    out.which = CouplingCase::kInsertFree;
    if (coin) {
      Config xi = x, yi = y;
      xi[w] = 1;
      yi[w] = 1;
      moved(xi, yi);
    } else {
      moved(x, y);
    }
  } else if (case_iv(m, x, y, v, w)) {
    out.which = CouplingCase::kBlockedByV;
    Config yw = y;
    yw[w] = 1;
    if (coin) {
      std::vector<std::size_t> mapping;  // h with X^h = Y + {w}
      for (std::size_t k = 0; k < elements.size(); ++k) {
        if (apply_config(elements[k], x) == yw) mapping.push_back(k);
      }
      if (!mapping.empty()) {
        const Permutation& h = elements[mapping[uniform_index(rng, mapping.size())]];
        out.x = apply_config(compose(h, g), x);
        out.y = apply_config(g, yw);
      } else {
        moved(x, yw);
      }
    } else {
      moved(x, y);
    }
  } else {
    out.which = CouplingCase::kBlockedBoth;
    moved(x, y);
  }
  return out;
}

double exact_rho(const ColoredGraph& g, const PermutationGroup& group, std::size_t group_cap) {
  if (group.degree() != g.size()) throw InvalidInput("group degree differs from graph size");
  const auto elements = enumerate_group(group, group_cap);
  const auto sets = enumerate_independent_sets(g);
  const IndependentSetModel m(g, 1.0);
  std::size_t total = 0, different = 0;
  for (const Config& x : sets) {
    const std::uint64_t xm = to_mask(x);
    for (auto [v, w] : g.edges()) {
      if (!m.can_insert(x, v) || !m.can_insert(x, w)) continue;
      const std::uint64_t a = xm | (std::uint64_t{1} << v);
      const std::uint64_t b = xm | (std::uint64_t{1} << w);
      bool same = false;
      for (const auto& e : elements) {
        if (apply_mask(e.mapping(), a) == b) {
          same = true;
          break;
        }
      }
      ++total;
      different += !same;
    }
  }
  if (total == 0) throw InvalidInput("graph has no edge-extension triples");
  return static_cast<double>(different) / static_cast<double>(total);
}

PairCouplingTerms pair_coupling_terms(const IndependentSetModel& m,
                                      std::span<const Permutation> elements, const Config& x,
                                      const Config& y) {
  const Point v = differing_vertex(m, x, y);
  const std::size_t n = m.vertex_count();
  std::size_t iv = 0, different = 0;
  const std::uint64_t xm = to_mask(x);
  for (Point w = 0; w < n; ++w) {
    if (!case_iv(m, x, y, v, w)) continue;
    ++iv;
    const std::uint64_t target = to_mask(y) | (std::uint64_t{1} << w);
    bool same = false;
    for (const auto& e : elements) {
      if (apply_mask(e.mapping(), xm) == target) {
        same = true;
        break;
      }
    }
    different += !same;
  }
  PairCouplingTerms t;
  t.varrho = static_cast<double>(iv) / static_cast<double>(n);
  t.rho = iv ? static_cast<double>(different) / static_cast<double>(iv) : 0.0;
  const double lam = m.lambda();
  t.drift_bound = -1.0 / static_cast<double>(n) + t.varrho * (2.0 * t.rho - 1.0) * lam / (1.0 + lam);
  return t;
}

CouplingReport coupling_drift(const IndependentSetModel& m, const PermutationGroup& group,
                              std::size_t trials, Rng& rng, std::size_t group_cap) {
  if (trials == 0) throw InvalidInput("coupling_drift needs at least one trial");
  const auto elements = enumerate_group(group, group_cap);
  const std::size_t n = m.vertex_count();
  std::vector<std::pair<std::uint64_t, Point>> pairs;
  for (const Config& x : enumerate_independent_sets(m.graph())) {
    for (Point v = 0; v < n; ++v) {
      if (x[v]) pairs.emplace_back(to_mask(x), v);
    }
  }
  if (pairs.empty()) throw InvalidInput("graph has no nonempty independent set");

  std::unordered_map<std::size_t, PairCouplingTerms> terms;
  CouplingReport r;
  r.pairs_examined = trials;
  r.diameter = n;
  double sum = 0.0, sum_sq = 0.0, bound_sum = 0.0, varrho_sum = 0.0;
  double iv_weight = 0.0, different_weight = 0.0;
  std::size_t changed = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t k = uniform_index(rng, pairs.size());
    const Config x = from_mask(pairs[k].first, n);
    Config y = x;
    y[pairs[k].second] = 0;
    auto it = terms.find(k);
    if (it == terms.end()) it = terms.emplace(k, pair_coupling_terms(m, elements, x, y)).first;
    const PairCouplingTerms& pt = it->second;

    const CouplingOutcome out = coupling_step(m, elements, x, y, rng);
    ++r.case_counts[static_cast<std::size_t>(out.which)];
    const double delta = static_cast<double>(hamming_distance(out.x, out.y)) - 1.0;
    sum += delta;
    sum_sq += delta * delta;
    changed += delta != 0.0;
    bound_sum += pt.drift_bound;
    varrho_sum += pt.varrho;
    iv_weight += pt.varrho;
    different_weight += pt.varrho * pt.rho;
  }
  const double N = static_cast<double>(trials);
  r.expected_drift = sum / N;
  const double var = trials > 1 ? (sum_sq - N * r.expected_drift * r.expected_drift) / (N - 1.0) : 0.0;
  r.drift_se = std::sqrt(std::max(var, 0.0) / N);
  r.bound = bound_sum / N;
  r.varrho = varrho_sum / N;
  r.rho = iv_weight > 0.0 ? different_weight / iv_weight : 0.0;
  r.beta = 1.0 + r.expected_drift;
  r.alpha = static_cast<double>(changed) / N;
  return r;
}

void write_coupling_csv(const CouplingReport& report, std::ostream& out) {
  static constexpr const char* kNames[kCouplingCases] = {"i", "ii", "iii", "iv", "v"};
  out << "case,count,rho,varrho,drift,bound\n";
  for (std::size_t c = 0; c < kCouplingCases; ++c) {
    out << kNames[c] << ',' << report.case_counts[c] << ',' << report.rho << ','
        << report.varrho << ',' << report.expected_drift << ',' << report.bound << '\n';
  }
}

void write_matrix_csv(const TransitionMatrix& p, std::ostream& out) {
  out << "from";
  for (const auto& s : p.space.states()) out << ',' << to_bitstring(s);
  out << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << to_bitstring(p.space[i]);
    for (double v : p.row(i)) out << ',' << v;
    out << '\n';
  }
}

void write_distribution_csv(const ExactDistribution& d, std::ostream& out) {
  out << "state,prob\n";
  for (std::size_t i = 0; i < d.space.size(); ++i) {
    out << to_bitstring(d.space[i]) << ',' << d.probs[i] << '\n';
  }
}

}  // namespace orbital
