#pragma once

// Exact desk-scale analysis: enumerated state spaces, stationary
// distributions, transition matrices (base and orbit-averaged), total
// variation curves, mixing times, and the path-coupling simulator for the
// orbital insert/delete chain.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orbital/chains.hpp"
#include "orbital/clauses.hpp"
#include "orbital/graph.hpp"
#include "orbital/permutation.hpp"

namespace orbital {

inline constexpr std::size_t kMaxEnumerationPoints = 24;

// Ordered list of configurations with constant-time lookup.
class StateSpace {
 public:
  StateSpace() = default;
  explicit StateSpace(std::vector<Config> states);

  std::size_t size() const { return states_.size(); }
  std::size_t degree() const { return degree_; }
  const std::vector<Config>& states() const { return states_; }
  const Config& operator[](std::size_t i) const { return states_[i]; }
  std::optional<std::size_t> find(const Config& c) const;
  // Throws InvalidInput for a configuration outside the space.
  std::size_t index_of(const Config& c) const;

 private:
  std::vector<Config> states_;
  std::size_t degree_ = 0;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

struct ExactDistribution {
  StateSpace space;
  std::vector<double> probs;  // parallel to space
  double partition_value = 1.0;

  double prob(const Config& c) const;
};

struct TransitionMatrix {
  StateSpace space;
  std::vector<double> entries;  // row-major, size() x size()

  std::size_t size() const { return space.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries[i * size() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries[i * size() + j]; }
  std::span<const double> row(std::size_t i) const {
    return {entries.data() + i * size(), size()};
  }
};

// All independent sets, ordered by bitmask. Throws GuardExceeded for more
// than `max_vertices` vertices.
std::vector<Config> enumerate_independent_sets(const ColoredGraph& g,
                                               std::size_t max_vertices = kMaxEnumerationPoints);

ExactDistribution exact_pi_lambda(const ColoredGraph& g, double lambda);
// Assignments satisfying the HARD clauses (and the evidence), weighted by
// exp(sum of satisfied soft weights). Throws Infeasible if none exist.
ExactDistribution exact_pi_clauses(const WeightedClauseSet& s, const Evidence& e = {});

// P(x_i = 1) for every point i.
std::vector<double> marginals(const ExactDistribution& d);

// Base kernels integrate exactly over the step's random choices. Orbital
// kinds require `group` and average the base kernel over orbits of the
// target state.
TransitionMatrix transition_matrix(const IndependentSetModel& m, ChainKind kind,
                                   const PermutationGroup* group = nullptr,
                                   std::size_t orbit_cap = kDefaultOrbitCap);
TransitionMatrix transition_matrix(const ClauseModel& m, ChainKind kind,
                                   const PermutationGroup* group = nullptr,
                                   std::size_t orbit_cap = kDefaultOrbitCap);

// P(x, y) = (1/|y^G|) * sum over y' in y^G of base(x, y'), orbits by closure
// under the generators.
TransitionMatrix orbit_average(const TransitionMatrix& base, const PermutationGroup& group,
                               std::size_t orbit_cap = kDefaultOrbitCap);
// P(x, y) = (1/|G|) * sum over g in G of base(x, y^g), from explicit elements.
TransitionMatrix orbit_average_by_elements(const TransitionMatrix& base,
                                           std::span<const Permutation> elements);

struct BalanceReport {
  double max_violation = 0.0;
  bool pass = false;
};
BalanceReport check_detailed_balance(const TransitionMatrix& p, const ExactDistribution& pi,
                                     double tol);

// max_y |(pi P)(y) - pi(y)|.
double stationarity_residual(const TransitionMatrix& p, const ExactDistribution& pi);
// Left fixed point by power iteration from the uniform vector.
std::vector<double> stationary_distribution(const TransitionMatrix& p, double tol = 1e-15,
                                            std::size_t max_iterations = 1'000'000);

bool has_positive_diagonal(const TransitionMatrix& p);
// Strong connectivity of the support graph.
bool is_irreducible(const TransitionMatrix& p);
// gcd of cycle lengths in the support graph; requires irreducibility.
std::size_t period(const TransitionMatrix& p);

// max over generators g and states x, y of |P(x, y) - P(x^g, y^g)|.
double symmetry_compatibility_residual(const TransitionMatrix& p, const PermutationGroup& group);
// max over generators g and states x of |pi(x) - pi(x^g)|.
double orbit_constancy_residual(const ExactDistribution& pi, const PermutationGroup& group);

// Half the L1 distance. States missing from one side count as probability 0.
double tv_distance(const ExactDistribution& p, const ExactDistribution& q);
double tv_distance(std::span<const double> p, std::span<const double> q);

struct TVSeries {
  ChainKind kind = ChainKind::kInsertDelete;
  std::uint64_t seed = 0;
  // (accumulated sample count, d_tv of the empirical distribution)
  std::vector<std::pair<std::size_t, double>> points;
};

// Streaming empirical distribution over the states of `exact`.
class EmpiricalTV {
 public:
  explicit EmpiricalTV(const ExactDistribution& exact);
  // Throws InvalidInput for a state outside the exact support.
  void add(const Config& c);
  std::size_t samples() const { return total_; }
  double distance() const;
  ExactDistribution distribution() const;

 private:
  const ExactDistribution* exact_;
  std::vector<std::uint64_t> counts_;
  std::size_t total_ = 0;
};

// Empirical distribution of the first k recorded states for each checkpoint
// k (the initial state counts as a sample; recording must not be thinned).
TVSeries tv_curve(const ChainTrace& trace, const ExactDistribution& exact,
                  std::span<const std::size_t> checkpoints);
// Trapezoidal area under the curve divided by the covered sample range.
double normalized_tv_area(const TVSeries& series);
// CSV rows "samples,d_tv,chain_kind,seed"; header written when requested.
void write_tv_csv(const TVSeries& series, std::ostream& out, bool header);

// Runs a chain of options.steps steps without storing the trace and records
// d_tv after every `checkpoint_every` samples and after the last one. The
// initial state is sample 1.
TVSeries run_tv_curve(const IndependentSetModel& m, ChainKind kind, const RunOptions& options,
                      const OrbitSampler* sampler, const ExactDistribution& exact,
                      std::size_t checkpoint_every);
TVSeries run_tv_curve(const ClauseModel& m, ChainKind kind, const RunOptions& options,
                      const OrbitSampler* sampler, const ExactDistribution& exact,
                      std::size_t checkpoint_every);

struct MixingReport {
  std::size_t tau = 0;
  // distances[t - 1] = max over x of d_tv(P^t(x, .), pi) for t = 1..computed.
  std::vector<double> distances;
  bool monotone_after_crossing = true;
};

// Smallest t with max_x d_tv(P^t(x, .), pi) <= epsilon. Powers are built by
// successive multiplication with row renormalization until `horizon` or
// until the distance drops below 1e-14. Throws InvalidInput if P is not
// irreducible and aperiodic, Error if the horizon passes without crossing.
MixingReport mixing_time(const TransitionMatrix& p, const ExactDistribution& pi,
                         double epsilon, std::size_t horizon = 10'000);

// Path-coupling cases for X = Y + {v}: (i) w = v, (ii) w in X, (iii) w
// insertable into both, (iv) w blocked only by v, (v) everything else.
enum class CouplingCase { kSameVertex = 0, kDeleteShared, kInsertFree, kBlockedByV, kBlockedBoth };
inline constexpr std::size_t kCouplingCases = 5;

struct CouplingOutcome {
  Config x;
  Config y;
  CouplingCase which = CouplingCase::kBlockedBoth;
};

// One coupled step of the orbital insert/delete chain from (X, Y) with
// X = Y + {v}. `elements` is the enumerated group. In case (iv), when some
// h in G maps X to Y + {w}, insertion makes both copies equal to
// (Y + {w})^g; otherwise the copies move to X^g and (Y + {w})^g. Draw order:
// w, then g, then the coin, then h.
CouplingOutcome coupling_step(const IndependentSetModel& m, std::span<const Permutation> elements,
                              const Config& x, const Config& y, Rng& rng);

// Fraction of triples (X, {v, w}) with {v, w} an edge, v, w outside X and
// X + {v}, X + {w} independent, for which the two sets lie in different
// orbits.
double exact_rho(const ColoredGraph& g, const PermutationGroup& group,
                 std::size_t group_cap = kDefaultGroupCap);

// Case-(iv) quantities of one pair: varrho = Pr[case iv over w] and rho =
// Pr[X not in (Y + {w})^G | case iv] (0 when case iv is impossible).
struct PairCouplingTerms {
  double varrho = 0.0;
  double rho = 0.0;
  double drift_bound = 0.0;  // -1/n + varrho (2 rho - 1) lambda / (1 + lambda)
};
PairCouplingTerms pair_coupling_terms(const IndependentSetModel& m,
                                      std::span<const Permutation> elements, const Config& x,
                                      const Config& y);

struct CouplingReport {
  std::size_t pairs_examined = 0;
  std::array<std::size_t, kCouplingCases> case_counts{};
  double rho = 0.0;            // case-(iv) conditional, pooled over sampled pairs
  double varrho = 0.0;         // mean over sampled pairs
  double expected_drift = 0.0; // measured mean of H(X', Y') - 1
  double drift_se = 0.0;       // standard error of the mean
  double bound = 0.0;          // mean exact per-pair bound
  double beta = 0.0;           // 1 + expected_drift
  std::size_t diameter = 0;    // n
  double alpha = 0.0;          // fraction of trials where the distance changed
};

// Runs `trials` coupled steps, each from a distance-1 pair drawn uniformly
// from all (X, v) with X independent and v in X.
CouplingReport coupling_drift(const IndependentSetModel& m, const PermutationGroup& group,
                              std::size_t trials, Rng& rng,
                              std::size_t group_cap = kDefaultGroupCap);
// CSV "case,count,rho,varrho,drift,bound".
void write_coupling_csv(const CouplingReport& report, std::ostream& out);

// Dense matrix dump: header of state bitstrings, one row per state.
void write_matrix_csv(const TransitionMatrix& p, std::ostream& out);
void write_distribution_csv(const ExactDistribution& d, std::ostream& out);

}  // namespace orbital
