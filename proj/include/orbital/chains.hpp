#pragma once

// Base Markov chains and their orbital versions.
//
// An orbital step runs one step of the base chain and then replaces the state
// by state^g for a group element g drawn afresh from an OrbitSampler.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "orbital/clauses.hpp"
#include "orbital/graph.hpp"
#include "orbital/permutation.hpp"
#include "orbital/rng.hpp"

namespace orbital {

enum class ChainKind { kGibbs, kOrbitalGibbs, kInsertDelete, kOrbitalInsertDelete };

// "gibbs", "orbital-gibbs", "id", "orbital-id".
std::string_view chain_kind_name(ChainKind kind);
ChainKind parse_chain_kind(std::string_view name);
inline bool is_orbital(ChainKind kind) {
  return kind == ChainKind::kOrbitalGibbs || kind == ChainKind::kOrbitalInsertDelete;
}
inline bool is_gibbs(ChainKind kind) {
  return kind == ChainKind::kGibbs || kind == ChainKind::kOrbitalGibbs;
}

// Hardcore model pi(X) proportional to lambda^|X| over independent sets.
class IndependentSetModel {
 public:
  // Vertex colors are ignored. Throws InvalidInput unless lambda > 0.
  IndependentSetModel(ColoredGraph graph, double lambda);

  const ColoredGraph& graph() const { return graph_; }
  double lambda() const { return lambda_; }
  std::size_t vertex_count() const { return graph_.size(); }
  std::size_t max_degree() const { return graph_.max_degree(); }

  bool is_independent(const Config& x) const;
  // v not in X and no neighbour of v in X.
  bool can_insert(const Config& x, Point v) const;

 private:
  ColoredGraph graph_;
  double lambda_;
};

// Pr(x) proportional to exp(sum of satisfied soft weights) over assignments
// satisfying every HARD clause.
class ClauseModel {
 public:
  // Throws Infeasible if no assignment satisfies the HARD clauses.
  explicit ClauseModel(WeightedClauseSet clauses);

  const WeightedClauseSet& clauses() const { return clauses_; }
  std::size_t variable_count() const { return clauses_.variable_count(); }

  // Pr(x_v = 1 | all other variables as in x). Throws Infeasible when
  // neither value of v satisfies the HARD clauses.
  double conditional_one(const Config& x, Point v) const;

 private:
  WeightedClauseSet clauses_;
  std::vector<std::vector<std::size_t>> clauses_of_;  // clause indices per variable
};

// Checked single steps. Draw order: site, then the acceptance/value coin.
Config gibbs_step(const ClauseModel& m, const Config& x, Rng& rng);
Config insert_delete_step(const IndependentSetModel& m, const Config& x, Rng& rng);
// Base step followed by orbit resampling (group element drawn last).
Config orbital_step(const ClauseModel& m, OrbitSampler& sampler, const Config& x, Rng& rng);
Config orbital_step(const IndependentSetModel& m, OrbitSampler& sampler, const Config& x,
                    Rng& rng);

// Unchecked in-place variants used by the sampling loops.
void gibbs_update(const ClauseModel& m, Config& x, Rng& rng);
void insert_delete_update(const IndependentSetModel& m, Config& x, Rng& rng);

struct ChainTrace {
  ChainKind kind = ChainKind::kInsertDelete;
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  std::size_t steps = 0;
  std::size_t record_every = 1;
  // states[i] is the state after i * record_every steps; states[0] is the
  // initial state.
  std::vector<Config> states;
};

struct RunOptions {
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  std::size_t record_every = 1;
  std::optional<Config> initial;  // default: all zeros / empty set
};

// Called with (step, state) for the initial state and after every step.
using StateVisitor = std::function<void(std::size_t, const Config&)>;

// Orbital kinds need `sampler`; it is copied and reseeded from
// (seed, replica), so one prototype can serve many replicas. Gibbs kinds
// need a ClauseModel and insert/delete kinds an IndependentSetModel.
void visit_chain(const ClauseModel& m, ChainKind kind, const RunOptions& options,
                 const OrbitSampler* sampler, const StateVisitor& visit);
void visit_chain(const IndependentSetModel& m, ChainKind kind, const RunOptions& options,
                 const OrbitSampler* sampler, const StateVisitor& visit);

ChainTrace run_chain(const ClauseModel& m, ChainKind kind, const RunOptions& options,
                     const OrbitSampler* sampler = nullptr);
ChainTrace run_chain(const IndependentSetModel& m, ChainKind kind, const RunOptions& options,
                     const OrbitSampler* sampler = nullptr);

// CSV with header "step,state"; state is the bitstring in point order.
void write_trace_csv(const ChainTrace& trace, std::ostream& out);

}  // namespace orbital
