#include "orbital/chains.hpp"

#include <cmath>
#include <ostream>

#include "orbital/error.hpp"

namespace orbital {

std::string_view chain_kind_name(ChainKind kind) {
  switch (kind) {
    case ChainKind::kGibbs: return "gibbs";
    case ChainKind::kOrbitalGibbs: return "orbital-gibbs";
    case ChainKind::kInsertDelete: return "id";
    case ChainKind::kOrbitalInsertDelete: return "orbital-id";
  }
  return "unknown";
}

ChainKind parse_chain_kind(std::string_view name) {
  if (name == "gibbs") return ChainKind::kGibbs;
  if (name == "orbital-gibbs") return ChainKind::kOrbitalGibbs;
  if (name == "id" || name == "insert-delete") return ChainKind::kInsertDelete;
  if (name == "orbital-id" || name == "orbital-insert-delete") return ChainKind::kOrbitalInsertDelete;
  throw InvalidInput("unknown chain kind '" + std::string(name) + "'");
}

IndependentSetModel::IndependentSetModel(ColoredGraph graph, double lambda)
    : graph_(std::move(graph)), lambda_(lambda) {
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw InvalidInput("fugacity lambda must be a positive finite number");
  }
}

bool IndependentSetModel::is_independent(const Config& x) const {
  if (x.size() != graph_.size()) return false;
  for (auto [u, v] : graph_.edges()) {
    if (x[u] && x[v]) return false;
  }
  return true;
}

bool IndependentSetModel::can_insert(const Config& x, Point v) const {
  if (x[v]) return false;
  for (Point w : graph_.neighbors(v)) {
    if (x[w]) return false;
  }
  return true;
}

namespace {

// Unit propagation plus branching on HARD clauses only.
bool hard_satisfiable(const WeightedClauseSet& s) {
  std::vector<const Clause*> hard;
  for (const auto& cl : s.clauses()) {
    if (cl.weight.is_hard()) hard.push_back(&cl);
  }
  if (hard.empty()) return true;
  std::vector<int> value(s.variable_count(), -1);
  auto solve = [&](auto&& self) -> bool {
    const Clause* open = nullptr;
    for (const Clause* cl : hard) {
      bool sat = false;
      const Literal* free_lit = nullptr;
      int free_count = 0;
      for (const auto& lit : cl->literals) {
        const int v = value[lit.variable];
        if (v < 0) {
          free_lit = &lit;
          ++free_count;
        } else if ((v == 1) != lit.negated) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (free_count == 0) return false;
      if (!open || free_count == 1) open = cl;
      if (free_count == 1) {
        value[free_lit->variable] = free_lit->negated ? 0 : 1;
        const bool ok = self(self);
        value[free_lit->variable] = -1;
        return ok;
      }
    }
    if (!open) return true;
    for (const auto& lit : open->literals) {
      if (value[lit.variable] >= 0) continue;
      for (int b : {1, 0}) {
        value[lit.variable] = b;
        if (self(self)) {
          value[lit.variable] = -1;
          return true;
        }
      }
      value[lit.variable] = -1;
      return false;
    }
    return false;
  };
  return solve(solve);
}

}  // namespace

ClauseModel::ClauseModel(WeightedClauseSet clauses)
    : clauses_(std::move(clauses)), clauses_of_(clauses_.variable_count()) {
  if (!hard_satisfiable(clauses_)) {
    throw Infeasible("no assignment satisfies all HARD clauses");
  }
  for (std::size_t i = 0; i < clauses_.clauses().size(); ++i) {
    for (const auto& lit : clauses_.clauses()[i].literals) {
      auto& list = clauses_of_[lit.variable];
      if (list.empty() || list.back() != i) list.push_back(i);
    }
  }
}

double ClauseModel::conditional_one(const Config& x, Point v) const {
  double score[2] = {0.0, 0.0};
  bool feasible[2] = {true, true};
  Config y = x;
  for (int b = 0; b < 2; ++b) {
    y[v] = static_cast<std::uint8_t>(b);
    for (std::size_t i : clauses_of_[v]) {
      const Clause& cl = clauses_.clauses()[i];
      const bool sat = cl.satisfied_by(y);
      if (cl.weight.is_hard()) {
        if (!sat) feasible[b] = false;
      } else if (sat) {
        score[b] += cl.weight.value();
      }
    }
  }
  if (!feasible[0] && !feasible[1]) {
    throw Infeasible("variable '" + clauses_.variables().name(v) +
                     "' has no value consistent with the HARD clauses");
  }
  if (!feasible[0]) return 1.0;
  if (!feasible[1]) return 0.0;
  // Logistic of the score difference, stable for large magnitudes.
  const double d = score[1] - score[0];
  return d >= 0 ? 1.0 / (1.0 + std::exp(-d)) : std::exp(d) / (1.0 + std::exp(d));
}

void gibbs_update(const ClauseModel& m, Config& x, Rng& rng) {
  const Point v = static_cast<Point>(uniform_index(rng, m.variable_count()));
  const double p1 = m.conditional_one(x, v);
  x[v] = bernoulli(rng, p1) ? 1 : 0;
}

void insert_delete_update(const IndependentSetModel& m, Config& x, Rng& rng) {
  const Point v = static_cast<Point>(uniform_index(rng, m.vertex_count()));
  const double lambda = m.lambda();
  const bool coin_insert = bernoulli(rng, lambda / (1.0 + lambda));
  if (x[v]) {
    // Deletion with probability 1/(1+lambda) is the complement of the coin.
    if (!coin_insert) x[v] = 0;
  } else if (coin_insert && m.can_insert(x, v)) {
    x[v] = 1;
  }
}

Config gibbs_step(const ClauseModel& m, const Config& x, Rng& rng) {
  if (x.size() != m.variable_count()) throw InvalidInput("state length differs from variable count");
  if (!m.clauses().satisfies_hard(x)) throw InvalidInput("state violates a HARD clause");
  Config y = x;
  gibbs_update(m, y, rng);
  return y;
}

Config insert_delete_step(const IndependentSetModel& m, const Config& x, Rng& rng) {
  if (!m.is_independent(x)) throw InvalidInput("state is not an independent set");
  Config y = x;
  insert_delete_update(m, y, rng);
  return y;
}

Config orbital_step(const ClauseModel& m, OrbitSampler& sampler, const Config& x, Rng& rng) {
  if (sampler.degree() != m.variable_count()) throw InvalidInput("group degree differs from variable count");
  Config y = gibbs_step(m, x, rng), scratch;
  sampler.resample(y, rng, scratch);
  return y;
}

Config orbital_step(const IndependentSetModel& m, OrbitSampler& sampler, const Config& x,
                    Rng& rng) {
  if (sampler.degree() != m.vertex_count()) throw InvalidInput("group degree differs from vertex count");
  Config y = insert_delete_step(m, x, rng), scratch;
  sampler.resample(y, rng, scratch);
  return y;
}

namespace {

template <class Model, class Update>
void visit_impl(const Model& m, std::size_t n, ChainKind kind, const RunOptions& options,
                const OrbitSampler* prototype, const StateVisitor& visit, Update update) {
  std::optional<OrbitSampler> sampler;
  if (is_orbital(kind)) {
    if (!prototype) throw InvalidInput("orbital chain needs a group sampler");
    if (prototype->degree() != n) throw InvalidInput("group degree differs from model size");
    // Product replacement gets its own stream so that the chain's draws are
    // unaffected by the sampler mode.
    sampler.emplace(prototype->reseeded(options.seed * 0x9e3779b97f4a7c15ull + options.replica));
  }
  Rng rng = make_rng(options.seed, options.replica);
  Config x = options.initial.value_or(Config(n, 0));
  if (x.size() != n) throw InvalidInput("initial state has wrong length");
  Config scratch;
  visit(0, x);
  for (std::size_t t = 1; t <= options.steps; ++t) {
    update(m, x, rng);
    if (sampler) sampler->resample(x, rng, scratch);
    visit(t, x);
  }
}

ChainTrace collect(ChainKind kind, const RunOptions& options,
                   const std::function<void(const StateVisitor&)>& run) {
  if (options.record_every == 0) throw InvalidInput("record_every must be positive");
  ChainTrace trace;
  trace.kind = kind;
  trace.seed = options.seed;
  trace.replica = options.replica;
  trace.steps = options.steps;
  trace.record_every = options.record_every;
  trace.states.reserve(options.steps / options.record_every + 1);
  run([&](std::size_t t, const Config& x) {
    if (t % options.record_every == 0) trace.states.push_back(x);
  });
  return trace;
}

}  // namespace

void visit_chain(const ClauseModel& m, ChainKind kind, const RunOptions& options,
                 const OrbitSampler* sampler, const StateVisitor& visit) {
  if (!is_gibbs(kind)) throw InvalidInput("insert/delete chains need an independent-set model");
  const Config init = options.initial.value_or(Config(m.variable_count(), 0));
  if (init.size() != m.variable_count()) throw InvalidInput("initial state has wrong length");
  if (!m.clauses().satisfies_hard(init)) {
    throw Infeasible(options.initial ? "initial state violates a HARD clause"
                                     : "all-zeros state violates a HARD clause; "
                                       "supply an explicit initial state");
  }
  visit_impl(m, m.variable_count(), kind, options, sampler, visit, gibbs_update);
}

void visit_chain(const IndependentSetModel& m, ChainKind kind, const RunOptions& options,
                 const OrbitSampler* sampler, const StateVisitor& visit) {
  if (is_gibbs(kind)) throw InvalidInput("Gibbs chains need a clause model");
  if (options.initial && !m.is_independent(*options.initial)) {
    throw Infeasible("initial state is not an independent set");
  }
  visit_impl(m, m.vertex_count(), kind, options, sampler, visit, insert_delete_update);
}

ChainTrace run_chain(const ClauseModel& m, ChainKind kind, const RunOptions& options,
                     const OrbitSampler* sampler) {
  return collect(kind, options, [&](const StateVisitor& v) {
    visit_chain(m, kind, options, sampler, v);
  });
}

ChainTrace run_chain(const IndependentSetModel& m, ChainKind kind, const RunOptions& options,
                     const OrbitSampler* sampler) {
  return collect(kind, options, [&](const StateVisitor& v) {
    visit_chain(m, kind, options, sampler, v);
  });
}

void write_trace_csv(const ChainTrace& trace, std::ostream& out) {
  out << "step,state\n";
  for (std::size_t i = 0; i < trace.states.size(); ++i) {
    out << i * trace.record_every << ',' << to_bitstring(trace.states[i]) << '\n';
  }
}

}  // namespace orbital
