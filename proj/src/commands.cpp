#include "orbital/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "orbital/error.hpp"
#include "orbital/generators.hpp"

namespace orbital {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string item;
  for (char c : s) {
    if (c == ',' || c == ' ') {
      if (!item.empty()) out.push_back(std::move(item));
      item.clear();
    } else {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(std::move(item));
  return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  std::istringstream in{std::string(text)};
  T value{};
  in >> value;
  if (!in || !(in >> std::ws).eof()) {
    throw InvalidInput("bad value '" + std::string(text) + "' for " + std::string(key));
  }
  if constexpr (std::is_unsigned_v<T>) {
    if (!text.empty() && trim(text).front() == '-') {
      throw InvalidInput(std::string(key) + " must be non-negative");
    }
  }
  return value;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  return parse_number<std::size_t>(key, text);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

void prepare_out(const ExperimentConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.out, ec);
  if (ec) throw InvalidInput("cannot create output directory " + config.out.string());
  open_output(config.out / "config.txt") << format_config(config);
}

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string mode_name(SamplerMode m) { return m == SamplerMode::kExact ? "exact" : "pr"; }

// Runs fn(i) for i in [0, count) on up to `workers` threads; results keep
// index order.
template <class Fn>
auto fan_out(std::size_t count, std::size_t workers, Fn fn) {
  using Result = decltype(fn(std::size_t{0}));
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Result> results;
  results.reserve(count);
  for (std::size_t begin = 0; begin < count; begin += workers) {
    const std::size_t end = std::min(count, begin + workers);
    std::vector<std::future<Result>> batch;
    for (std::size_t i = begin; i < end; ++i) batch.push_back(std::async(std::launch::async, fn, i));
    for (auto& f : batch) results.push_back(f.get());
  }
  return results;
}

ExactDistribution exact_of(const LoadedModel& model) {
  if (model.is_clause_model()) return exact_pi_clauses(*model.clauses, model.evidence);
  return exact_pi_lambda(model.independent_sets->graph(), model.independent_sets->lambda());
}

TransitionMatrix matrix_of(const LoadedModel& model, ChainKind kind) {
  const std::size_t cap = guard_cap(kDefaultOrbitCap);
  if (model.is_clause_model()) return transition_matrix(*model.conditioned, kind, &model.group, cap);
  return transition_matrix(*model.independent_sets, kind, &model.group, cap);
}

void check_chain(const LoadedModel& model, ChainKind kind) {
  if (is_gibbs(kind) != model.is_clause_model()) {
    throw InvalidInput(std::string("chain '") + std::string(chain_kind_name(kind)) +
                       "' does not fit the " + (model.is_clause_model() ? "clause" : "graph") +
                       " model");
  }
}

std::string join_counts(const std::set<std::size_t>& values) {
  std::string s;
  for (auto v : values) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v);
  }
  return s;
}

}  // namespace

std::string_view model_family_name(ModelFamily f) {
  switch (f) {
    case ModelFamily::kGrid: return "grid";
    case ModelFamily::kCliques: return "cliques";
    case ModelFamily::kComplete: return "complete";
    case ModelFamily::kGraphFile: return "graph";
    case ModelFamily::kClauseFile: return "clauses";
    case ModelFamily::kFriendsSmokers: return "friends-smokers";
  }
  return "unknown";
}

ModelFamily parse_model_family(std::string_view name) {
  for (auto f : {ModelFamily::kGrid, ModelFamily::kCliques, ModelFamily::kComplete,
                 ModelFamily::kGraphFile, ModelFamily::kClauseFile, ModelFamily::kFriendsSmokers}) {
    if (model_family_name(f) == name) return f;
  }
  throw InvalidInput("unknown model '" + std::string(name) + "'");
}

void apply_setting(ExperimentConfig& c, std::string_view key_in, std::string_view value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  if (key == "model") {
    c.model = parse_model_family(value);
  } else if (key == "k") {
    c.k = parse_count(key, value);
  } else if (key == "lambda") {
    c.lambda = parse_number<double>(key, value);
  } else if (key == "graph") {
    c.graph_path = value;
  } else if (key == "clauses") {
    c.clauses_path = value;
  } else if (key == "evidence") {
    c.evidence_path = value;
  } else if (key == "people") {
    c.people = parse_count(key, value);
  } else if (key == "evidence-fraction") {
    c.evidence_fraction = parse_number<double>(key, value);
  } else if (key == "model-seed") {
    c.model_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "chain") {
    c.chains.clear();
    for (const auto& name : split_list(value)) c.chains.push_back(parse_chain_kind(name));
  } else if (key == "steps") {
    c.steps = parse_count(key, value);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "seeds") {
    c.seeds = parse_count(key, value);
  } else if (key == "checkpoint-every") {
    c.checkpoint_every = parse_count(key, value);
  } else if (key == "mode") {
    if (value == "exact") {
      c.mode = SamplerMode::kExact;
    } else if (value == "pr") {
      c.mode = SamplerMode::kProductReplacement;
    } else {
      throw InvalidInput("mode must be 'exact' or 'pr'");
    }
  } else if (key == "eps") {
    c.eps.clear();
    for (const auto& e : split_list(value)) c.eps.push_back(parse_number<double>(key, e));
  } else if (key == "horizon") {
    c.horizon = parse_count(key, value);
  } else if (key == "trials") {
    c.trials = parse_count(key, value);
  } else if (key == "workers") {
    c.workers = parse_count(key, value);
  } else if (key == "out") {
    c.out = value;
  } else {
    throw InvalidInput("unknown setting '" + key + "'");
  }
}

void load_config_text(ExperimentConfig& config, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput("config line " + std::to_string(number) + ": expected key = value");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

void load_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  load_config_text(config, read_file(path));
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "model = " << model_family_name(c.model) << '\n';
  switch (c.model) {
    case ModelFamily::kGrid:
    case ModelFamily::kCliques:
    case ModelFamily::kComplete: out << "k = " << c.k << '\n'; break;
    case ModelFamily::kGraphFile: out << "graph = " << c.graph_path.string() << '\n'; break;
    case ModelFamily::kClauseFile:
      out << "clauses = " << c.clauses_path.string() << '\n';
      if (!c.evidence_path.empty()) out << "evidence = " << c.evidence_path.string() << '\n';
      break;
    case ModelFamily::kFriendsSmokers:
      out << "people = " << c.people << '\n'
          << "evidence-fraction = " << shortest(c.evidence_fraction) << '\n'
          << "model-seed = " << c.model_seed << '\n';
      break;
  }
  out << "lambda = " << shortest(c.lambda) << '\n';
  out << "chain = ";
  const auto chains = resolved_chains(c);
  for (std::size_t i = 0; i < chains.size(); ++i) out << (i ? "," : "") << chain_kind_name(chains[i]);
  out << '\n';
  out << "steps = " << c.steps << '\n'
      << "seed = " << c.seed << '\n'
      << "seeds = " << c.seeds << '\n'
      << "checkpoint-every = " << c.checkpoint_every << '\n'
      << "mode = " << mode_name(c.mode) << '\n'
      << "eps = ";
  for (std::size_t i = 0; i < c.eps.size(); ++i) out << (i ? "," : "") << shortest(c.eps[i]);
  out << '\n'
      << "horizon = " << c.horizon << '\n'
      << "trials = " << c.trials << '\n'
      << "workers = " << c.workers << '\n'
      << "out = " << c.out.string() << '\n';
  return out.str();
}

void validate(const ExperimentConfig& c) {
  if (!(c.lambda > 0.0) || !std::isfinite(c.lambda)) throw InvalidInput("lambda must be positive");
  if (c.seeds == 0) throw InvalidInput("at least one seed is required");
  if (c.checkpoint_every == 0) throw InvalidInput("checkpoint-every must be positive");
  auto need = [](const std::filesystem::path& p, const char* what) {
    if (p.empty()) throw InvalidInput(std::string("--") + what + " is required for this model");
    if (!std::filesystem::is_regular_file(p)) throw InvalidInput(std::string(what) + " file not found: " + p.string());
  };
  switch (c.model) {
    case ModelFamily::kGraphFile: need(c.graph_path, "graph"); break;
    case ModelFamily::kClauseFile:
      need(c.clauses_path, "clauses");
      if (!c.evidence_path.empty()) need(c.evidence_path, "evidence");
      break;
    case ModelFamily::kGrid:
    case ModelFamily::kCliques:
    case ModelFamily::kComplete:
      if (c.k < 2) throw InvalidInput("k must be at least 2");
      break;
    case ModelFamily::kFriendsSmokers:
      if (c.people < 2) throw InvalidInput("people must be at least 2");
      break;
  }
  for (double e : c.eps) {
    if (!(e > 0.0 && e < 1.0)) throw InvalidInput("eps values must lie in (0, 1)");
  }
}

std::vector<ChainKind> resolved_chains(const ExperimentConfig& c) {
  if (!c.chains.empty()) return c.chains;
  if (c.model == ModelFamily::kClauseFile || c.model == ModelFamily::kFriendsSmokers) {
    return {ChainKind::kGibbs, ChainKind::kOrbitalGibbs};
  }
  return {ChainKind::kInsertDelete, ChainKind::kOrbitalInsertDelete};
}

std::vector<std::uint64_t> resolved_seeds(const ExperimentConfig& c) {
  std::vector<std::uint64_t> seeds(c.seeds);
  for (std::size_t i = 0; i < c.seeds; ++i) seeds[i] = c.seed + i;
  return seeds;
}

std::size_t guard_cap(std::size_t fallback) {
  const char* env = std::getenv("ORBITAL_GUARD");
  if (!env || !*env) return fallback;
  try {
    return parse_count("ORBITAL_GUARD", env);
  } catch (const InvalidInput&) {
    throw InvalidInput("ORBITAL_GUARD must be a positive integer");
  }
}

Config LoadedModel::initial_state() const {
  if (is_clause_model()) return evidence_state(evidence, size());
  return Config(size(), 0);
}

LoadedModel load_model(const ExperimentConfig& c) {
  validate(c);
  LoadedModel m;
  m.family = c.model;
  std::optional<ColoredGraph> graph;
  switch (c.model) {
    case ModelFamily::kGrid: graph = gen_grid(c.k); break;
    case ModelFamily::kCliques: graph = gen_connected_cliques(c.k); break;
    case ModelFamily::kComplete: graph = gen_complete(c.k); break;
    case ModelFamily::kGraphFile: graph = parse_graph(read_file(c.graph_path)); break;
    case ModelFamily::kClauseFile:
      m.clauses = parse_clauses(read_file(c.clauses_path));
      if (!c.evidence_path.empty()) m.evidence = parse_evidence(read_file(c.evidence_path), *m.clauses);
      break;
    case ModelFamily::kFriendsSmokers: {
      auto grounded = gen_friends_smokers(c.people, c.evidence_fraction, c.model_seed);
      m.clauses = std::move(grounded.clauses);
      m.evidence = std::move(grounded.evidence);
      break;
    }
  }
  if (graph) {
    m.names = graph->names();
    m.group = automorphism_generators(*graph);
    m.independent_sets.emplace(std::move(*graph), c.lambda);
  } else {
    m.names = m.clauses->variables();
    m.symmetry = model_symmetry_group(*m.clauses, m.evidence);
    m.group = m.symmetry->model_group;
    m.conditioned.emplace(condition_on(*m.clauses, m.evidence));
  }
  return m;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const GuardExceeded*>(&e)) return 2;
  if (dynamic_cast<const Infeasible*>(&e)) return 3;
  if (dynamic_cast<const InvalidInput*>(&e)) return 1;
  return 4;
}

void cmd_detect(const ExperimentConfig& config, std::ostream& out) {
  const LoadedModel model = load_model(config);
  const std::size_t cap = guard_cap();
  out << "model: " << model_family_name(model.family) << " (" << model.size() << " points)\n";
  if (model.symmetry) {
    out << "colored graph: " << model.symmetry->graph.size() << " vertices, "
        << model.symmetry->graph.edges().size() << " edges\n";
  }
  out << "generators: " << model.group.generators().size() << '\n';
  for (const auto& g : model.group.generators()) out << "  " << format_cycles(g, model.names) << '\n';

  std::optional<std::vector<Permutation>> elements;
  try {
    elements = enumerate_group(model.group, cap);
    out << "group order: " << elements->size() << '\n';
  } catch (const GuardExceeded&) {
    out << "group order: more than " << cap << " (not enumerated)\n";
  }
  out << "point orbits: " << orbit_partition(model.group).size() << '\n';
  if (model.symmetry) out << "feature orbits: " << model.symmetry->feature_orbits.size() << '\n';

  if (model.size() <= kMaxEnumerationPoints) {
    const ConfigSpaceOrbits orbits = config_space_orbits(model.group);
    const std::set<std::size_t> sizes(orbits.sizes.begin(), orbits.sizes.end());
    out << "configuration orbits: " << orbits.count() << '\n';
    out << "orbit cardinalities: " << join_counts(sizes) << '\n';
    if (elements) {
      const double burnside = burnside_orbit_count(*elements);
      out << "burnside count: " << std::llround(burnside)
          << (std::abs(burnside - static_cast<double>(orbits.count())) < 1e-6 ? " (agrees)" : " (DISAGREES)")
          << '\n';
    }
  } else {
    out << "configuration orbits: not enumerated (" << model.size() << " points > "
        << kMaxEnumerationPoints << ")\n";
  }
}

void cmd_sample(const ExperimentConfig& config, std::ostream& out) {
  const LoadedModel model = load_model(config);
  const auto chains = resolved_chains(config);
  for (auto kind : chains) check_chain(model, kind);
  const OrbitSampler prototype(model.group, config.mode, config.seed, guard_cap());
  prepare_out(config);
  const auto seeds = resolved_seeds(config);

  struct Job {
    ChainKind kind;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (auto kind : chains) {
    for (auto s : seeds) jobs.push_back({kind, s});
  }
  auto traces = fan_out(jobs.size(), config.workers, [&](std::size_t i) {
    RunOptions opts;
    opts.steps = config.steps;
    opts.seed = jobs[i].seed;
    opts.initial = model.initial_state();
    if (model.is_clause_model()) return run_chain(*model.conditioned, jobs[i].kind, opts, &prototype);
    return run_chain(*model.independent_sets, jobs[i].kind, opts, &prototype);
  });
  for (const auto& t : traces) {
    const auto name = "trace_" + std::string(chain_kind_name(t.kind)) + "_seed" + std::to_string(t.seed) + ".csv";
    auto file = open_output(config.out / name);
    write_trace_csv(t, file);
    out << "wrote " << (config.out / name).string() << '\n';
  }
}

void cmd_exact(const ExperimentConfig& config, std::ostream& out) {
  const LoadedModel model = load_model(config);
  const auto chains = resolved_chains(config);
  for (auto kind : chains) check_chain(model, kind);
  prepare_out(config);
  const ExactDistribution pi = exact_of(model);
  {
    auto file = open_output(config.out / "pi.csv");
    write_distribution_csv(pi, file);
  }
  out << "states: " << pi.space.size() << '\n';
  out << "partition function: " << std::setprecision(17) << pi.partition_value << '\n';
  auto summary = open_output(config.out / "exact_summary.csv");
  summary << "chain_kind,states,detailed_balance,stationarity,positive_diagonal,irreducible\n";
  for (auto kind : chains) {
    const TransitionMatrix p = matrix_of(model, kind);
    const auto name = "matrix_" + std::string(chain_kind_name(kind)) + ".csv";
    auto file = open_output(config.out / name);
    write_matrix_csv(p, file);
    const auto balance = check_detailed_balance(p, pi, 1e-10);
    const double stat = stationarity_residual(p, pi);
    const bool diag = has_positive_diagonal(p);
    const bool irr = is_irreducible(p);
    summary << chain_kind_name(kind) << ',' << p.size() << ',' << balance.max_violation << ','
            << stat << ',' << diag << ',' << irr << '\n';
    out << chain_kind_name(kind) << ": detailed balance residual " << balance.max_violation
        << ", stationarity residual " << stat << ", positive diagonal " << (diag ? "yes" : "no")
        << ", irreducible " << (irr ? "yes" : "no") << '\n';
  }
}

void cmd_tvcurve(const ExperimentConfig& config, std::ostream& out) {
  const LoadedModel model = load_model(config);
  const auto chains = resolved_chains(config);
  for (auto kind : chains) check_chain(model, kind);
  const OrbitSampler prototype(model.group, config.mode, config.seed, guard_cap());
  const ExactDistribution pi = exact_of(model);
  prepare_out(config);
  const auto seeds = resolved_seeds(config);

  struct Job {
    ChainKind kind;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (auto kind : chains) {
    for (auto s : seeds) jobs.push_back({kind, s});
  }
  std::vector<double> seconds(jobs.size(), 0.0);
  auto series = fan_out(jobs.size(), config.workers, [&](std::size_t i) {
    RunOptions opts;
    opts.steps = config.steps;
    opts.seed = jobs[i].seed;
    opts.initial = model.initial_state();
    const auto start = std::chrono::steady_clock::now();
    TVSeries s = model.is_clause_model()
                     ? run_tv_curve(*model.conditioned, jobs[i].kind, opts, &prototype, pi,
                                    config.checkpoint_every)
                     : run_tv_curve(*model.independent_sets, jobs[i].kind, opts, &prototype, pi,
                                    config.checkpoint_every);
    seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
  });

  auto curve = open_output(config.out / "tv.csv");
  auto areas = open_output(config.out / "tv_area.csv");
  areas << "chain_kind,seed,area,final_d_tv\n";
  std::map<ChainKind, std::vector<double>> by_kind;
  std::map<ChainKind, double> time_by_kind;
  for (std::size_t i = 0; i < series.size(); ++i) {
    time_by_kind[series[i].kind] += seconds[i];
    write_tv_csv(series[i], curve, i == 0);
    const double area = normalized_tv_area(series[i]);
    by_kind[series[i].kind].push_back(area);
    areas << chain_kind_name(series[i].kind) << ',' << series[i].seed << ',' << area << ','
          << series[i].points.back().second << '\n';
  }
  out << "wrote " << (config.out / "tv.csv").string() << '\n';
  for (auto kind : chains) {
    const auto& a = by_kind[kind];
    double mean = 0.0;
    for (double v : a) mean += v;
    mean /= static_cast<double>(a.size());
    const double per_step = time_by_kind[kind] / static_cast<double>(a.size() * std::max<std::size_t>(config.steps, 1));
    out << chain_kind_name(kind) << ": mean normalized TV area " << mean << " over " << a.size()
        << " seeds, " << per_step * 1e9 << " ns per step\n";
  }
  // Wall-clock cost of the orbit resampling relative to the plain chain.
  for (auto [plain, orbital] : {std::pair{ChainKind::kInsertDelete, ChainKind::kOrbitalInsertDelete},
                                std::pair{ChainKind::kGibbs, ChainKind::kOrbitalGibbs}}) {
    if (time_by_kind.count(plain) && time_by_kind.count(orbital) && time_by_kind[plain] > 0) {
      out << "per-step overhead " << chain_kind_name(orbital) << " / " << chain_kind_name(plain) << ": "
          << time_by_kind[orbital] / time_by_kind[plain] << '\n';
    }
  }
}

void cmd_coupling(const ExperimentConfig& config, std::ostream& out) {
  const LoadedModel model = load_model(config);
  if (!model.independent_sets) throw InvalidInput("coupling needs an independent-set model");
  prepare_out(config);
  Rng rng = make_rng(config.seed, 0);
  const std::size_t cap = guard_cap();
  const CouplingReport r = coupling_drift(*model.independent_sets, model.group, config.trials, rng, cap);
  auto file = open_output(config.out / "coupling.csv");
  write_coupling_csv(r, file);
  out << std::setprecision(6);
  out << "pairs examined: " << r.pairs_examined << '\n';
  out << "cases (i..v):";
  for (auto c : r.case_counts) out << ' ' << c;
  out << '\n';
  out << "rho (pooled): " << r.rho << ", varrho: " << r.varrho << '\n';
  try {
    out << "rho over edge triples: " << exact_rho(model.independent_sets->graph(), model.group, cap) << '\n';
  } catch (const InvalidInput&) {
    out << "rho over edge triples: undefined (no triples)\n";
  }
  out << "measured drift: " << r.expected_drift << " +- " << r.drift_se << '\n';
  out << "drift bound: " << r.bound << '\n';
  out << "beta: " << r.beta << ", alpha: " << r.alpha << ", diameter: " << r.diameter << '\n';
}

void cmd_mix(const ExperimentConfig& config, std::ostream& out) {
  const LoadedModel model = load_model(config);
  const auto chains = resolved_chains(config);
  for (auto kind : chains) check_chain(model, kind);
  prepare_out(config);
  const ExactDistribution pi = exact_of(model);
  const double n = static_cast<double>(model.size());
  auto file = open_output(config.out / "mix.csv");
  file << "chain_kind,eps,tau,bound,within_bound\n";
  for (auto kind : chains) {
    const TransitionMatrix p = matrix_of(model, kind);
    for (double eps : config.eps) {
      const MixingReport r = mixing_time(p, pi, eps, config.horizon);
      const double bound = n * std::log(n / eps);
      const bool within = static_cast<double>(r.tau) <= bound;
      file << chain_kind_name(kind) << ',' << eps << ',' << r.tau << ',' << bound << ',' << within << '\n';
      out << chain_kind_name(kind) << " eps=" << eps << ": tau " << r.tau << ", n ln(n/eps) "
          << std::setprecision(6) << bound << (within ? " (within)" : " (exceeds)") << '\n';
    }
  }
}

void cmd_gen(const ExperimentConfig& config, std::ostream& out) {
  validate(config);
  prepare_out(config);
  switch (config.model) {
    case ModelFamily::kGrid:
    case ModelFamily::kCliques:
    case ModelFamily::kComplete: {
      const ColoredGraph g = config.model == ModelFamily::kGrid      ? gen_grid(config.k)
                             : config.model == ModelFamily::kCliques ? gen_connected_cliques(config.k)
                                                                     : gen_complete(config.k);
      const auto path = config.out / "model.graph";
      open_output(path) << format_graph(g);
      out << "wrote " << path.string() << " (" << g.size() << " vertices, " << g.edges().size()
          << " edges)\n";
      break;
    }
    case ModelFamily::kFriendsSmokers: {
      const auto m = gen_friends_smokers(config.people, config.evidence_fraction, config.model_seed);
      const auto clauses = config.out / "model.clauses";
      const auto evidence = config.out / "model.evidence";
      open_output(clauses) << format_clauses(m.clauses);
      open_output(evidence) << format_evidence(m.evidence, m.clauses);
      out << "wrote " << clauses.string() << " (" << m.clauses.variable_count() << " variables, "
          << m.clauses.clauses().size() << " clauses) and " << evidence.string() << " ("
          << m.evidence.assignments.size() << " observations)\n";
      break;
    }
    default: throw InvalidInput("gen supports grid, cliques, complete and friends-smokers");
  }
}

void run_command(std::string_view verb, const ExperimentConfig& config, std::ostream& out) {
  if (verb == "detect") return cmd_detect(config, out);
  if (verb == "sample") return cmd_sample(config, out);
  if (verb == "exact") return cmd_exact(config, out);
  if (verb == "tvcurve") return cmd_tvcurve(config, out);
  if (verb == "coupling") return cmd_coupling(config, out);
  if (verb == "mix") return cmd_mix(config, out);
  if (verb == "gen") return cmd_gen(config, out);
  throw InvalidInput("unknown command '" + std::string(verb) + "'");
}

}  // namespace orbital
