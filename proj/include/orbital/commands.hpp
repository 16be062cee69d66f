#pragma once

// Experiment configuration and the command-line verbs.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbital/analysis.hpp"
#include "orbital/chains.hpp"
#include "orbital/clauses.hpp"
#include "orbital/graph.hpp"
#include "orbital/permutation.hpp"

namespace orbital {

enum class ModelFamily { kGrid, kCliques, kComplete, kGraphFile, kClauseFile, kFriendsSmokers };

std::string_view model_family_name(ModelFamily f);
ModelFamily parse_model_family(std::string_view name);

struct ExperimentConfig {
  ModelFamily model = ModelFamily::kGrid;
  std::size_t k = 3;
  double lambda = 1.0;
  std::filesystem::path graph_path;
  std::filesystem::path clauses_path;
  std::filesystem::path evidence_path;
  std::size_t people = 4;
  double evidence_fraction = 0.0;
  std::uint64_t model_seed = 0;

  std::vector<ChainKind> chains;  // empty: the plain and orbital chain of the model type
  std::size_t steps = 100'000;
  std::uint64_t seed = 1;
  std::size_t seeds = 1;          // replicas use seed, seed + 1, ...
  std::size_t checkpoint_every = 1'000;
  SamplerMode mode = SamplerMode::kProductReplacement;
  std::vector<double> eps{0.1, 0.01};
  std::size_t horizon = 10'000;
  std::size_t trials = 100'000;
  std::size_t workers = 0;        // 0: hardware concurrency
  std::filesystem::path out = "out";
};

// Keys match the long flag names without dashes ("evidence-fraction",
// "checkpoint-every", ...). Throws InvalidInput for unknown keys or values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);
// Flat "key = value" lines; '#' starts a comment.
void load_config_text(ExperimentConfig& config, std::string_view text);
void load_config_file(ExperimentConfig& config, const std::filesystem::path& path);
std::string format_config(const ExperimentConfig& config);
// Referenced files exist, lambda > 0, at least one seed.
void validate(const ExperimentConfig& config);

std::vector<ChainKind> resolved_chains(const ExperimentConfig& config);
std::vector<std::uint64_t> resolved_seeds(const ExperimentConfig& config);

// Group and orbit enumeration cap: ORBITAL_GUARD if set, else `fallback`.
std::size_t guard_cap(std::size_t fallback = kDefaultGroupCap);

// A loaded model: an independent-set model for graph families, a clause
// model (conditioned on evidence) for clause families.
struct LoadedModel {
  ModelFamily family = ModelFamily::kGrid;
  PointNames names;
  std::optional<IndependentSetModel> independent_sets;
  std::optional<WeightedClauseSet> clauses;  // unconditioned
  Evidence evidence;
  std::optional<ClauseModel> conditioned;
  PermutationGroup group;                    // acts on the model's points
  std::optional<SymmetryReport> symmetry;    // clause families only

  bool is_clause_model() const { return conditioned.has_value(); }
  std::size_t size() const { return names.size(); }
  Config initial_state() const;
};
LoadedModel load_model(const ExperimentConfig& config);

// 0 success, 1 usage or input error, 2 guard exceeded, 3 infeasible model.
int exit_code_for(const std::exception& e);

void cmd_detect(const ExperimentConfig& config, std::ostream& out);
void cmd_sample(const ExperimentConfig& config, std::ostream& out);
void cmd_exact(const ExperimentConfig& config, std::ostream& out);
void cmd_tvcurve(const ExperimentConfig& config, std::ostream& out);
void cmd_coupling(const ExperimentConfig& config, std::ostream& out);
void cmd_mix(const ExperimentConfig& config, std::ostream& out);
void cmd_gen(const ExperimentConfig& config, std::ostream& out);

// Dispatches by verb name. Throws InvalidInput for an unknown verb.
void run_command(std::string_view verb, const ExperimentConfig& config, std::ostream& out);

}  // namespace orbital
