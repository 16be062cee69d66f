#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orbital/commands.hpp"
#include "orbital/error.hpp"

namespace {

struct Flag {
  const char* name;
  const char* help;
};

constexpr Flag kFlags[] = {
    {"model", "grid|cliques|complete|clauses|graph|friends-smokers"},
    {"k", "model size parameter (k >= 2)"},
    {"lambda", "fugacity of the hardcore model"},
    {"graph", "colored graph file (model=graph)"},
    {"clauses", "weighted clause file (model=clauses)"},
    {"evidence", "evidence file (model=clauses)"},
    {"people", "Friends & Smokers domain size"},
    {"evidence-fraction", "Friends & Smokers observed fraction"},
    {"model-seed", "seed for generated evidence"},
    {"chain", "comma list of gibbs|orbital-gibbs|id|orbital-id"},
    {"steps", "chain steps per run"},
    {"seed", "first seed"},
    {"seeds", "number of seeds"},
    {"checkpoint-every", "samples between TV checkpoints"},
    {"mode", "orbit sampler: exact|pr"},
    {"eps", "comma list of mixing thresholds"},
    {"horizon", "largest power computed by mix"},
    {"trials", "coupled steps for coupling"},
    {"workers", "parallel runs (0 = all cores)"},
    {"out", "output directory"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbital Markov chains on model symmetries"};
  app.require_subcommand(1);
  std::string config_file;
  std::map<std::string, std::string> values;
  const char* verbs[][2] = {
      {"detect", "print generators, group order and orbit counts"},
      {"sample", "write chain traces"},
      {"exact", "write the exact distribution and transition matrices"},
      {"tvcurve", "write TV distance curves per chain and seed"},
      {"coupling", "simulate the path coupling and report its drift"},
      {"mix", "exact mixing times against n ln(n/eps)"},
      {"gen", "write a generated model to the output directory"},
  };
  for (auto& verb : verbs) {
    CLI::App* sub = app.add_subcommand(verb[0], verb[1]);
    sub->add_option("--config", config_file, "key = value configuration file");
    for (const Flag& f : kFlags) sub->add_option(std::string("--") + f.name, values[f.name], f.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();
  try {
    orbital::ExperimentConfig config;
    if (!config_file.empty()) orbital::load_config_file(config, config_file);
    for (const Flag& f : kFlags) {
      if (sub->count(std::string("--") + f.name) > 0) orbital::apply_setting(config, f.name, values[f.name]);
    }
    orbital::run_command(verb, config, std::cout);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return orbital::exit_code_for(e);
  }
}
