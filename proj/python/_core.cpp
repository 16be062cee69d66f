#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "orbital/analysis.hpp"
#include "orbital/chains.hpp"
#include "orbital/clauses.hpp"
#include "orbital/commands.hpp"
#include "orbital/error.hpp"
#include "orbital/generators.hpp"
#include "orbital/graph.hpp"
#include "orbital/permutation.hpp"

namespace py = pybind11;
using namespace orbital;

namespace {

std::vector<std::string> bitstrings(const std::vector<Config>& states) {
  std::vector<std::string> out;
  out.reserve(states.size());
  for (const auto& c : states) out.push_back(to_bitstring(c));
  return out;
}

std::vector<std::vector<Point>> mappings(const PermutationGroup& g) {
  std::vector<std::vector<Point>> out;
  for (const auto& p : g.generators()) out.emplace_back(p.mapping().begin(), p.mapping().end());
  return out;
}

PermutationGroup group_of(const ColoredGraph& g, const std::optional<std::vector<std::vector<Point>>>& gens) {
  if (!gens) return automorphism_generators(g);
  std::vector<Permutation> perms;
  for (const auto& m : *gens) perms.emplace_back(m);
  return PermutationGroup(g.size(), std::move(perms));
}

py::dict distribution_dict(const ExactDistribution& d) {
  py::dict out;
  out["states"] = bitstrings(d.space.states());
  out["probs"] = d.probs;
  out["partition"] = d.partition_value;
  return out;
}

SamplerMode parse_mode(const std::string& m) {
  if (m == "exact") return SamplerMode::kExact;
  if (m == "pr") return SamplerMode::kProductReplacement;
  throw InvalidInput("mode must be 'exact' or 'pr'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Orbital Markov chains: symmetry detection, lifted samplers and exact analysis";

  auto base = py::register_exception<Error>(m, "OrbitalError");
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<GuardExceeded>(m, "GuardExceeded", base.ptr());
  py::register_exception<Infeasible>(m, "Infeasible", base.ptr());

  py::class_<ColoredGraph>(m, "Graph")
      .def(py::init([](std::size_t n, std::vector<Edge> edges, std::optional<std::vector<Color>> colors,
                       std::vector<std::string> names) {
             return ColoredGraph(n, colors ? *colors : std::vector<Color>(n, 0), std::move(edges),
                                 std::move(names));
           }),
           py::arg("n"), py::arg("edges"), py::arg("colors") = py::none(),
           py::arg("names") = std::vector<std::string>{})
      .def_static("parse", &parse_graph, py::arg("text"))
      .def("format", &format_graph)
      .def_property_readonly("size", &ColoredGraph::size)
      .def_property_readonly("edges", &ColoredGraph::edges)
      .def_property_readonly("colors", &ColoredGraph::colors)
      .def_property_readonly("names", [](const ColoredGraph& g) { return g.names().names(); })
      .def("__len__", &ColoredGraph::size)
      .def("__repr__", [](const ColoredGraph& g) {
        return "<Graph " + std::to_string(g.size()) + " vertices, " + std::to_string(g.edges().size()) +
               " edges>";
      });

  m.def("grid", &gen_grid, py::arg("k"));
  m.def("connected_cliques", &gen_connected_cliques, py::arg("k"));
  m.def("complete", &gen_complete, py::arg("k"));

  m.def(
      "automorphisms",
      [](const ColoredGraph& g) {
        const auto group = automorphism_generators(g);
        std::vector<std::string> cycles;
        for (const auto& p : group.generators()) cycles.push_back(format_cycles(p, g.names()));
        py::dict out;
        out["generators"] = mappings(group);
        out["cycles"] = cycles;
        return out;
      },
      py::arg("graph"), "Generators of the color-preserving automorphism group.");

  m.def(
      "group_order",
      [](const ColoredGraph& g, std::size_t cap) { return enumerate_group(automorphism_generators(g), cap).size(); },
      py::arg("graph"), py::arg("cap") = kDefaultGroupCap);

  m.def(
      "configuration_orbits",
      [](const ColoredGraph& g) {
        const auto group = automorphism_generators(g);
        const auto orbits = config_space_orbits(group);
        py::dict out;
        out["count"] = orbits.count();
        out["sizes"] = orbits.sizes;
        out["burnside"] = burnside_orbit_count(enumerate_group(group));
        return out;
      },
      py::arg("graph"), "Orbits of the automorphism group on {0,1}^n.");

  py::class_<WeightedClauseSet>(m, "ClauseSet")
      .def_static("parse", &parse_clauses, py::arg("text"))
      .def("format", &format_clauses)
      .def_property_readonly("variables", [](const WeightedClauseSet& s) { return s.variables().names(); })
      .def_property_readonly("num_clauses", [](const WeightedClauseSet& s) { return s.clauses().size(); });

  m.def("friends_smokers", [](std::size_t people) { return gen_friends_smokers(people).clauses; },
        py::arg("people"));

  m.def(
      "model_symmetry",
      [](const WeightedClauseSet& s, const std::map<std::string, bool>& evidence) {
        std::vector<std::pair<std::string, bool>> values(evidence.begin(), evidence.end());
        const auto r = model_symmetry_group(s, Evidence::from_names(s, values));
        auto orbit_lists = [](const std::vector<Orbit>& orbits) {
          std::vector<std::vector<Point>> out;
          for (const auto& o : orbits) out.push_back(o.elements);
          return out;
        };
        py::dict out;
        out["generators"] = mappings(r.model_group);
        out["variable_orbits"] = orbit_lists(r.variable_orbits);
        out["feature_orbits"] = orbit_lists(r.feature_orbits);
        return out;
      },
      py::arg("clauses"), py::arg("evidence") = std::map<std::string, bool>{});

  m.def("exact_pi_lambda", [](const ColoredGraph& g, double lambda) { return distribution_dict(exact_pi_lambda(g, lambda)); },
        py::arg("graph"), py::arg("lam") = 1.0);
  m.def("exact_pi_clauses", [](const WeightedClauseSet& s) { return distribution_dict(exact_pi_clauses(s)); },
        py::arg("clauses"));

  m.def(
      "transition_matrix",
      [](const ColoredGraph& g, double lambda, bool orbital) {
        const IndependentSetModel model(g, lambda);
        const auto group = automorphism_generators(g);
        const auto p = transition_matrix(
            model, orbital ? ChainKind::kOrbitalInsertDelete : ChainKind::kInsertDelete, &group);
        std::vector<std::vector<double>> rows(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) rows[i].assign(p.row(i).begin(), p.row(i).end());
        py::dict out;
        out["states"] = bitstrings(p.space.states());
        out["matrix"] = rows;
        return out;
      },
      py::arg("graph"), py::arg("lam") = 1.0, py::arg("orbital") = true,
      "Exact insert/delete kernel on independent sets.");

  m.def(
      "mixing_time",
      [](const ColoredGraph& g, double lambda, bool orbital, double eps) {
        const IndependentSetModel model(g, lambda);
        const auto group = automorphism_generators(g);
        const auto p = transition_matrix(
            model, orbital ? ChainKind::kOrbitalInsertDelete : ChainKind::kInsertDelete, &group);
        return mixing_time(p, exact_pi_lambda(g, lambda), eps).tau;
      },
      py::arg("graph"), py::arg("lam") = 1.0, py::arg("orbital") = true, py::arg("eps") = 0.01);

  m.def(
      "sample",
      [](const ColoredGraph& g, double lambda, bool orbital, std::size_t steps, std::uint64_t seed,
         const std::string& mode, std::size_t record_every) {
        const IndependentSetModel model(g, lambda);
        const OrbitSampler sampler(automorphism_generators(g), parse_mode(mode), seed);
        RunOptions opts;
        opts.steps = steps;
        opts.seed = seed;
        opts.record_every = record_every;
        py::gil_scoped_release release;
        const auto t = run_chain(model, orbital ? ChainKind::kOrbitalInsertDelete : ChainKind::kInsertDelete,
                                 opts, &sampler);
        return bitstrings(t.states);
      },
      py::arg("graph"), py::arg("lam") = 1.0, py::arg("orbital") = true, py::arg("steps") = 1000,
      py::arg("seed") = 1, py::arg("mode") = "pr", py::arg("record_every") = 1,
      "Trace of the (orbital) insert/delete chain as bit strings.");

  m.def(
      "gibbs_sample",
      [](const WeightedClauseSet& s, bool orbital, std::size_t steps, std::uint64_t seed, const std::string& mode) {
        const ClauseModel model(s);
        const OrbitSampler sampler(model_symmetry_group(s).model_group, parse_mode(mode), seed);
        RunOptions opts;
        opts.steps = steps;
        opts.seed = seed;
        py::gil_scoped_release release;
        const auto t = run_chain(model, orbital ? ChainKind::kOrbitalGibbs : ChainKind::kGibbs, opts, &sampler);
        return bitstrings(t.states);
      },
      py::arg("clauses"), py::arg("orbital") = true, py::arg("steps") = 1000, py::arg("seed") = 1,
      py::arg("mode") = "pr");

  m.def(
      "tv_curve",
      [](const ColoredGraph& g, double lambda, bool orbital, std::size_t samples, std::uint64_t seed,
         std::size_t every, const std::string& mode) {
        if (samples == 0) throw InvalidInput("samples must be positive");
        const IndependentSetModel model(g, lambda);
        const auto exact = exact_pi_lambda(g, lambda);
        const OrbitSampler sampler(automorphism_generators(g), parse_mode(mode), seed);
        RunOptions opts;
        opts.steps = samples - 1;
        opts.seed = seed;
        py::gil_scoped_release release;
        const auto s = run_tv_curve(model, orbital ? ChainKind::kOrbitalInsertDelete : ChainKind::kInsertDelete,
                                    opts, &sampler, exact, every);
        return s.points;
      },
      py::arg("graph"), py::arg("lam") = 1.0, py::arg("orbital") = true, py::arg("samples") = 10'000,
      py::arg("seed") = 1, py::arg("every") = 1000, py::arg("mode") = "exact",
      "List of (samples, d_tv) pairs for the cumulative empirical distribution.");

  m.def(
      "exact_rho",
      [](const ColoredGraph& g, std::optional<std::vector<std::vector<Point>>> generators) {
        return exact_rho(g, group_of(g, generators));
      },
      py::arg("graph"), py::arg("generators") = py::none(),
      "Fraction of edge triples whose two extensions lie in different orbits.");

  m.def(
      "coupling_drift",
      [](const ColoredGraph& g, double lambda, std::size_t trials, std::uint64_t seed) {
        const IndependentSetModel model(g, lambda);
        Rng rng = make_rng(seed);
        const auto r = coupling_drift(model, automorphism_generators(g), trials, rng);
        py::dict out;
        out["case_counts"] = std::vector<std::size_t>(r.case_counts.begin(), r.case_counts.end());
        out["rho"] = r.rho;
        out["varrho"] = r.varrho;
        out["drift"] = r.expected_drift;
        out["drift_se"] = r.drift_se;
        out["bound"] = r.bound;
        out["alpha"] = r.alpha;
        return out;
      },
      py::arg("graph"), py::arg("lam") = 1.0, py::arg("trials") = 10'000, py::arg("seed") = 1);

  m.def(
      "run_command",
      [](const std::string& verb, const std::map<std::string, std::string>& settings) {
        ExperimentConfig config;
        for (const auto& [k, v] : settings) apply_setting(config, k, v);
        std::ostringstream out;
        run_command(verb, config, out);
        return out.str();
      },
      py::arg("verb"), py::arg("settings") = std::map<std::string, std::string>{},
      "Runs a CLI verb with flag-style settings and returns its report.");
}
