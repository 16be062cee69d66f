#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "orbital/analysis.hpp"
#include "orbital/error.hpp"
#include "orbital/generators.hpp"
#include "test_support.hpp"

using namespace orbital;
using orbital::testing::complete_graph;
using orbital::testing::symmetric_pair;

namespace {

ExactDistribution uniform_over(std::vector<Config> states) {
  ExactDistribution d;
  const double m = static_cast<double>(states.size());
  d.space = StateSpace(std::move(states));
  d.probs.assign(d.space.size(), 1.0 / m);
  return d;
}

TransitionMatrix from_rows(const StateSpace& space, std::vector<double> entries) {
  TransitionMatrix p;
  p.space = space;
  p.entries = std::move(entries);
  return p;
}

double max_abs_diff(const TransitionMatrix& a, const TransitionMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
  return m;
}

void expect_counts_match_row(const std::map<Config, std::size_t>& counts, std::size_t draws,
                             const TransitionMatrix& p, const Config& from) {
  const std::size_t row = p.space.index_of(from);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double q = p(row, j);
    auto it = counts.find(p.space[j]);
    const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    const double sigma = std::sqrt(static_cast<double>(draws) * q * (1.0 - q));
    EXPECT_LE(std::abs(c - static_cast<double>(draws) * q), 3.0 * sigma + 1e-9)
        << to_bitstring(from) << " -> " << to_bitstring(p.space[j]);
  }
}

}  // namespace

TEST(IndependentSets, MatchBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = orbital::testing::random_colored_graph(1 + rng() % 10, rng);
    const auto sets = enumerate_independent_sets(g);
    const auto masks = orbital::testing::brute_independent_masks(g);
    ASSERT_EQ(sets.size(), masks.size());
    for (std::size_t i = 0; i < masks.size(); ++i) EXPECT_EQ(sets[i], from_mask(masks[i], g.size()));
  }
  EXPECT_EQ(enumerate_independent_sets(ColoredGraph::uncolored(7, {})).size(), 128u);
  EXPECT_EQ(enumerate_independent_sets(complete_graph(9)).size(), 10u);
  EXPECT_THROW(enumerate_independent_sets(gen_grid(5)), GuardExceeded);
}

TEST(ExactPi, Examples) {
  const auto single = exact_pi_lambda(ColoredGraph::uncolored(1, {}), 1.0);
  EXPECT_NEAR(single.prob(parse_bitstring("0")), 0.5, 1e-12);
  EXPECT_NEAR(single.prob(parse_bitstring("1")), 0.5, 1e-12);

  const auto k9 = exact_pi_lambda(complete_graph(9), 1.0);
  for (double p : k9.probs) EXPECT_NEAR(p, 0.1, 1e-12);

  const auto f2 = exact_pi_clauses(symmetric_pair());
  EXPECT_NEAR(f2.prob(parse_bitstring("00")), 0.01, 1e-12);
  EXPECT_NEAR(f2.prob(parse_bitstring("01")), 0.49, 1e-12);
  EXPECT_NEAR(f2.prob(parse_bitstring("10")), 0.49, 1e-12);
  EXPECT_NEAR(f2.prob(parse_bitstring("11")), 0.01, 1e-12);
  for (double m : marginals(f2)) EXPECT_NEAR(m, 0.5, 1e-12);
}

TEST(ExactPi, HardcoreWeightsByHand) {
  // Path a-b at lambda 2: {} 1, {a} 2, {b} 2, total 5.
  const auto d = exact_pi_lambda(orbital::testing::path_graph(2), 2.0);
  EXPECT_EQ(d.space.size(), 3u);
  EXPECT_NEAR(d.prob(parse_bitstring("10")), 0.4, 1e-12);
  EXPECT_NEAR(d.prob(parse_bitstring("00")), 0.2, 1e-12);
  EXPECT_EQ(d.prob(parse_bitstring("11")), 0.0);
}

TEST(ExactPi, EvidenceConditions) {
  const auto s = orbital::testing::three_var();
  const auto e = Evidence::from_names(s, {{"c", true}});
  const auto d = exact_pi_clauses(s, e);
  EXPECT_EQ(d.space.size(), 4u);
  const auto m = marginals(d);
  const double expect = std::exp(0.5) / (1.0 + std::exp(0.5));
  EXPECT_NEAR(m[0], expect, 1e-12);
  EXPECT_NEAR(m[1], expect, 1e-12);
  EXPECT_NEAR(m[2], 1.0, 1e-12);
  EXPECT_THROW(exact_pi_clauses(parse_clauses("inf :: a\n"), Evidence::from_names(parse_clauses("inf :: a\n"), {{"a", false}})),
               Infeasible);
}

TEST(TransitionMatrix, RowsAreStochastic) {
  const IndependentSetModel m(gen_connected_cliques(3), 1.0);
  const auto group = automorphism_generators(m.graph());
  for (auto kind : {ChainKind::kInsertDelete, ChainKind::kOrbitalInsertDelete}) {
    const auto p = transition_matrix(m, kind, &group);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto r = p.row(i);
      EXPECT_NEAR(std::accumulate(r.begin(), r.end(), 0.0), 1.0, 1e-12);
      for (double x : r) EXPECT_GE(x, 0.0);
    }
  }
  EXPECT_THROW(transition_matrix(m, ChainKind::kOrbitalInsertDelete), InvalidInput);
}

TEST(TransitionMatrix, TrivialGroupGivesBase) {
  const IndependentSetModel m(gen_grid(3), 1.0);
  const auto trivial = PermutationGroup::trivial(9);
  EXPECT_EQ(max_abs_diff(transition_matrix(m, ChainKind::kInsertDelete),
                         transition_matrix(m, ChainKind::kOrbitalInsertDelete, &trivial)),
            0.0);
  const ClauseModel c(symmetric_pair());
  const auto t2 = PermutationGroup::trivial(2);
  EXPECT_EQ(max_abs_diff(transition_matrix(c, ChainKind::kGibbs),
                         transition_matrix(c, ChainKind::kOrbitalGibbs, &t2)),
            0.0);
}

TEST(TransitionMatrix, OrbitAveragingRoutesAgree) {
  for (const auto& g : {gen_grid(3), gen_connected_cliques(3), complete_graph(6)}) {
    const IndependentSetModel m(g, 1.0);
    const auto group = automorphism_generators(g);
    const auto base = transition_matrix(m, ChainKind::kInsertDelete);
    const auto elements = enumerate_group(group);
    EXPECT_LE(max_abs_diff(orbit_average(base, group), orbit_average_by_elements(base, elements)),
              1e-12);
  }
}

TEST(TransitionMatrix, OrbitalGridIsStationary) {
  const IndependentSetModel m(gen_grid(3), 1.0);
  const auto group = automorphism_generators(m.graph());
  const auto p = transition_matrix(m, ChainKind::kOrbitalInsertDelete, &group);
  const auto pi = exact_pi_lambda(m.graph(), 1.0);
  const auto v = stationary_distribution(p);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], pi.probs[i], 1e-10);
  EXPECT_LE(stationarity_residual(p, pi), 1e-12);
}

TEST(DetailedBalance, OrbitalKernels) {
  const ClauseModel f2(symmetric_pair());
  const auto g2 = model_symmetry_group(symmetric_pair()).model_group;
  EXPECT_TRUE(check_detailed_balance(transition_matrix(f2, ChainKind::kOrbitalGibbs, &g2),
                                     exact_pi_clauses(symmetric_pair()), 1e-12)
                  .pass);
  const IndependentSetModel cl(gen_connected_cliques(3), 1.0);
  const auto gc = automorphism_generators(cl.graph());
  EXPECT_TRUE(check_detailed_balance(transition_matrix(cl, ChainKind::kOrbitalInsertDelete, &gc),
                                     exact_pi_lambda(cl.graph(), 1.0), 1e-12)
                  .pass);
}

TEST(DetailedBalance, WrongPiFails) {
  const StateSpace space({parse_bitstring("0"), parse_bitstring("1")});
  const auto p = from_rows(space, {0.9, 0.1, 0.3, 0.7});  // stationary (0.75, 0.25)
  ExactDistribution right, wrong;
  right.space = wrong.space = space;
  right.probs = {0.75, 0.25};
  wrong.probs = {0.5, 0.5};
  EXPECT_TRUE(check_detailed_balance(p, right, 1e-12).pass);
  const auto r = check_detailed_balance(p, wrong, 1e-12);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.max_violation, 0.1, 1e-12);
}

TEST(Structure, DiagonalIrreducibilityPeriod) {
  const IndependentSetModel m(gen_grid(3), 1.0);
  const auto group = automorphism_generators(m.graph());
  for (auto kind : {ChainKind::kInsertDelete, ChainKind::kOrbitalInsertDelete}) {
    const auto p = transition_matrix(m, kind, &group);
    EXPECT_TRUE(has_positive_diagonal(p));
    EXPECT_TRUE(is_irreducible(p));
    EXPECT_EQ(period(p), 1u);
  }
  const StateSpace space({parse_bitstring("0"), parse_bitstring("1")});
  const auto flip = from_rows(space, {0.0, 1.0, 1.0, 0.0});
  EXPECT_FALSE(has_positive_diagonal(flip));
  EXPECT_TRUE(is_irreducible(flip));
  EXPECT_EQ(period(flip), 2u);
  EXPECT_FALSE(is_irreducible(from_rows(space, {1.0, 0.0, 0.5, 0.5})));
}

TEST(Symmetry, CompatibilityAndOrbitConstancy) {
  const IndependentSetModel m(gen_grid(3), 1.0);
  const auto group = automorphism_generators(m.graph());
  const auto base = transition_matrix(m, ChainKind::kInsertDelete);
  EXPECT_LE(symmetry_compatibility_residual(base, group), 1e-12);
  EXPECT_LE(orbit_constancy_residual(exact_pi_lambda(m.graph(), 1.0), group), 1e-12);

  // Swapping adjacent grid vertices does not even preserve the state space.
  const PermutationGroup bogus(9, {parse_cycles("(a b)", m.graph().names())});
  EXPECT_THROW(symmetry_compatibility_residual(base, bogus), InvalidInput);

  const auto s = orbital::testing::three_var();
  const auto pi = exact_pi_clauses(s);
  EXPECT_LE(orbit_constancy_residual(pi, model_symmetry_group(s).model_group), 1e-12);
  const PermutationGroup ac(3, {parse_cycles("(a c)", s.variables())});
  EXPECT_GT(orbit_constancy_residual(pi, ac), 1e-3);
  EXPECT_GT(symmetry_compatibility_residual(transition_matrix(ClauseModel(s), ChainKind::kGibbs), ac), 1e-3);
}

TEST(TotalVariation, Examples) {
  const auto u = uniform_over(enumerate_independent_sets(complete_graph(4)));
  EXPECT_EQ(tv_distance(u, u), 0.0);
  ExactDistribution point;
  point.space = StateSpace({Config(4, 0)});
  point.probs = {1.0};
  EXPECT_NEAR(tv_distance(point, u), 1.0 - 1.0 / 5.0, 1e-12);
  EXPECT_NEAR(tv_distance(u, point), 0.8, 1e-12);
  const std::vector<double> a{0.5, 0.5, 0.0}, b{0.0, 0.5, 0.5};
  EXPECT_NEAR(tv_distance(a, b), 0.5, 1e-12);
}

TEST(TotalVariation, EmpiricalStreamAndCurveAgree) {
  const IndependentSetModel m(gen_grid(3), 1.0);
  const auto exact = exact_pi_lambda(m.graph(), 1.0);
  const OrbitSampler sampler(automorphism_generators(m.graph()), SamplerMode::kExact);
  RunOptions opts;
  opts.steps = 4999;
  opts.seed = 3;
  const auto trace = run_chain(m, ChainKind::kOrbitalInsertDelete, opts, &sampler);
  const std::vector<std::size_t> checkpoints{1000, 2000, 3000, 4000, 5000};
  const auto curve = tv_curve(trace, exact, checkpoints);
  const auto streamed = run_tv_curve(m, ChainKind::kOrbitalInsertDelete, opts, &sampler, exact, 1000);
  ASSERT_EQ(curve.points.size(), streamed.points.size());
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    EXPECT_EQ(curve.points[i].first, streamed.points[i].first);
    EXPECT_NEAR(curve.points[i].second, streamed.points[i].second, 1e-15);
  }
  // Oracle: direct count over the first 1000 states.
  std::map<Config, double> counts;
  for (std::size_t i = 0; i < 1000; ++i) counts[trace.states[i]] += 1e-3;
  double d = 0.0;
  for (std::size_t j = 0; j < exact.space.size(); ++j) d += std::abs(counts[exact.space[j]] - exact.probs[j]);
  EXPECT_NEAR(curve.points[0].second, d / 2, 1e-12);
}

TEST(TotalVariation, CompleteGraphOrbitalConverges) {
  const IndependentSetModel m(gen_complete(3), 1.0);
  const auto exact = exact_pi_lambda(m.graph(), 1.0);
  const OrbitSampler sampler(automorphism_generators(m.graph()), SamplerMode::kExact);
  RunOptions opts;
  opts.steps = 99'999;
  opts.seed = 11;
  const auto s = run_tv_curve(m, ChainKind::kOrbitalInsertDelete, opts, &sampler, exact, 10'000);
  EXPECT_EQ(s.points.back().first, 100'000u);
  EXPECT_LT(s.points.back().second, 0.02);
}

TEST(TotalVariation, AreaAndCsv) {
  TVSeries s;
  s.kind = ChainKind::kGibbs;
  s.seed = 4;
  s.points = {{1, 1.0}, {3, 0.0}};
  EXPECT_NEAR(normalized_tv_area(s), 0.5, 1e-15);
  s.points = {{1, 0.5}, {2, 0.5}, {4, 0.5}};
  EXPECT_NEAR(normalized_tv_area(s), 0.5, 1e-15);
  std::ostringstream out;
  write_tv_csv(s, out, true);
  EXPECT_EQ(out.str().substr(0, 34), "samples,d_tv,chain_kind,seed\n1,0.5");
  EXPECT_NE(out.str().find(",gibbs,4\n"), std::string::npos);
  s.points.clear();
  EXPECT_THROW(normalized_tv_area(s), InvalidInput);
}

TEST(MixingTime, AllRowsPi) {
  const auto pi = exact_pi_lambda(gen_grid(3), 1.0);
  std::vector<double> rows;
  for (std::size_t i = 0; i < pi.space.size(); ++i) rows.insert(rows.end(), pi.probs.begin(), pi.probs.end());
  const auto p = from_rows(pi.space, rows);
  for (double eps : {0.9, 0.1, 1e-6}) EXPECT_EQ(mixing_time(p, pi, eps).tau, 1u);
}

TEST(MixingTime, TwoStateByHand) {
  // Symmetric kernel with flip probability q: distance 0.5 |1 - 2q|^t.
  const double q = 0.2;
  const StateSpace space({parse_bitstring("0"), parse_bitstring("1")});
  const auto p = from_rows(space, {1 - q, q, q, 1 - q});
  ExactDistribution pi;
  pi.space = space;
  pi.probs = {0.5, 0.5};
  const auto r = mixing_time(p, pi, 0.01);
  const auto expect = static_cast<std::size_t>(std::ceil(std::log(0.02) / std::log(0.6)));
  EXPECT_EQ(r.tau, expect);
  for (std::size_t t = 1; t <= std::min<std::size_t>(r.distances.size(), 20); ++t) {
    EXPECT_NEAR(r.distances[t - 1], 0.5 * std::pow(0.6, static_cast<double>(t)), 1e-12);
  }
  EXPECT_TRUE(r.monotone_after_crossing);
  EXPECT_THROW(mixing_time(from_rows(space, {0, 1, 1, 0}), pi, 0.01), InvalidInput);
  const auto slow = from_rows(space, {1 - 1e-6, 1e-6, 1e-6, 1 - 1e-6});
  EXPECT_THROW(mixing_time(slow, pi, 0.01, 10), Error);
}

TEST(MixingTime, CompleteGraphBound) {
  const IndependentSetModel m(gen_complete(3), 1.0);
  const auto group = automorphism_generators(m.graph());
  const auto p = transition_matrix(m, ChainKind::kOrbitalInsertDelete, &group);
  const auto r = mixing_time(p, exact_pi_lambda(m.graph(), 1.0), 0.01);
  EXPECT_LE(r.tau, 62u);
  EXPECT_TRUE(r.monotone_after_crossing);
}

TEST(MixingTime, GridOrbitalVersusBase) {
  const IndependentSetModel m(gen_grid(3), 1.0);
  const auto group = automorphism_generators(m.graph());
  const auto pi = exact_pi_lambda(m.graph(), 1.0);
  const auto base = mixing_time(transition_matrix(m, ChainKind::kInsertDelete), pi, 0.01);
  const auto orb = mixing_time(transition_matrix(m, ChainKind::kOrbitalInsertDelete, &group), pi, 0.01);
  // Observation only.
  RecordProperty("tau_base", static_cast<int>(base.tau));
  RecordProperty("tau_orbital", static_cast<int>(orb.tau));
  EXPECT_GT(base.tau, 0u);
  EXPECT_GT(orb.tau, 0u);
}

TEST(Coupling, CaseOutcomes) {
  const IndependentSetModel m(gen_grid(3), 1.0);
  const auto elements = enumerate_group(automorphism_generators(m.graph()));
  Rng rng = make_rng(21);
  const Config x = parse_bitstring("100000001");  // {a, i}
  const Config y = parse_bitstring("000000001");  // {i}, v = a
  std::array<std::size_t, kCouplingCases> seen{};
  for (int i = 0; i < 20'000; ++i) {
    const auto o = coupling_step(m, elements, x, y, rng);
    ++seen[static_cast<std::size_t>(o.which)];
    ASSERT_TRUE(m.is_independent(o.x));
    ASSERT_TRUE(m.is_independent(o.y));
    const auto h = hamming_distance(o.x, o.y);
    if (o.which == CouplingCase::kSameVertex) EXPECT_EQ(h, 0u);
    if (o.which == CouplingCase::kBlockedBoth) EXPECT_EQ(h, 1u);
    if (o.which == CouplingCase::kDeleteShared || o.which == CouplingCase::kInsertFree) EXPECT_EQ(h, 1u);
  }
  for (std::size_t c = 0; c < kCouplingCases; ++c) EXPECT_GT(seen[c], 0u) << c;
}

TEST(Coupling, CaseFourMergesUnderFullSymmetry) {
  const std::size_t n = 5;
  const IndependentSetModel m(complete_graph(n), 1.0);
  const auto elements = enumerate_group(automorphism_generators(m.graph()));
  Rng rng = make_rng(2);
  const Config x = parse_bitstring("10000"), y(n, 0);
  std::size_t four = 0, merged = 0;
  for (int i = 0; i < 20'000; ++i) {
    const auto o = coupling_step(m, elements, x, y, rng);
    if (o.which != CouplingCase::kBlockedByV) continue;
    ++four;
    const auto h = hamming_distance(o.x, o.y);
    EXPECT_LE(h, 1u);
    merged += h == 0;
  }
  // Merge iff the insertion coin succeeds, probability 1/2.
  EXPECT_NEAR(static_cast<double>(merged), four / 2.0, 3 * std::sqrt(four * 0.25));

  // Trivial group: accepted insertion leaves distance 2.
  const std::vector<Permutation> id{Permutation::identity(n)};
  std::size_t two = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto o = coupling_step(m, id, x, y, rng);
    if (o.which == CouplingCase::kBlockedByV) {
      const auto h = hamming_distance(o.x, o.y);
      EXPECT_TRUE(h == 1 || h == 2);
      two += h == 2;
    }
  }
  EXPECT_GT(two, 0u);
}

TEST(Coupling, Preconditions) {
  const IndependentSetModel m(gen_grid(3), 1.0);
  const auto elements = enumerate_group(automorphism_generators(m.graph()));
  Rng rng = make_rng(1);
  EXPECT_THROW(coupling_step(m, elements, parse_bitstring("000000000"), parse_bitstring("100000000"), rng),
               InvalidInput);
  EXPECT_THROW(coupling_step(m, elements, parse_bitstring("110000000"), parse_bitstring("100000000"), rng),
               InvalidInput);
  EXPECT_THROW(coupling_step(m, elements, parse_bitstring("101000000"), parse_bitstring("000000000"), rng),
               InvalidInput);
}

TEST(Coupling, MarginalsAreFaithful) {
  const IndependentSetModel m(gen_grid(3), 1.0);
  const auto group = automorphism_generators(m.graph());
  const auto elements = enumerate_group(group);
  const auto p = transition_matrix(m, ChainKind::kOrbitalInsertDelete, &group);
  Rng rng = make_rng(31);
  const Config x = parse_bitstring("100010000"), y = parse_bitstring("000010000");
  std::map<Config, std::size_t> cx, cy;
  const std::size_t trials = 100'000;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto o = coupling_step(m, elements, x, y, rng);
    ++cx[o.x];
    ++cy[o.y];
  }
  expect_counts_match_row(cx, trials, p, x);
  expect_counts_match_row(cy, trials, p, y);
}

TEST(Rho, Examples) {
  EXPECT_NEAR(exact_rho(complete_graph(5), automorphism_generators(complete_graph(5))), 0.0, 1e-12);
  EXPECT_NEAR(exact_rho(gen_grid(3), PermutationGroup::trivial(9)), 1.0, 1e-12);
  const double r4 = exact_rho(gen_grid(4), automorphism_generators(gen_grid(4)));
  EXPECT_LT(r4, 1.0);
  EXPECT_GT(r4, 0.0);
}

TEST(Rho, PathByHand) {
  // Path a-b-c with the reflection. Triples (X, v, w): X empty and
  // {v,w} in {ab, ba, bc, cb}. {a} and {b} never share an orbit: rho = 1.
  const auto g = orbital::testing::path_graph(3);
  EXPECT_NEAR(exact_rho(g, automorphism_generators(g)), 1.0, 1e-12);
}

TEST(Coupling, DriftInequality) {
  for (std::size_t k : {3, 4}) {
    const IndependentSetModel m(gen_grid(k), 1.0);
    const auto group = automorphism_generators(m.graph());
    Rng rng = make_rng(40 + k);
    const auto r = coupling_drift(m, group, k == 3 ? 100'000 : 20'000, rng);
    EXPECT_LE(r.expected_drift, r.bound + 3 * r.drift_se) << "k=" << k;
    EXPECT_EQ(r.diameter, k * k);
    EXPECT_GT(r.alpha, 0.0);
    EXPECT_NEAR(r.beta, 1.0 + r.expected_drift, 1e-15);
    std::size_t total = 0;
    for (auto c : r.case_counts) total += c;
    EXPECT_EQ(total, r.pairs_examined);
    std::ostringstream out;
    write_coupling_csv(r, out);
    EXPECT_EQ(out.str().rfind("case,count,rho,varrho,drift,bound\n", 0), 0u);
  }
}

TEST(Coupling, PairTermsByHand) {
  // K_3 under Sym(3): from X = {a}, Y = {}, every w != v is case (iv) with
  // rho = 0, so varrho = 2/3 and the bound is -1/3 + (2/3)(-1)(1/2).
  const IndependentSetModel m(complete_graph(3), 1.0);
  const auto elements = enumerate_group(automorphism_generators(m.graph()));
  const auto t = pair_coupling_terms(m, elements, parse_bitstring("100"), parse_bitstring("000"));
  EXPECT_NEAR(t.varrho, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(t.rho, 0.0, 1e-12);
  EXPECT_NEAR(t.drift_bound, -1.0 / 3.0 - 1.0 / 3.0, 1e-12);
}

TEST(Csv, MatrixAndDistribution) {
  const auto pi = exact_pi_lambda(orbital::testing::path_graph(2), 1.0);
  std::ostringstream d;
  write_distribution_csv(pi, d);
  EXPECT_EQ(d.str().rfind("state,prob\n00,", 0), 0u);
  const IndependentSetModel m(orbital::testing::path_graph(2), 1.0);
  std::ostringstream p;
  write_matrix_csv(transition_matrix(m, ChainKind::kInsertDelete), p);
  EXPECT_EQ(p.str().rfind("from,00,10,01\n", 0), 0u);
}
