#include <gtest/gtest.h>

#include "oracles.hpp"
#include "xorsat/errors.hpp"
#include "xorsat/hamiltonian.hpp"
#include "xorsat/reduction.hpp"

namespace xorsat {
namespace {

Graph two_triangles() { return Graph{6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}}; }

TEST(HcToOccupation, CompleteGraphOnFourNodes) {
  const Graph k4 = complete_graph(4);
  const Instance inst = hc_to_occupation(k4);
  EXPECT_EQ(inst.n, 6U);
  ASSERT_EQ(inst.clauses.size(), 4U);
  for (const auto& c : inst.clauses) {
    EXPECT_EQ(c.q, 2U);
    EXPECT_EQ(c.arity(), 3U);
    EXPECT_EQ(c.negations(), 0U);
  }
  EXPECT_EQ(hc_rank_check(k4), 3U);
  EXPECT_DOUBLE_EQ(hc_cost_exponent(k4), 1.5);
  EXPECT_EQ(brute_force_hc(k4), 3U);
  EXPECT_EQ(testing::permutation_hc_count(k4), 3U);
}

TEST(HcToOccupation, HomogeneousParity) {
  const LinearSystem sys = build_linear_system(hc_to_occupation(petersen_graph()));
  EXPECT_TRUE(sys.b.none());
}

TEST(HcToOccupation, LowDegreeNodeKeepsUnsatisfiableClause) {
  const Graph path{3, {{0, 1}, {1, 2}}};
  const Instance inst = hc_to_occupation(path);
  ASSERT_EQ(inst.clauses.size(), 3U);
  EXPECT_EQ(inst.clauses[0].arity(), 1U);
  EXPECT_TRUE(brute_force_solutions(inst).empty());
  EXPECT_FALSE(solve_hc(path).has_value());
}

TEST(SolveHc, CycleHasUniqueSolution) {
  const Graph c5 = cycle_graph(5);
  EXPECT_EQ(hc_rank_check(c5), 4U);
  EXPECT_DOUBLE_EQ(hc_cost_exponent(c5), 0.5);
  const auto sol = solve_hc(c5);
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(sol->to_string(), "11111");
  EXPECT_EQ(brute_force_solutions(hc_to_occupation(c5)).size(), 1U);
}

TEST(SolveHc, DisconnectedGraphHasNone) {
  const Graph g = two_triangles();
  EXPECT_EQ(connected_components(g), 2U);
  EXPECT_EQ(hc_rank_check(g), 4U);
  EXPECT_FALSE(solve_hc(g).has_value());
  EXPECT_EQ(brute_force_hc(g), 0U);
  EXPECT_FALSE(is_hamiltonian_cycle(g, BinVec::from_string("111111")));
  // Every node has degree two under the all-ones assignment, yet it is two cycles.
  EXPECT_TRUE(eval_instance(hc_to_occupation(g), BinVec::from_string("111111")));
}

TEST(SolveHc, PetersenHasNoHamiltonianCycle) {
  const Graph g = petersen_graph();
  EXPECT_EQ(g.edges.size(), 15U);
  EXPECT_EQ(testing::permutation_hc_count(g), 0U);
  EXPECT_EQ(brute_force_hc(g), 0U);
  EXPECT_FALSE(solve_hc(g).has_value());
  EXPECT_DOUBLE_EQ(hc_cost_exponent(g), 3.0);
}

TEST(SolveHc, AgreesWithPermutationOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 5 + seed % 5;
    const Graph g = random_connected_graph(n, 0.5, seed);
    const std::uint64_t truth = testing::permutation_hc_count(g);
    EXPECT_EQ(brute_force_hc(g), truth);
    const auto sol = solve_hc(g);
    EXPECT_EQ(sol.has_value(), truth > 0);
    if (sol) {
      EXPECT_TRUE(is_hamiltonian_cycle(g, *sol));
    }
    EXPECT_EQ(hc_rank_check(g), rank(build_linear_system(hc_to_occupation(g)).a));
  }
}

TEST(IsHamiltonianCycle, Examples) {
  const Graph k4 = complete_graph(4);
  // Edge order of K4: 01 02 03 12 13 23.
  EXPECT_TRUE(is_hamiltonian_cycle(k4, BinVec::from_string("101101")));
  EXPECT_FALSE(is_hamiltonian_cycle(k4, BinVec::from_string("111000")));
  EXPECT_FALSE(is_hamiltonian_cycle(Graph{2, {{0, 1}}}, BinVec::from_string("1")));
}

TEST(Generators, CubicGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 8 + 2 * (seed % 6);
    const Graph g = random_cubic_graph(n, seed);
    EXPECT_NO_THROW(g.validate());
    EXPECT_EQ(connected_components(g), 1U);
    for (std::size_t d : g.degrees()) {
      EXPECT_EQ(d, 3U);
    }
    EXPECT_EQ(g, random_cubic_graph(n, seed));
    // Connected with an odd cycle somewhere or not, k = 3n/2 - rank.
    const std::size_t rank_value = hc_rank_check(g);
    EXPECT_EQ(rank_value, n - 1);
    EXPECT_DOUBLE_EQ(hc_cost_exponent(g), (1.5 * static_cast<double>(n) - static_cast<double>(n - 1)) / 2.0);

    const Graph b = random_bipartite_cubic_graph(n, seed);
    EXPECT_NO_THROW(b.validate());
    EXPECT_EQ(connected_components(b), 1U);
    for (const auto& [u, v] : b.edges) {
      EXPECT_NE(u < n / 2, v < n / 2);
    }
  }
  EXPECT_THROW(random_cubic_graph(7, 1), std::invalid_argument);
}

TEST(GraphText, RoundTripAndErrors) {
  const Graph g = petersen_graph();
  EXPECT_EQ(parse_graph(emit_graph(g)), g);
  EXPECT_EQ(parse_graph("c tri\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"),
            (Graph{3, {{0, 1}, {1, 2}, {0, 2}}}));
  EXPECT_THROW(parse_graph("p edge 3 1\ne 1 4\n"), ParseError);
  EXPECT_THROW(parse_graph("p edge 3 1\ne 2 2\n"), ParseError);
  EXPECT_THROW(parse_graph("p edge 3 2\ne 1 2\n"), ParseError);
}

TEST(BruteForceHc, Guard) {
  EXPECT_THROW(brute_force_hc(complete_graph(kBruteForceMaxNodes + 1)), GuardExceeded);
  EXPECT_EQ(brute_force_hc(complete_graph(5)), 12U);
  EXPECT_EQ(brute_force_hc(complete_graph(6)), 60U);
}

}  // namespace
}  // namespace xorsat
