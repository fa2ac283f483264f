#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xorsat/gf2.hpp"
#include "xorsat/instance.hpp"

namespace xorsat {

/// Simple undirected graph.
struct Graph {
  using Edge = std::pair<std::size_t, std::size_t>;

  std::size_t n_nodes = 0;
  std::vector<Edge> edges;

  std::vector<std::size_t> degrees() const;
  std::vector<std::vector<std::size_t>> adjacency() const;
  std::size_t max_degree() const;
  /// Throws std::invalid_argument on self-loops, duplicate edges or
  /// out-of-range endpoints.
  void validate() const;

  friend bool operator==(const Graph&, const Graph&) = default;
};

using EdgeAssignment = BinVec;

/// DIMACS-style text: `p edge <n> <m>` then `e <u> <v>` lines (1-based);
/// lines starting with `c` are comments. Throws ParseError.
Graph parse_graph(std::string_view text);
std::string emit_graph(const Graph& g);

std::size_t connected_components(const Graph& g);

/// One variable per edge (in edge order) and one clause per node over its
/// incident edges with q = 2 and no negations. Nodes of degree < 2 still get
/// their clause, which is then unsatisfiable.
Instance hc_to_occupation(const Graph& g);

/// GF(2) rank of the node-edge incidence matrix; n - (number of components).
std::size_t hc_rank_check(const Graph& g);

/// True iff the selected edges form a single cycle through every node.
bool is_hamiltonian_cycle(const Graph& g, const EdgeAssignment& e);

/// Enumerates the reduced space of the degree-2 instance and returns the
/// first member that is a Hamiltonian cycle. Throws GuardExceeded when the
/// reduced dimension exceeds kEnumerateMaxK.
std::optional<EdgeAssignment> solve_hc(const Graph& g);

/// k / 2 with k = |E| - rank of the incidence matrix.
double hc_cost_exponent(const Graph& g);

inline constexpr std::size_t kBruteForceMaxNodes = 12;

/// Number of distinct undirected Hamiltonian cycles (rotations and
/// reflections identified), by path enumeration from node 0. Graphs with
/// fewer than 3 nodes have none. Throws GuardExceeded above
/// kBruteForceMaxNodes nodes.
std::uint64_t brute_force_hc(const Graph& g);

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph petersen_graph();

/// Uniform-ish random connected simple 3-regular graph (pairing model with
/// rejection). n must be even and >= 4.
Graph random_cubic_graph(std::size_t n, std::uint64_t seed);
/// Random connected simple (3,3)-regular bipartite graph on n nodes (n/2 per
/// side), as a union of three random perfect matchings with rejection.
/// n must be even and >= 6.
Graph random_bipartite_cubic_graph(std::size_t n, std::uint64_t seed);
/// Erdos-Renyi G(n, p) conditioned on connectivity (by rejection).
Graph random_connected_graph(std::size_t n, double edge_prob, std::uint64_t seed);

}  // namespace xorsat
