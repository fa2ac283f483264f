#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "xorsat/instance.hpp"
#include "xorsat/reduction.hpp"

namespace xorsat {

struct SolveOutcome {
  /// Present iff the instance is satisfiable; always a verified solution.
  std::optional<Assignment> solution;
  /// Full-assignment oracle evaluations (classical checks or Grover queries).
  std::uint64_t queries = 0;
  /// Unsat was certified by the parity relaxation; `witness` lists the clauses.
  bool xor_certified = false;
  std::vector<std::size_t> witness;

  bool sat() const noexcept { return solution.has_value(); }
};

/// Decision-tree size: total_nodes == sum(nodes_per_depth); the root is
/// depth 0 and always counted once a tree is built.
struct TreeStats {
  std::uint64_t total_nodes = 0;
  std::vector<std::uint64_t> nodes_per_depth;
};

inline constexpr std::size_t kEnumerateMaxK = 30;

/// Checks x(v) for v in lexicographic order and stops at the first solution.
/// Throws GuardExceeded when k > kEnumerateMaxK.
SolveOutcome solve_enumerate(const Instance& i);
/// Exact number of solutions, by enumerating the reduced space.
std::uint64_t count_enumerate(const Instance& i);

/// Called with the free-variable prefix (v'_0..v'_{d-1}) of each pruned node.
using PruneObserver = std::function<void(std::span<const std::uint8_t> prefix)>;

/// Depth-first search over the standard-form free variables in index order,
/// branch 0 before 1. A dependent coordinate becomes known once every free
/// variable in its row of H is fixed; a node is cut as soon as some clause
/// is violated under the partial assignment.
std::pair<SolveOutcome, TreeStats> backtrack_solve(const Instance& i, const Reduction& r,
                                                   const PruneObserver& on_prune = {});
std::pair<std::uint64_t, TreeStats> backtrack_count(const Instance& i, const Reduction& r,
                                                    const PruneObserver& on_prune = {});

/// Reduce-then-backtrack. Parity-infeasible instances yield an empty tree.
std::pair<SolveOutcome, TreeStats> backtrack_solve(const Instance& i);
std::pair<std::uint64_t, TreeStats> backtrack_count(const Instance& i);

/// Number of clauses touching at least one head (free) variable.
std::size_t permutation_score(const Instance& i, const StandardForm& sf);

/// Random-restart hill climbing over head choices, maximizing
/// permutation_score. Restart 0 starts from the input head; later restarts
/// from a random information set. Moves exchange a head coordinate with a
/// dependent one whose H entry is 1. The winning head is then ordered so
/// that clauses become fully determined as early as possible, which fixes
/// the branching order of backtracking. Never returns a lower score than the
/// input, and never changes the solution space.
Reduction optimize_permutation(const Instance& i, const Reduction& r, std::size_t trials,
                               std::uint64_t seed);

/// (1/n) log2(mean sqrt(T)). Throws std::invalid_argument on an empty list or n = 0.
double gamma_estimate(std::span<const std::uint64_t> tree_sizes, std::size_t n);

}  // namespace xorsat
