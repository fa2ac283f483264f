#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xorsat/gf2.hpp"

namespace xorsat {

struct Literal {
  std::size_t var = 0;
  bool negated = false;

  bool value_under(bool var_value) const noexcept { return var_value != negated; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Occupation constraint: exactly `q` of the literals must be true.
///
/// Clauses built by the parser and the random generators satisfy
/// 1 <= q <= literals.size(). Programmatic constructions (the Hamiltonian
/// cycle reduction on nodes of degree < 2) may carry q above the arity; such
/// a clause is unsatisfiable and evaluates accordingly.
struct Clause {
  std::vector<Literal> literals;
  std::size_t q = 1;

  std::size_t arity() const noexcept { return literals.size(); }
  /// Number of negated literals.
  std::size_t negations() const noexcept;
  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Instance {
  std::size_t n = 0;
  std::vector<Clause> clauses;

  std::size_t num_clauses() const noexcept { return clauses.size(); }
  /// Clause density M / n (0 for n = 0).
  double alpha() const noexcept;
  /// Number of clauses each variable occurs in.
  std::vector<std::size_t> degrees() const;
  /// Every variable occurs in at least two clauses.
  bool is_locked() const;
  /// Throws std::invalid_argument on out-of-range or repeated variables, or
  /// on q = 0.
  void validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

using Assignment = BinVec;

enum class Tri : std::uint8_t { kFalse, kTrue, kUnknown };

/// Per-variable value in {0, 1, indeterminate}.
using PartialAssignment = std::vector<Tri>;

enum class ClauseStatus { kSatisfied, kViolated, kIndeterminate };

/// Throws std::out_of_range if the clause references a variable beyond `a`.
bool eval_clause(const Clause& c, const Assignment& a);
/// Throws std::invalid_argument if a.size() != i.n.
bool eval_instance(const Instance& i, const Assignment& a);

/// Violated when no completion of the indeterminate variables reaches exactly
/// q true literals, Satisfied when every completion does.
ClauseStatus eval_clause_partial(const Clause& c, std::span<const Tri> p);

/// Status from literal counts: `known_true` determinately true literals and
/// `unknown` indeterminate ones.
constexpr ClauseStatus clause_status(std::size_t q, std::size_t known_true,
                                     std::size_t unknown) noexcept {
  if (known_true > q || known_true + unknown < q) {
    return ClauseStatus::kViolated;
  }
  if (unknown == 0) {
    return ClauseStatus::kSatisfied;
  }
  return ClauseStatus::kIndeterminate;
}

struct GeneratorParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t p = 3;
  std::size_t q = 1;
  double negation_prob = 0.5;
  /// Minimum number of clauses per variable; 2 gives locked instances.
  std::size_t min_degree = 2;
  std::size_t max_restarts = 100;
};

/// Random instance of `m` clauses, each over `p` distinct uniformly chosen
/// variables, repaired so every variable reaches `min_degree`. Deterministic
/// in `seed`. Throws GenerationFailure if p*m < min_degree*n, if p > n, or
/// if the repair does not converge within `max_restarts` restarts.
Instance generate_random(const GeneratorParams& params, std::uint64_t seed);

Instance gen_locked_random(std::size_t n, std::size_t m, std::size_t p, std::size_t q,
                           double negation_prob, std::uint64_t seed);

inline constexpr std::size_t kBruteForceMaxVars = 24;

/// All satisfying assignments in lexicographic order (x_0 most significant).
/// Throws GuardExceeded above kBruteForceMaxVars variables.
std::vector<Assignment> brute_force_solutions(const Instance& i);

/// Parses the line-oriented occupation format:
///
///   c <comment>
///   p occ <n> <M> <q_default>
///   [q=<int>] <signed 1-based literal>... 0
///
/// Throws ParseError carrying the offending line number.
Instance parse_instance(std::string_view text);

/// Writes the format read by parse_instance. The header's q_default is the
/// most frequent clause q (smallest on ties, 1 for an empty instance); other
/// clauses get an explicit q= prefix.
std::string emit_instance(const Instance& i);

}  // namespace xorsat
