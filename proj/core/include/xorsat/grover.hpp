#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "xorsat/instance.hpp"
#include "xorsat/reduction.hpp"
#include "xorsat/solvers.hpp"

namespace xorsat {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kGroverMaxK = 24;
inline constexpr double kAmplitudeTolerance = 1e-9;

/// Register of k qubits indexed by v (see v_from_index for the bit order).
class StateVector {
 public:
  /// Equal superposition over all 2^k basis states. Throws GuardExceeded
  /// when k > kGroverMaxK.
  static StateVector uniform(std::size_t k);

  std::size_t qubits() const noexcept { return k_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }

  double norm_squared() const noexcept;
  double probability(std::uint64_t index) const noexcept { return std::norm(amps_[index]); }
  /// Draws one basis index from the Born distribution.
  std::uint64_t sample(std::mt19937_64& rng) const;

 private:
  std::size_t k_ = 0;
  std::vector<Amplitude> amps_;
};

struct OracleSpec {
  Instance instance;
  Reduction reduction;
  /// Extra index accepted by the oracle regardless of the instance.
  std::optional<std::uint64_t> artificial_marked;
};

/// Phase oracle over the reduced space: flips the sign of |v> when
/// x(v) satisfies the instance, or v is the artificial mark. The marked set
/// is tabulated once at construction by classical evaluation of every x(v).
class PhaseOracle {
 public:
  explicit PhaseOracle(const OracleSpec& spec);
  /// Oracle marking an explicit index set, for analysis of the iteration
  /// independent of any instance.
  static PhaseOracle from_marked(std::size_t k, std::span<const std::uint64_t> marked);

  std::size_t qubits() const noexcept { return k_; }
  bool is_marked(std::uint64_t v) const noexcept { return flags_[v] != 0; }
  /// Marked because x(v) is a genuine solution (not only artificially).
  bool is_solution(std::uint64_t v) const noexcept { return (flags_[v] & kSolution) != 0; }
  std::span<const std::uint64_t> marked() const noexcept { return marked_; }
  std::size_t solution_count() const noexcept { return solutions_; }

  void apply(StateVector& s) const;

 private:
  static constexpr std::uint8_t kSolution = 1;
  static constexpr std::uint8_t kArtificial = 2;

  PhaseOracle() = default;

  std::size_t k_ = 0;
  std::vector<std::uint8_t> flags_;
  std::vector<std::uint64_t> marked_;
  std::size_t solutions_ = 0;
};

void apply_oracle(const PhaseOracle& oracle, StateVector& s);
/// Inversion about the mean: a_v <- 2 mean(a) - a_v.
void apply_diffusion(StateVector& s);
/// One oracle application followed by the diffusion.
void grover_iterate(const PhaseOracle& oracle, StateVector& s);

/// Total probability on marked indices.
double marked_probability(const PhaseOracle& oracle, const StateVector& s);

/// sin^2((2m+1) asin(sqrt(V/N))).
double grover_success_closed_form(std::uint64_t marked, std::uint64_t space, std::uint64_t m);

struct KnownSearchResult {
  std::uint64_t measured = 0;
  bool success = false;
  std::uint64_t iterations = 0;
};

/// floor((pi/4) sqrt(N/V)) iterations from the uniform state, then one
/// measurement. Throws std::invalid_argument unless 1 <= V <= N.
KnownSearchResult grover_search_known(const PhaseOracle& oracle, std::uint64_t marked_count,
                                      std::mt19937_64& rng);

struct GroverOptions {
  /// Growth factor of the iteration bound between rounds.
  double growth = 6.0 / 5.0;
  /// Rounds spent confirming that the artificial mark is the only marked
  /// index before Unsat is reported.
  std::size_t certification_rounds = 96;
  /// Safety cap on search rounds before the artificial mark is hit.
  std::size_t max_rounds = 100000;
};

/// Search with an unknown number of solutions. The oracle always accepts
/// v = 0 as well, so at least one index is marked. Each round draws an
/// iteration count uniformly below the current bound, measures, and checks
/// the outcome classically. Hitting a genuine solution returns Sat; hitting
/// the artificial mark starts certification rounds with the bound at
/// sqrt(N), and Unsat is returned only if none of them reveals a solution.
/// `queries` counts oracle applications.
SolveOutcome grover_search_unknown(const Instance& i, const Reduction& r, std::mt19937_64& rng,
                                   const GroverOptions& options = {});
/// Reduce first; parity-infeasible instances return certified Unsat with zero queries.
SolveOutcome grover_search_unknown(const Instance& i, std::mt19937_64& rng,
                                   const GroverOptions& options = {});

/// sqrt(2^(n - M')).
double query_cost_decision(std::size_t n, std::size_t m_prime);
/// sqrt(V 2^(n - M')).
double query_cost_count(std::size_t n, std::size_t m_prime, std::uint64_t solutions);

/// Gate and ancilla counts for the four-module oracle circuit.
///
/// Module I writes x(v) into an n-qubit register: one CNOT per set bit of
/// each kernel vector (controlled on v_i) and one X per set bit of xi_bar.
/// Module II checks each of the M clauses with clause_check_cost(p) gates:
/// p controlled operations loading the literals (negations folded in) and a
/// q-threshold comparator costing p + ceil(log2(p+1)). Module III increments
/// a ceil(log2(M+1))-qubit counter once per clause, ceil(log2(M+1)) gates
/// each. Module IV is a single multi-controlled phase on the counter.
///
/// All M clauses are checked, not only M' independent ones: dependent
/// parity rows still encode distinct occupation constraints.
struct ResourceReport {
  std::size_t ancillas = 0;
  std::size_t gates_module_i = 0;
  std::size_t gates_module_ii = 0;
  std::size_t gates_module_iii = 0;
  std::size_t gates_module_iv = 0;
  std::size_t total_gates = 0;
};

std::size_t clause_check_cost(std::size_t arity);
ResourceReport oracle_resources(const Instance& i, const Reduction& r);

/// Bound total_gates <= kGateBoundConstant * n^2, valid for n >= 8 and
/// instances with clause arity <= 4 and density M/n <= 1.5 (the locked
/// ensembles studied here).
inline constexpr double kGateBoundConstant = 4.0;

}  // namespace xorsat
