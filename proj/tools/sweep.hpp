#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace xorsat::cli {

enum class Problem { kOcc1in3, kOcc2in4, kCustom };

struct SweepConfig {
  Problem problem = Problem::kOcc1in3;
  std::size_t p = 3;
  std::size_t q = 1;
  std::vector<std::size_t> n_list;
  double alpha = 1.0;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  double negation_prob = 0.5;
  std::size_t perm_trials = 100;
  std::size_t threads = 1;
  /// Fill the wall_time_ms column. Off by default so reruns are byte-identical.
  bool timing = false;

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
  std::size_t clauses_for(std::size_t n) const;
};

/// Seed of one ensemble member, a pure function of (base, n, sample).
std::uint64_t sample_seed(std::uint64_t base, std::size_t n, std::size_t sample);

enum class SampleStatus { kOk, kXorInfeasible, kGenerationFailure, kGuardExceeded };

const char* to_string(SampleStatus s);

struct SweepRecord {
  std::size_t n = 0;
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  SampleStatus status = SampleStatus::kOk;
  std::size_t m = 0;
  std::size_t m_prime = 0;
  std::size_t k = 0;
  std::size_t delta_k = 0;
  // Tree sweep only.
  std::uint64_t solutions = 0;
  std::uint64_t tree_nodes_base = 0;
  std::uint64_t tree_nodes = 0;
  double wall_time_ms = 0.0;

  bool has_kernel() const {
    return status == SampleStatus::kOk || status == SampleStatus::kXorInfeasible ||
           status == SampleStatus::kGuardExceeded;
  }
};

struct KernelSummary {
  std::size_t n = 0;
  std::size_t used = 0;
  std::size_t failures = 0;
  double dk_over_n_mean = 0.0;
  double dk_over_n_min = 0.0;
  double dk_over_n_max = 0.0;
  std::size_t delta_k_max = 0;
};

struct TreeSummary {
  std::size_t n = 0;
  std::size_t used = 0;
  std::size_t skipped = 0;
  double mean_sqrt_t = 0.0;
  double gamma = 0.0;
  double gamma_base = 0.0;
  std::size_t k_max = 0;
  /// (k_max + 1) / (2n), the value of gamma if every tree were full.
  double gamma_ceiling = 0.0;
};

/// Rank statistics of the parity relaxation for each (n, sample). Samples
/// whose generation fails are recorded with that status.
std::vector<SweepRecord> run_kernel_sweep(const SweepConfig& config);
std::vector<KernelSummary> summarize_kernel(const SweepConfig& config,
                                            const std::vector<SweepRecord>& records);

/// Backtracking tree sizes, before and after optimize_permutation, for each
/// (n, sample). Instances are not filtered for satisfiability; parity-
/// infeasible ones contribute T = 0.
std::vector<SweepRecord> run_tree_sweep(const SweepConfig& config);
std::vector<TreeSummary> summarize_tree(const SweepConfig& config,
                                        const std::vector<SweepRecord>& records);

void write_kernel_csv(std::ostream& out, const SweepConfig& config,
                      const std::vector<SweepRecord>& records);
void write_tree_csv(std::ostream& out, const SweepConfig& config,
                    const std::vector<SweepRecord>& records);

std::string csv_header_comment();

}  // namespace xorsat::cli
