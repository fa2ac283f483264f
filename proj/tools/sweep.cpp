#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include "version.hpp"
#include "xorsat/errors.hpp"
#include "xorsat/instance.hpp"
#include "xorsat/reduction.hpp"
#include "xorsat/solvers.hpp"

namespace xorsat::cli {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
// handled exactly once and writes only its own slot, so the caller's result
// order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        fn(i);
      }
    });
  }
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config,
                                   void (*measure)(const SweepConfig&, const Instance&, SweepRecord&)) {
  config.validate();
  std::vector<SweepRecord> records(config.n_list.size() * config.samples);
  parallel_for(records.size(), config.threads, [&](std::size_t idx) {
    SweepRecord& rec = records[idx];
    rec.n = config.n_list[idx / config.samples];
    rec.sample = idx % config.samples;
    rec.seed = sample_seed(config.seed, rec.n, rec.sample);
    rec.m = config.clauses_for(rec.n);
    const auto start = std::chrono::steady_clock::now();
    try {
      const Instance inst =
          gen_locked_random(rec.n, rec.m, config.p, config.q, config.negation_prob, rec.seed);
      measure(config, inst, rec);
    } catch (const GenerationFailure&) {
      rec.status = SampleStatus::kGenerationFailure;
    }
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    rec.wall_time_ms = elapsed.count();
  });
  return records;
}

void fill_rank(const Instance& inst, SweepRecord& rec) {
  const LinearSystem sys = build_linear_system(inst);
  rec.m_prime = rank(sys.a);
  rec.k = rec.n - rec.m_prime;
  rec.delta_k = rec.m - rec.m_prime;
}

void measure_kernel(const SweepConfig&, const Instance& inst, SweepRecord& rec) {
  fill_rank(inst, rec);
  const LinearSystem sys = build_linear_system(inst);
  rec.status = solve_particular(sys.a, sys.b) ? SampleStatus::kOk : SampleStatus::kXorInfeasible;
}

void measure_tree(const SweepConfig& config, const Instance& inst, SweepRecord& rec) {
  fill_rank(inst, rec);
  const ReduceResult rr = reduce(inst);
  if (std::holds_alternative<XorInfeasible>(rr)) {
    rec.status = SampleStatus::kXorInfeasible;
    return;
  }
  const Reduction& r = std::get<Reduction>(rr);
  if (r.k() > kEnumerateMaxK) {
    rec.status = SampleStatus::kGuardExceeded;
    return;
  }
  const auto [count, base] = backtrack_count(inst, r);
  const Reduction opt = optimize_permutation(inst, r, config.perm_trials, rec.seed);
  const auto [count_opt, tuned] = backtrack_count(inst, opt);
  if (count != count_opt) {
    throw std::logic_error("solution count changed under permutation");
  }
  rec.solutions = count;
  rec.tree_nodes_base = base.total_nodes;
  rec.tree_nodes = tuned.total_nodes;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string timing_cell(const SweepConfig& config, const SweepRecord& rec) {
  return config.timing ? fmt(rec.wall_time_ms) : std::string{};
}

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::kOcc1in3: return "occ1in3";
    case Problem::kOcc2in4: return "occ2in4";
    case Problem::kCustom: return "custom";
  }
  return "?";
}

void write_preamble(std::ostream& out, const SweepConfig& config, const char* sweep) {
  out << csv_header_comment() << '\n'
      << "# sweep=" << sweep << " problem=" << problem_name(config.problem) << " p=" << config.p
      << " q=" << config.q << " alpha=" << fmt(config.alpha) << " samples=" << config.samples
      << " seed=" << config.seed << " negation_prob=" << fmt(config.negation_prob);
  if (std::string_view(sweep) == "tree") {
    out << " perm_trials=" << config.perm_trials;
  }
  out << '\n';
}

}  // namespace

void SweepConfig::validate() const {
  if (samples < 1) {
    throw std::invalid_argument("samples must be at least 1");
  }
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("alpha must be positive");
  }
  if (n_list.empty()) {
    throw std::invalid_argument("n list must not be empty");
  }
  if (perm_trials < 1) {
    throw std::invalid_argument("perm-trials must be at least 1");
  }
  if (q < 1 || q > p) {
    throw std::invalid_argument("need 1 <= q <= p");
  }
}

std::size_t SweepConfig::clauses_for(std::size_t n) const {
  return static_cast<std::size_t>(std::llround(alpha * static_cast<double>(n)));
}

std::uint64_t sample_seed(std::uint64_t base, std::size_t n, std::size_t sample) {
  return splitmix64(splitmix64(splitmix64(base) ^ n) ^ sample);
}

const char* to_string(SampleStatus s) {
  switch (s) {
    case SampleStatus::kOk: return "ok";
    case SampleStatus::kXorInfeasible: return "xor_infeasible";
    case SampleStatus::kGenerationFailure: return "generation_failure";
    case SampleStatus::kGuardExceeded: return "guard_exceeded";
  }
  return "?";
}

std::string csv_header_comment() { return std::string("# xorsat-reduce v") + kVersion + " schema=1"; }

std::vector<SweepRecord> run_kernel_sweep(const SweepConfig& config) {
  return run_sweep(config, &measure_kernel);
}

std::vector<SweepRecord> run_tree_sweep(const SweepConfig& config) {
  return run_sweep(config, &measure_tree);
}

std::vector<KernelSummary> summarize_kernel(const SweepConfig& config,
                                            const std::vector<SweepRecord>& records) {
  std::vector<KernelSummary> out;
  for (std::size_t n : config.n_list) {
    KernelSummary s;
    s.n = n;
    s.dk_over_n_min = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& rec : records) {
      if (rec.n != n) {
        continue;
      }
      if (!rec.has_kernel()) {
        ++s.failures;
        continue;
      }
      const double ratio = static_cast<double>(rec.delta_k) / static_cast<double>(n);
      ++s.used;
      sum += ratio;
      s.dk_over_n_min = std::min(s.dk_over_n_min, ratio);
      s.dk_over_n_max = std::max(s.dk_over_n_max, ratio);
      s.delta_k_max = std::max(s.delta_k_max, rec.delta_k);
    }
    if (s.used > 0) {
      s.dk_over_n_mean = sum / static_cast<double>(s.used);
    } else {
      s.dk_over_n_min = 0.0;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<TreeSummary> summarize_tree(const SweepConfig& config,
                                        const std::vector<SweepRecord>& records) {
  std::vector<TreeSummary> out;
  for (std::size_t n : config.n_list) {
    TreeSummary s;
    s.n = n;
    std::vector<std::uint64_t> tuned;
    std::vector<std::uint64_t> base;
    for (const auto& rec : records) {
      if (rec.n != n) {
        continue;
      }
      if (rec.status != SampleStatus::kOk && rec.status != SampleStatus::kXorInfeasible) {
        ++s.skipped;
        continue;
      }
      tuned.push_back(rec.tree_nodes);
      base.push_back(rec.tree_nodes_base);
      if (rec.status == SampleStatus::kOk) {
        s.k_max = std::max(s.k_max, rec.k);
      }
    }
    s.used = tuned.size();
    if (!tuned.empty()) {
      double sum = 0.0;
      for (std::uint64_t t : tuned) {
        sum += std::sqrt(static_cast<double>(t));
      }
      s.mean_sqrt_t = sum / static_cast<double>(tuned.size());
      s.gamma = gamma_estimate(tuned, n);
      s.gamma_base = gamma_estimate(base, n);
    }
    s.gamma_ceiling = static_cast<double>(s.k_max + 1) / (2.0 * static_cast<double>(n));
    out.push_back(s);
  }
  return out;
}

void write_kernel_csv(std::ostream& out, const SweepConfig& config,
                      const std::vector<SweepRecord>& records) {
  write_preamble(out, config, "kernel");
  out << "row,n,sample,seed,status,M,m_prime,k,delta_k,dk_over_n,wall_time_ms,"
         "used,failures,dk_over_n_mean,dk_over_n_min,dk_over_n_max,delta_k_max\n";
  const auto summaries = summarize_kernel(config, records);
  for (const auto& s : summaries) {
    for (const auto& rec : records) {
      if (rec.n != s.n) {
        continue;
      }
      out << "sample," << rec.n << ',' << rec.sample << ',' << rec.seed << ','
          << to_string(rec.status) << ',' << rec.m << ',';
      if (rec.has_kernel()) {
        out << rec.m_prime << ',' << rec.k << ',' << rec.delta_k << ','
            << fmt(static_cast<double>(rec.delta_k) / static_cast<double>(rec.n));
      } else {
        out << ",,,";
      }
      out << ',' << timing_cell(config, rec) << ",,,,,,\n";
    }
    out << "summary," << s.n << ",,,,,,,,,," << s.used << ',' << s.failures << ','
        << fmt(s.dk_over_n_mean) << ',' << fmt(s.dk_over_n_min) << ',' << fmt(s.dk_over_n_max)
        << ',' << s.delta_k_max << '\n';
  }
}

void write_tree_csv(std::ostream& out, const SweepConfig& config,
                    const std::vector<SweepRecord>& records) {
  write_preamble(out, config, "tree");
  out << "row,n,sample,seed,status,M,m_prime,k,delta_k,V,T_base,T,sqrt_T,wall_time_ms,"
         "used,skipped,mean_sqrt_T,gamma,gamma_base,k_max,gamma_ceiling\n";
  const auto summaries = summarize_tree(config, records);
  for (const auto& s : summaries) {
    for (const auto& rec : records) {
      if (rec.n != s.n) {
        continue;
      }
      out << "sample," << rec.n << ',' << rec.sample << ',' << rec.seed << ','
          << to_string(rec.status) << ',' << rec.m << ',';
      if (rec.has_kernel()) {
        out << rec.m_prime << ',' << rec.k << ',' << rec.delta_k << ',';
      } else {
        out << ",,,";
      }
      if (rec.status == SampleStatus::kOk || rec.status == SampleStatus::kXorInfeasible) {
        out << rec.solutions << ',' << rec.tree_nodes_base << ',' << rec.tree_nodes << ','
            << fmt(std::sqrt(static_cast<double>(rec.tree_nodes)));
      } else {
        out << ",,,";
      }
      out << ',' << timing_cell(config, rec) << ",,,,,,,\n";
    }
    out << "summary," << s.n << ",,,,,,,,,,,,," << s.used << ',' << s.skipped << ','
        << fmt(s.mean_sqrt_t) << ',' << fmt(s.gamma) << ',' << fmt(s.gamma_base) << ','
        << s.k_max << ',' << fmt(s.gamma_ceiling) << '\n';
  }
}

}  // namespace xorsat::cli
