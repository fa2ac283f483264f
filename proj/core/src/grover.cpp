#include "xorsat/grover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "xorsat/errors.hpp"

namespace xorsat {

StateVector StateVector::uniform(std::size_t k) {
  if (k > kGroverMaxK) {
    throw GuardExceeded("simulated qubits k", k, kGroverMaxK);
  }
  StateVector s;
  s.k_ = k;
  const std::size_t size = std::size_t{1} << k;
  s.amps_.assign(size, Amplitude(1.0 / std::sqrt(static_cast<double>(size)), 0.0));
  return s;
}

double StateVector::norm_squared() const noexcept {
  double total = 0.0;
  for (const auto& a : amps_) {
    total += std::norm(a);
  }
  return total;
}

std::uint64_t StateVector::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double target = unit(rng) * norm_squared();
  double acc = 0.0;
  for (std::uint64_t v = 0; v < amps_.size(); ++v) {
    acc += std::norm(amps_[v]);
    if (acc > target) {
      return v;
    }
  }
  // Rounding left target at the very top; return the last non-zero entry.
  for (std::uint64_t v = amps_.size(); v-- > 0;) {
    if (std::norm(amps_[v]) > 0.0) {
      return v;
    }
  }
  return 0;
}

PhaseOracle::PhaseOracle(const OracleSpec& spec) : k_(spec.reduction.k()) {
  if (k_ > kGroverMaxK) {
    throw GuardExceeded("simulated qubits k", k_, kGroverMaxK);
  }
  const std::uint64_t size = std::uint64_t{1} << k_;
  flags_.assign(size, 0);
  AffineWalker walker(spec.reduction);
  do {
    if (eval_instance(spec.instance, walker.current())) {
      flags_[walker.index()] |= kSolution;
      ++solutions_;
    }
  } while (walker.next());
  if (spec.artificial_marked) {
    if (*spec.artificial_marked >= size) {
      throw std::invalid_argument("PhaseOracle: artificial mark outside the reduced space");
    }
    flags_[*spec.artificial_marked] |= kArtificial;
  }
  for (std::uint64_t v = 0; v < size; ++v) {
    if (flags_[v] != 0) {
      marked_.push_back(v);
    }
  }
}

PhaseOracle PhaseOracle::from_marked(std::size_t k, std::span<const std::uint64_t> marked) {
  if (k > kGroverMaxK) {
    throw GuardExceeded("simulated qubits k", k, kGroverMaxK);
  }
  PhaseOracle o;
  o.k_ = k;
  o.flags_.assign(std::size_t{1} << k, 0);
  for (std::uint64_t v : marked) {
    if (v >= o.flags_.size()) {
      throw std::invalid_argument("PhaseOracle::from_marked: index outside the space");
    }
    if (o.flags_[v] == 0) {
      ++o.solutions_;
    }
    o.flags_[v] = kSolution;
  }
  for (std::uint64_t v = 0; v < o.flags_.size(); ++v) {
    if (o.flags_[v] != 0) {
      o.marked_.push_back(v);
    }
  }
  return o;
}

void PhaseOracle::apply(StateVector& s) const {
  if (s.qubits() != k_) {
    throw std::invalid_argument("PhaseOracle: register size mismatch");
  }
  auto amps = s.amplitudes();
  for (std::uint64_t v : marked_) {
    amps[v] = -amps[v];
  }
}

void apply_oracle(const PhaseOracle& oracle, StateVector& s) { oracle.apply(s); }

void apply_diffusion(StateVector& s) {
  auto amps = s.amplitudes();
  const Amplitude sum = std::accumulate(amps.begin(), amps.end(), Amplitude(0.0, 0.0));
  const Amplitude twice_mean = 2.0 * sum / static_cast<double>(amps.size());
  for (auto& a : amps) {
    a = twice_mean - a;
  }
}

void grover_iterate(const PhaseOracle& oracle, StateVector& s) {
  apply_oracle(oracle, s);
  apply_diffusion(s);
}

double marked_probability(const PhaseOracle& oracle, const StateVector& s) {
  double p = 0.0;
  for (std::uint64_t v : oracle.marked()) {
    p += s.probability(v);
  }
  return p;
}

double grover_success_closed_form(std::uint64_t marked, std::uint64_t space, std::uint64_t m) {
  const double theta =
      std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(space)));
  const double s = std::sin(static_cast<double>(2 * m + 1) * theta);
  return s * s;
}

KnownSearchResult grover_search_known(const PhaseOracle& oracle, std::uint64_t marked_count,
                                      std::mt19937_64& rng) {
  const std::uint64_t space = std::uint64_t{1} << oracle.qubits();
  if (marked_count == 0 || marked_count > space) {
    throw std::invalid_argument("grover_search_known: need 1 <= V <= 2^k");
  }
  KnownSearchResult out;
  out.iterations = static_cast<std::uint64_t>(
      std::floor(std::numbers::pi / 4.0 *
                 std::sqrt(static_cast<double>(space) / static_cast<double>(marked_count))));
  StateVector s = StateVector::uniform(oracle.qubits());
  for (std::uint64_t m = 0; m < out.iterations; ++m) {
    grover_iterate(oracle, s);
  }
  out.measured = s.sample(rng);
  out.success = oracle.is_marked(out.measured);
  return out;
}

namespace {

// One amplitude-amplification round with an iteration count drawn uniformly
// from [0, ceil(bound)); returns the measured index.
std::uint64_t random_round(const PhaseOracle& oracle, double bound, std::mt19937_64& rng,
                           std::uint64_t& queries) {
  const auto limit = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(bound)));
  std::uniform_int_distribution<std::uint64_t> pick(0, limit - 1);
  const std::uint64_t iterations = pick(rng);
  StateVector s = StateVector::uniform(oracle.qubits());
  for (std::uint64_t m = 0; m < iterations; ++m) {
    grover_iterate(oracle, s);
  }
  queries += iterations;
  return s.sample(rng);
}

}  // namespace

SolveOutcome grover_search_unknown(const Instance& i, const Reduction& r, std::mt19937_64& rng,
                                   const GroverOptions& options) {
  if (r.k() > kGroverMaxK) {
    throw GuardExceeded("simulated qubits k", r.k(), kGroverMaxK);
  }
  constexpr std::uint64_t kArtificialIndex = 0;
  const PhaseOracle oracle(OracleSpec{i, r, kArtificialIndex});
  const double sqrt_space = std::sqrt(static_cast<double>(std::uint64_t{1} << r.k()));

  SolveOutcome out;
  // Classical check of a measured index; true when it is a genuine solution.
  auto verify = [&](std::uint64_t v) {
    Assignment x = expand(r, v_from_index(v, r.k()));
    if (eval_instance(i, x)) {
      out.solution = std::move(x);
      return true;
    }
    return false;
  };

  double bound = 1.0;
  bool artificial_hit = false;
  for (std::size_t round = 0; round < options.max_rounds; ++round) {
    const std::uint64_t v = random_round(oracle, bound, rng, out.queries);
    if (verify(v)) {
      return out;
    }
    if (v == kArtificialIndex) {
      artificial_hit = true;
      break;
    }
    bound = std::min(options.growth * bound, sqrt_space);
  }
  if (!artificial_hit) {
    throw std::runtime_error("grover_search_unknown: no marked index found within round cap");
  }
  for (std::size_t round = 0; round < options.certification_rounds; ++round) {
    if (verify(random_round(oracle, sqrt_space, rng, out.queries))) {
      return out;
    }
  }
  return out;
}

SolveOutcome grover_search_unknown(const Instance& i, std::mt19937_64& rng,
                                   const GroverOptions& options) {
  const ReduceResult rr = reduce(i);
  if (const auto* bad = std::get_if<XorInfeasible>(&rr)) {
    SolveOutcome out;
    out.xor_certified = true;
    out.witness = bad->witness;
    return out;
  }
  return grover_search_unknown(i, std::get<Reduction>(rr), rng, options);
}

double query_cost_decision(std::size_t n, std::size_t m_prime) {
  if (m_prime > n) {
    throw std::invalid_argument("query_cost_decision: M' exceeds n");
  }
  return std::exp2(static_cast<double>(n - m_prime) / 2.0);
}

double query_cost_count(std::size_t n, std::size_t m_prime, std::uint64_t solutions) {
  if (m_prime > n) {
    throw std::invalid_argument("query_cost_count: M' exceeds n");
  }
  const double space = std::exp2(static_cast<double>(n - m_prime));
  if (static_cast<double>(solutions) > space) {
    throw std::invalid_argument("query_cost_count: V exceeds 2^(n - M')");
  }
  return std::sqrt(static_cast<double>(solutions) * space);
}

std::size_t clause_check_cost(std::size_t arity) {
  return 2 * arity + static_cast<std::size_t>(std::bit_width(arity));
}

ResourceReport oracle_resources(const Instance& i, const Reduction& r) {
  ResourceReport rep;
  for (const auto& xi : r.kernel) {
    rep.gates_module_i += xi.weight();
  }
  rep.gates_module_i += r.xi_bar.weight();

  const std::size_t m = i.clauses.size();
  const auto counter_bits = static_cast<std::size_t>(std::bit_width(m));
  rep.ancillas = counter_bits;
  for (const auto& c : i.clauses) {
    rep.gates_module_ii += clause_check_cost(c.arity());
  }
  rep.gates_module_iii = m * counter_bits;
  rep.gates_module_iv = m > 0 ? 1 : 0;
  rep.total_gates =
      rep.gates_module_i + rep.gates_module_ii + rep.gates_module_iii + rep.gates_module_iv;
  return rep;
}

}  // namespace xorsat
