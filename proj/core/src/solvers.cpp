#include "xorsat/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "xorsat/errors.hpp"

namespace xorsat {

namespace {

const Reduction* require_enumerable(const ReduceResult& rr) {
  const auto* r = std::get_if<Reduction>(&rr);
  if (r != nullptr && r->k() > kEnumerateMaxK) {
    throw GuardExceeded("reduced dimension k", r->k(), kEnumerateMaxK);
  }
  return r;
}

SolveOutcome certified_unsat(const XorInfeasible& bad) {
  SolveOutcome out;
  out.xor_certified = true;
  out.witness = bad.witness;
  return out;
}

}  // namespace

SolveOutcome solve_enumerate(const Instance& i) {
  const ReduceResult rr = reduce(i);
  const Reduction* r = require_enumerable(rr);
  if (r == nullptr) {
    return certified_unsat(std::get<XorInfeasible>(rr));
  }
  SolveOutcome out;
  AffineWalker walker(*r);
  do {
    ++out.queries;
    if (eval_instance(i, walker.current())) {
      out.solution = walker.current();
      return out;
    }
  } while (walker.next());
  return out;
}

std::uint64_t count_enumerate(const Instance& i) {
  const ReduceResult rr = reduce(i);
  const Reduction* r = require_enumerable(rr);
  if (r == nullptr) {
    return 0;
  }
  std::uint64_t count = 0;
  AffineWalker walker(*r);
  do {
    count += eval_instance(i, walker.current()) ? 1 : 0;
  } while (walker.next());
  return count;
}

namespace {

struct Occurrence {
  std::size_t clause;
  bool negated;
};

std::vector<std::vector<Occurrence>> occurrence_lists(const Instance& inst) {
  std::vector<std::vector<Occurrence>> occ(inst.n);
  for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
    for (const auto& l : inst.clauses[c].literals) {
      occ[l.var].push_back({c, l.negated});
    }
  }
  return occ;
}

// Depth-first search over v' with incremental per-clause literal counts.
class TreeSearch {
 public:
  TreeSearch(const Instance& inst, const Reduction& r, bool stop_at_first,
             const PruneObserver& on_prune)
      : inst_(inst),
        sf_(r.standard),
        k_(r.k()),
        stop_at_first_(stop_at_first),
        on_prune_(on_prune),
        occ_(occurrence_lists(inst)),
        known_true_(inst.clauses.size(), 0),
        unknown_(inst.clauses.size(), 0),
        ready_(k_ + 1),
        v_prime_(k_),
        x_(inst.n),
        prefix_(),
        stats_{0, std::vector<std::uint64_t>(k_ + 1, 0)} {
    if (r.n() != inst.n) {
      throw std::invalid_argument("backtrack: reduction does not match instance size");
    }
    for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
      unknown_[c] = inst.clauses[c].arity();
      if (status(c) == ClauseStatus::kViolated) {
        ++violated_;
      }
    }
    // A dependent coordinate is known once its highest supporting free
    // variable is fixed.
    for (std::size_t j = 0; j < sf_.h.rows(); ++j) {
      const BinVec& row = sf_.h.row(j);
      std::size_t depth = 0;
      for (std::size_t b = row.find_first(); b < k_; b = row.find_next(b + 1)) {
        depth = b + 1;
      }
      ready_[depth].push_back(j);
    }
  }

  void run() {
    for (std::size_t j : ready_[0]) {
      assign(sf_.perm[k_ + j], sf_.xi_bar_prime[k_ + j]);
    }
    visit(0);
  }

  std::uint64_t solutions() const noexcept { return solutions_; }
  const std::optional<Assignment>& first_solution() const noexcept { return first_; }
  const TreeStats& stats() const noexcept { return stats_; }

 private:
  ClauseStatus status(std::size_t c) const noexcept {
    return clause_status(inst_.clauses[c].q, known_true_[c], unknown_[c]);
  }

  void assign(std::size_t var, bool value) {
    x_.set(var, value);
    for (const auto& o : occ_[var]) {
      const bool was_violated = status(o.clause) == ClauseStatus::kViolated;
      --unknown_[o.clause];
      if (value != o.negated) {
        ++known_true_[o.clause];
      }
      const bool now_violated = status(o.clause) == ClauseStatus::kViolated;
      violated_ += static_cast<long>(now_violated) - static_cast<long>(was_violated);
    }
  }

  void unassign(std::size_t var) {
    const bool value = x_[var];
    for (const auto& o : occ_[var]) {
      const bool was_violated = status(o.clause) == ClauseStatus::kViolated;
      ++unknown_[o.clause];
      if (value != o.negated) {
        --known_true_[o.clause];
      }
      const bool now_violated = status(o.clause) == ClauseStatus::kViolated;
      violated_ += static_cast<long>(now_violated) - static_cast<long>(was_violated);
    }
    x_.set(var, false);
  }

  // Fixes v'[depth] and every dependent coordinate that becomes known.
  void descend(std::size_t depth, bool value) {
    v_prime_.set(depth, value);
    prefix_.push_back(value ? 1 : 0);
    assign(sf_.perm[depth], value);
    for (std::size_t j : ready_[depth + 1]) {
      assign(sf_.perm[k_ + j], sf_.h.row(j).dot(v_prime_) != sf_.xi_bar_prime[k_ + j]);
    }
  }

  void ascend(std::size_t depth) {
    for (std::size_t j : ready_[depth + 1]) {
      unassign(sf_.perm[k_ + j]);
    }
    unassign(sf_.perm[depth]);
    prefix_.pop_back();
    v_prime_.set(depth, false);
  }

  void visit(std::size_t depth) {
    ++stats_.total_nodes;
    ++stats_.nodes_per_depth[depth];
    if (violated_ > 0) {
      if (on_prune_) {
        on_prune_(prefix_);
      }
      return;
    }
    if (depth == k_) {
      ++solutions_;
      if (!first_) {
        first_ = x_;
      }
      return;
    }
    for (bool value : {false, true}) {
      descend(depth, value);
      visit(depth + 1);
      ascend(depth);
      if (stop_at_first_ && first_) {
        return;
      }
    }
  }

  const Instance& inst_;
  const StandardForm& sf_;
  std::size_t k_;
  bool stop_at_first_;
  const PruneObserver& on_prune_;
  std::vector<std::vector<Occurrence>> occ_;
  std::vector<std::size_t> known_true_;
  std::vector<std::size_t> unknown_;
  long violated_ = 0;
  std::vector<std::vector<std::size_t>> ready_;
  BinVec v_prime_;
  Assignment x_;
  std::vector<std::uint8_t> prefix_;
  TreeStats stats_;
  std::uint64_t solutions_ = 0;
  std::optional<Assignment> first_;
};

}  // namespace

std::pair<SolveOutcome, TreeStats> backtrack_solve(const Instance& i, const Reduction& r,
                                                   const PruneObserver& on_prune) {
  TreeSearch search(i, r, /*stop_at_first=*/true, on_prune);
  search.run();
  SolveOutcome out;
  out.solution = search.first_solution();
  // Each visited leaf at full depth is one complete-assignment check.
  out.queries = search.stats().nodes_per_depth.back();
  return {std::move(out), search.stats()};
}

std::pair<std::uint64_t, TreeStats> backtrack_count(const Instance& i, const Reduction& r,
                                                    const PruneObserver& on_prune) {
  TreeSearch search(i, r, /*stop_at_first=*/false, on_prune);
  search.run();
  return {search.solutions(), search.stats()};
}

std::pair<SolveOutcome, TreeStats> backtrack_solve(const Instance& i) {
  const ReduceResult rr = reduce(i);
  if (const auto* bad = std::get_if<XorInfeasible>(&rr)) {
    return {certified_unsat(*bad), TreeStats{}};
  }
  return backtrack_solve(i, std::get<Reduction>(rr));
}

std::pair<std::uint64_t, TreeStats> backtrack_count(const Instance& i) {
  const ReduceResult rr = reduce(i);
  if (std::holds_alternative<XorInfeasible>(rr)) {
    return {0, TreeStats{}};
  }
  return backtrack_count(i, std::get<Reduction>(rr));
}

std::size_t permutation_score(const Instance& i, const StandardForm& sf) {
  std::vector<bool> in_head(i.n, false);
  for (std::size_t v : sf.head()) {
    in_head[v] = true;
  }
  return static_cast<std::size_t>(
      std::count_if(i.clauses.begin(), i.clauses.end(), [&](const Clause& c) {
        return std::any_of(c.literals.begin(), c.literals.end(),
                           [&](const Literal& l) { return in_head[l.var]; });
      }));
}

namespace {

// Kernel rows in reduced form relative to a head: rows[i] has a one at
// head[i] and zeros at every other head coordinate.
struct HeadState {
  std::vector<BinVec> rows;
  std::vector<std::size_t> head;
  std::vector<bool> in_head;
};

HeadState head_from_order(std::span<const BinVec> kernel, std::size_t n,
                          std::span<const std::size_t> column_order) {
  HeadState s{{kernel.begin(), kernel.end()}, {}, std::vector<bool>(n, false)};
  const std::size_t k = kernel.size();
  for (std::size_t c : column_order) {
    if (s.head.size() == k) {
      break;
    }
    const std::size_t next = s.head.size();
    std::size_t r = next;
    while (r < k && !s.rows[r][c]) {
      ++r;
    }
    if (r == k) {
      continue;
    }
    std::swap(s.rows[r], s.rows[next]);
    for (std::size_t j = 0; j < k; ++j) {
      if (j != next && s.rows[j][c]) {
        s.rows[j] ^= s.rows[next];
      }
    }
    s.head.push_back(c);
    s.in_head[c] = true;
  }
  return s;
}

class ScoreClimber {
 public:
  explicit ScoreClimber(const Instance& inst)
      : inst_(inst), occ_(occurrence_lists(inst)), stamp_(inst.clauses.size(), 0) {}

  std::size_t climb(HeadState& s) {
    head_count_.assign(inst_.clauses.size(), 0);
    for (std::size_t v : s.head) {
      for (const auto& o : occ_[v]) {
        ++head_count_[o.clause];
      }
    }
    while (true) {
      long best_delta = 0;
      std::size_t best_i = 0;
      std::size_t best_t = 0;
      for (std::size_t i = 0; i < s.head.size(); ++i) {
        const BinVec& row = s.rows[i];
        for (std::size_t t = row.find_first(); t < row.size(); t = row.find_next(t + 1)) {
          if (s.in_head[t]) {
            continue;
          }
          const long d = delta(s.head[i], t);
          if (d > best_delta) {
            best_delta = d;
            best_i = i;
            best_t = t;
          }
        }
      }
      if (best_delta <= 0) {
        break;
      }
      exchange(s, best_i, best_t);
    }
    return static_cast<std::size_t>(
        std::count_if(head_count_.begin(), head_count_.end(), [](std::size_t c) { return c > 0; }));
  }

 private:
  // Change in the number of covered clauses when head variable `out` is
  // replaced by `in`.
  long delta(std::size_t out, std::size_t in) {
    ++epoch_;
    for (const auto& o : occ_[in]) {
      stamp_[o.clause] = epoch_;
    }
    long d = 0;
    for (const auto& o : occ_[out]) {
      const std::size_t before = head_count_[o.clause];
      const std::size_t after = before - 1 + (stamp_[o.clause] == epoch_ ? 1 : 0);
      d += static_cast<long>(after > 0) - static_cast<long>(before > 0);
      stamp_[o.clause] = 0;
    }
    for (const auto& o : occ_[in]) {
      if (stamp_[o.clause] == epoch_) {
        d += head_count_[o.clause] == 0 ? 1 : 0;
      }
    }
    return d;
  }

  void exchange(HeadState& s, std::size_t i, std::size_t t) {
    const std::size_t out = s.head[i];
    for (const auto& o : occ_[out]) {
      --head_count_[o.clause];
    }
    for (const auto& o : occ_[t]) {
      ++head_count_[o.clause];
    }
    for (std::size_t j = 0; j < s.rows.size(); ++j) {
      if (j != i && s.rows[j][t]) {
        s.rows[j] ^= s.rows[i];
      }
    }
    s.in_head[out] = false;
    s.in_head[t] = true;
    s.head[i] = t;
  }

  const Instance& inst_;
  std::vector<std::vector<Occurrence>> occ_;
  std::vector<std::size_t> head_count_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
};

}  // namespace

namespace {

// Orders the head so that clauses become fully determined as early as
// possible: repeatedly take the open clause with the fewest head variables
// still unplaced (lowest index on ties) and append those variables. A clause
// depends on its own head variables and on the H supports of its dependent
// ones. The head set, and so the score, is unchanged.
std::vector<std::size_t> completion_order(const Instance& inst, const StandardForm& sf) {
  const std::size_t k = sf.k();
  std::vector<std::size_t> head_pos(inst.n, k);
  for (std::size_t i = 0; i < k; ++i) {
    head_pos[sf.perm[i]] = i;
  }
  std::vector<std::vector<std::size_t>> support(inst.n);
  for (std::size_t j = 0; j < sf.h.rows(); ++j) {
    support[sf.perm[k + j]] = sf.h.row(j).support();
  }
  std::vector<std::vector<std::size_t>> needs(inst.clauses.size());
  for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
    auto& req = needs[c];
    for (const auto& l : inst.clauses[c].literals) {
      if (head_pos[l.var] < k) {
        req.push_back(head_pos[l.var]);
      } else {
        req.insert(req.end(), support[l.var].begin(), support[l.var].end());
      }
    }
    std::sort(req.begin(), req.end());
    req.erase(std::unique(req.begin(), req.end()), req.end());
  }

  std::vector<bool> placed(k, false);
  std::vector<bool> closed(inst.clauses.size(), false);
  std::vector<std::size_t> order;
  order.reserve(k);
  while (order.size() < k) {
    std::size_t best = inst.clauses.size();
    std::size_t best_missing = k + 1;
    for (std::size_t c = 0; c < needs.size(); ++c) {
      if (closed[c]) {
        continue;
      }
      const auto missing = static_cast<std::size_t>(
          std::count_if(needs[c].begin(), needs[c].end(), [&](std::size_t h) { return !placed[h]; }));
      if (missing < best_missing) {
        best_missing = missing;
        best = c;
      }
    }
    if (best == inst.clauses.size()) {
      // Head variables that no clause depends on go last.
      for (std::size_t h = 0; h < k; ++h) {
        if (!placed[h]) {
          placed[h] = true;
          order.push_back(sf.perm[h]);
        }
      }
      break;
    }
    closed[best] = true;
    for (std::size_t h : needs[best]) {
      if (!placed[h]) {
        placed[h] = true;
        order.push_back(sf.perm[h]);
      }
    }
  }
  return order;
}

}  // namespace

Reduction optimize_permutation(const Instance& i, const Reduction& r, std::size_t trials,
                               std::uint64_t seed) {
  if (trials == 0) {
    throw std::invalid_argument("optimize_permutation: trials must be at least 1");
  }
  const std::size_t n = r.n();
  std::mt19937_64 rng(seed);
  ScoreClimber climber(i);

  std::vector<std::size_t> best_head(r.standard.head().begin(), r.standard.head().end());
  std::size_t best_score = permutation_score(i, r.standard);

  std::vector<std::size_t> order(n);
  for (std::size_t t = 0; t < trials; ++t) {
    if (t == 0) {
      order.assign(r.standard.perm.begin(), r.standard.perm.end());
    } else {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
    }
    HeadState state = head_from_order(r.kernel, n, order);
    const std::size_t score = climber.climb(state);
    if (score > best_score) {
      best_score = score;
      best_head = state.head;
    }
  }

  std::sort(best_head.begin(), best_head.end());
  Reduction out = r;
  out.standard = standard_form(r.kernel, r.xi_bar, best_head);
  out.standard = standard_form(r.kernel, r.xi_bar, completion_order(i, out.standard));
  return out;
}

double gamma_estimate(std::span<const std::uint64_t> tree_sizes, std::size_t n) {
  if (tree_sizes.empty()) {
    throw std::invalid_argument("gamma_estimate: empty tree-size list");
  }
  if (n == 0) {
    throw std::invalid_argument("gamma_estimate: n must be positive");
  }
  double sum = 0.0;
  for (std::uint64_t t : tree_sizes) {
    sum += std::sqrt(static_cast<double>(t));
  }
  return std::log2(sum / static_cast<double>(tree_sizes.size())) / static_cast<double>(n);
}

}  // namespace xorsat
