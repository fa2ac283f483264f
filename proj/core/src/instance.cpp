#include "xorsat/instance.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "text_util.hpp"
#include "xorsat/errors.hpp"

namespace xorsat {

std::size_t Clause::negations() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(literals.begin(), literals.end(), [](const Literal& l) { return l.negated; }));
}

double Instance::alpha() const noexcept {
  return n == 0 ? 0.0 : static_cast<double>(clauses.size()) / static_cast<double>(n);
}

std::vector<std::size_t> Instance::degrees() const {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& c : clauses) {
    for (const auto& l : c.literals) {
      ++deg.at(l.var);
    }
  }
  return deg;
}

bool Instance::is_locked() const {
  const auto deg = degrees();
  return std::all_of(deg.begin(), deg.end(), [](std::size_t d) { return d >= 2; });
}

void Instance::validate() const {
  std::vector<std::size_t> seen(n, clauses.size());
  for (std::size_t a = 0; a < clauses.size(); ++a) {
    const Clause& c = clauses[a];
    if (c.q == 0) {
      throw std::invalid_argument("clause " + std::to_string(a) + ": q must be positive");
    }
    for (const auto& l : c.literals) {
      if (l.var >= n) {
        throw std::invalid_argument("clause " + std::to_string(a) + ": variable out of range");
      }
      if (seen[l.var] == a) {
        throw std::invalid_argument("clause " + std::to_string(a) + ": repeated variable");
      }
      seen[l.var] = a;
    }
  }
}

bool eval_clause(const Clause& c, const Assignment& a) {
  std::size_t true_count = 0;
  for (const auto& l : c.literals) {
    if (l.var >= a.size()) {
      throw std::out_of_range("eval_clause: variable index beyond assignment");
    }
    true_count += l.value_under(a[l.var]) ? 1 : 0;
  }
  return true_count == c.q;
}

bool eval_instance(const Instance& i, const Assignment& a) {
  if (a.size() != i.n) {
    throw std::invalid_argument("eval_instance: assignment length differs from n");
  }
  return std::all_of(i.clauses.begin(), i.clauses.end(),
                     [&](const Clause& c) { return eval_clause(c, a); });
}

ClauseStatus eval_clause_partial(const Clause& c, std::span<const Tri> p) {
  std::size_t known_true = 0;
  std::size_t unknown = 0;
  for (const auto& l : c.literals) {
    const Tri v = l.var < p.size() ? p[l.var] : Tri::kUnknown;
    if (v == Tri::kUnknown) {
      ++unknown;
    } else if (l.value_under(v == Tri::kTrue)) {
      ++known_true;
    }
  }
  return clause_status(c.q, known_true, unknown);
}

namespace {

bool contains_var(const std::vector<std::size_t>& vars, std::size_t v) {
  return std::find(vars.begin(), vars.end(), v) != vars.end();
}

// One sampling attempt; false when the degree repair got stuck.
bool try_generate(const GeneratorParams& params, std::mt19937_64& rng,
                  std::vector<std::vector<std::size_t>>& clause_vars) {
  const std::size_t n = params.n;
  const std::size_t p = params.p;
  std::uniform_int_distribution<std::size_t> pick_var(0, n - 1);

  clause_vars.assign(params.m, {});
  std::vector<std::size_t> deg(n, 0);
  for (auto& vars : clause_vars) {
    while (vars.size() < p) {
      const std::size_t v = pick_var(rng);
      if (!contains_var(vars, v)) {
        vars.push_back(v);
        ++deg[v];
      }
    }
  }

  if (params.m == 0) {
    return params.min_degree == 0 || n == 0;
  }
  std::uniform_int_distribution<std::size_t> pick_clause(0, params.m - 1);
  std::uniform_int_distribution<std::size_t> pick_slot(0, p - 1);
  const std::size_t max_attempts = 64 * p * params.m + 1024;
  for (std::size_t v = 0; v < n; ++v) {
    while (deg[v] < params.min_degree) {
      bool moved = false;
      for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        auto& vars = clause_vars[pick_clause(rng)];
        const std::size_t slot = pick_slot(rng);
        const std::size_t donor = vars[slot];
        if (deg[donor] <= params.min_degree || contains_var(vars, v)) {
          continue;
        }
        vars[slot] = v;
        --deg[donor];
        ++deg[v];
        moved = true;
        break;
      }
      if (!moved) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

Instance generate_random(const GeneratorParams& params, std::uint64_t seed) {
  if (params.p == 0 || params.p > params.n) {
    throw GenerationFailure("clause arity p must satisfy 1 <= p <= n");
  }
  if (params.q == 0 || params.q > params.p) {
    throw GenerationFailure("occupation q must satisfy 1 <= q <= p");
  }
  if (params.p * params.m < params.min_degree * params.n) {
    throw GenerationFailure("infeasible degree constraint: p*M = " +
                            std::to_string(params.p * params.m) + " literal slots < " +
                            std::to_string(params.min_degree * params.n) + " required");
  }
  if (!(params.negation_prob >= 0.0 && params.negation_prob <= 1.0)) {
    throw GenerationFailure("negation probability must lie in [0, 1]");
  }

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> clause_vars;
  for (std::size_t restart = 0; restart < params.max_restarts; ++restart) {
    if (!try_generate(params, rng, clause_vars)) {
      continue;
    }
    std::bernoulli_distribution negate(params.negation_prob);
    Instance inst;
    inst.n = params.n;
    inst.clauses.reserve(params.m);
    for (const auto& vars : clause_vars) {
      Clause c;
      c.q = params.q;
      for (std::size_t v : vars) {
        c.literals.push_back({v, negate(rng)});
      }
      inst.clauses.push_back(std::move(c));
    }
    return inst;
  }
  throw GenerationFailure("degree repair did not converge after " +
                          std::to_string(params.max_restarts) + " restarts");
}

Instance gen_locked_random(std::size_t n, std::size_t m, std::size_t p, std::size_t q,
                           double negation_prob, std::uint64_t seed) {
  GeneratorParams params;
  params.n = n;
  params.m = m;
  params.p = p;
  params.q = q;
  params.negation_prob = negation_prob;
  params.min_degree = 2;
  return generate_random(params, seed);
}

std::vector<Assignment> brute_force_solutions(const Instance& i) {
  if (i.n > kBruteForceMaxVars) {
    throw GuardExceeded("brute-force variables n", i.n, kBruteForceMaxVars);
  }
  std::vector<Assignment> out;
  const std::uint64_t total = std::uint64_t{1} << i.n;
  Assignment x(i.n);
  for (std::uint64_t u = 0; u < total; ++u) {
    for (std::size_t b = 0; b < i.n; ++b) {
      x.set(b, ((u >> (i.n - 1 - b)) & 1U) != 0);
    }
    if (eval_instance(i, x)) {
      out.push_back(x);
    }
  }
  return out;
}

Instance parse_instance(std::string_view text) {
  using detail::parse_int;
  using detail::split_ws;

  Instance inst;
  bool have_header = false;
  std::size_t declared_m = 0;
  std::size_t q_default = 1;
  std::size_t line_no = 0;
  std::size_t last_content_line = 1;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto tokens = split_ws(line);
    if (tokens.empty()) {
      continue;
    }
    last_content_line = line_no;
    if (tokens.front().front() == 'c') {
      continue;
    }

    if (tokens.front() == "p") {
      if (have_header) {
        throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "duplicate header");
      }
      if (tokens.size() != 5 || tokens[1] != "occ" || !parse_int(tokens[2], inst.n) ||
          !parse_int(tokens[3], declared_m) || !parse_int(tokens[4], q_default) ||
          q_default == 0) {
        throw ParseError(ParseErrorKind::kMalformedHeader, line_no,
                         "expected 'p occ <n> <M> <q_default>'");
      }
      have_header = true;
      continue;
    }
    if (!have_header) {
      throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "clause before header");
    }

    Clause clause;
    clause.q = q_default;
    std::size_t first = 0;
    if (tokens.front().starts_with("q=")) {
      if (!parse_int(tokens.front().substr(2), clause.q)) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no, "bad q= token");
      }
      first = 1;
    }
    if (tokens.back() != "0") {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "clause must end with 0");
    }
    for (std::size_t t = first; t + 1 < tokens.size(); ++t) {
      long long lit = 0;
      if (!parse_int(tokens[t], lit) || lit == 0) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no,
                         "bad literal '" + std::string(tokens[t]) + "'");
      }
      const auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
      if (var > inst.n) {
        throw ParseError(ParseErrorKind::kLiteralOutOfRange, line_no,
                         "variable " + std::to_string(var) + " exceeds n = " +
                             std::to_string(inst.n));
      }
      const Literal l{var - 1, lit < 0};
      if (std::any_of(clause.literals.begin(), clause.literals.end(),
                      [&](const Literal& o) { return o.var == l.var; })) {
        throw ParseError(ParseErrorKind::kRepeatedVariable, line_no,
                         "variable " + std::to_string(var) + " repeated");
      }
      clause.literals.push_back(l);
    }
    if (clause.literals.empty()) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "empty clause");
    }
    if (clause.q == 0 || clause.q > clause.arity()) {
      throw ParseError(ParseErrorKind::kQOutOfRange, line_no,
                       "q = " + std::to_string(clause.q) + " outside [1, " +
                           std::to_string(clause.arity()) + "]");
    }
    inst.clauses.push_back(std::move(clause));
  }

  if (!have_header) {
    throw ParseError(ParseErrorKind::kMalformedHeader, last_content_line, "missing 'p occ' header");
  }
  if (inst.clauses.size() != declared_m) {
    throw ParseError(ParseErrorKind::kCountMismatch, last_content_line,
                     "header declares " + std::to_string(declared_m) + " clauses, found " +
                         std::to_string(inst.clauses.size()));
  }
  return inst;
}

std::string emit_instance(const Instance& i) {
  std::map<std::size_t, std::size_t> q_freq;
  for (const auto& c : i.clauses) {
    ++q_freq[c.q];
  }
  std::size_t q_default = 1;
  std::size_t best = 0;
  for (const auto& [q, count] : q_freq) {
    if (count > best) {
      best = count;
      q_default = q;
    }
  }

  std::ostringstream out;
  out << "p occ " << i.n << ' ' << i.clauses.size() << ' ' << q_default << '\n';
  for (const auto& c : i.clauses) {
    if (c.q != q_default) {
      out << "q=" << c.q << ' ';
    }
    for (const auto& l : c.literals) {
      out << (l.negated ? "-" : "") << l.var + 1 << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

}  // namespace xorsat
