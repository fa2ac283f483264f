#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "xorsat/errors.hpp"
#include "xorsat/instance.hpp"

namespace xorsat {
namespace {

Clause clause(std::initializer_list<int> signed_vars, std::size_t q) {
  Clause c;
  c.q = q;
  for (int s : signed_vars) {
    c.literals.push_back({static_cast<std::size_t>(std::abs(s) - 1), s < 0});
  }
  return c;
}

std::vector<Tri> partial(std::string_view spec) {
  std::vector<Tri> out;
  for (char ch : spec) {
    out.push_back(ch == '1' ? Tri::kTrue : ch == '0' ? Tri::kFalse : Tri::kUnknown);
  }
  return out;
}

TEST(EvalClause, Examples) {
  EXPECT_TRUE(eval_clause(clause({1, -2, 3}, 1), BinVec::from_string("110")));
  EXPECT_FALSE(eval_clause(clause({1, 2, 3}, 1), BinVec::from_string("000")));
  EXPECT_TRUE(eval_clause(clause({1, 2, 3}, 3), BinVec::from_string("111")));
  EXPECT_THROW(eval_clause(clause({1, 4}, 1), BinVec(3)), std::out_of_range);
}

TEST(EvalInstance, Examples) {
  Instance empty{3, {}};
  for (std::uint64_t u = 0; u < 8; ++u) {
    EXPECT_TRUE(eval_instance(empty, BinVec::from_string(testing::bit_string(testing::bits_of(u, 3)))));
  }

  const Instance fig = testing::fixture_instance();
  std::set<std::string> found;
  for (const auto& a : brute_force_solutions(fig)) {
    found.insert(a.to_string());
  }
  EXPECT_EQ(found, (std::set<std::string>{"00001", "01100"}));

  Instance one_bad{3, {clause({1, 2, 3}, 1), clause({1}, 1)}};
  EXPECT_FALSE(eval_instance(one_bad, BinVec::from_string("010")));
  EXPECT_THROW(eval_instance(fig, BinVec(4)), std::invalid_argument);
}

TEST(EvalClausePartial, OneInThreeExamples) {
  const Clause c = clause({1, 2, 3}, 1);
  EXPECT_EQ(eval_clause_partial(c, partial("11*")), ClauseStatus::kViolated);
  EXPECT_EQ(eval_clause_partial(c, partial("1*1")), ClauseStatus::kViolated);
  EXPECT_EQ(eval_clause_partial(c, partial("10*")), ClauseStatus::kIndeterminate);
  EXPECT_EQ(eval_clause_partial(c, partial("***")), ClauseStatus::kIndeterminate);
  EXPECT_EQ(eval_clause_partial(c, partial("0**")), ClauseStatus::kIndeterminate);
  EXPECT_EQ(eval_clause_partial(c, partial("100")), ClauseStatus::kSatisfied);
  EXPECT_EQ(eval_clause_partial(c, partial("000")), ClauseStatus::kViolated);
}

TEST(EvalClausePartial, ArityBelowQIsViolatedImmediately) {
  const Clause c = clause({1}, 2);
  EXPECT_EQ(eval_clause_partial(c, partial("*")), ClauseStatus::kViolated);
}

// Enumerates every {0,1,*} pattern for random clauses and checks both
// consistency with full evaluation and monotonicity under refinement.
TEST(EvalClausePartial, ConsistencyAndMonotonicity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t p = 1 + rng() % 5;
    Clause c;
    c.q = 1 + rng() % p;
    for (std::size_t v = 0; v < p; ++v) {
      c.literals.push_back({v, (rng() & 1U) != 0});
    }
    std::size_t patterns = 1;
    for (std::size_t v = 0; v < p; ++v) {
      patterns *= 3;
    }
    for (std::size_t code = 0; code < patterns; ++code) {
      std::vector<Tri> pa(p);
      std::size_t rest = code;
      for (std::size_t v = 0; v < p; ++v) {
        pa[v] = static_cast<Tri>(rest % 3);
        rest /= 3;
      }
      const ClauseStatus st = eval_clause_partial(c, pa);
      const bool determined = std::none_of(pa.begin(), pa.end(), [](Tri t) { return t == Tri::kUnknown; });
      if (determined) {
        BinVec a(p);
        for (std::size_t v = 0; v < p; ++v) {
          a.set(v, pa[v] == Tri::kTrue);
        }
        EXPECT_EQ(st == ClauseStatus::kSatisfied, eval_clause(c, a));
        EXPECT_NE(st, ClauseStatus::kIndeterminate);
      }
      for (std::size_t v = 0; v < p; ++v) {
        if (pa[v] != Tri::kUnknown) {
          continue;
        }
        for (Tri fix : {Tri::kFalse, Tri::kTrue}) {
          auto refined = pa;
          refined[v] = fix;
          const ClauseStatus after = eval_clause_partial(c, refined);
          if (st != ClauseStatus::kIndeterminate) {
            EXPECT_EQ(after, st);
          }
        }
      }
    }
  }
}

TEST(Generator, LockedSmallInstance) {
  const Instance inst = gen_locked_random(6, 4, 3, 1, 0.0, 42);
  EXPECT_EQ(inst.n, 6U);
  ASSERT_EQ(inst.clauses.size(), 4U);
  EXPECT_TRUE(inst.is_locked());
  std::size_t slots = 0;
  for (const auto& c : inst.clauses) {
    slots += c.arity();
    EXPECT_EQ(c.q, 1U);
    for (const auto& l : c.literals) {
      EXPECT_FALSE(l.negated);
    }
  }
  EXPECT_EQ(slots, 12U);
  EXPECT_NO_THROW(inst.validate());
}

TEST(Generator, InfeasibleDegreeConstraintFails) {
  EXPECT_THROW(gen_locked_random(10, 3, 3, 1, 0.5, 1), GenerationFailure);
}

TEST(Generator, LockedAtTransitionDensity) {
  const std::size_t n = 30;
  const auto m = static_cast<std::size_t>(0.789 * n);
  const Instance inst = gen_locked_random(n, m, 3, 1, 0.5, 17);
  EXPECT_EQ(inst.clauses.size(), 23U);
  EXPECT_TRUE(inst.is_locked());
  EXPECT_NO_THROW(inst.validate());
}

TEST(Generator, DeterministicAndValidAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 8 + seed % 60;
    const std::size_t p = 3 + seed % 2;
    const std::size_t m = (2 * n + p - 1) / p + seed % 7;
    const Instance a = gen_locked_random(n, m, p, 1 + seed % 2, 0.5, seed);
    EXPECT_EQ(a, gen_locked_random(n, m, p, 1 + seed % 2, 0.5, seed));
    EXPECT_TRUE(a.is_locked());
    EXPECT_NO_THROW(a.validate());
    for (const auto& c : a.clauses) {
      EXPECT_EQ(c.arity(), p);
    }
  }
}

TEST(Generator, TightSlotCountStillConverges) {
  // p*M == 2n forces every variable to have degree exactly two.
  const Instance inst = gen_locked_random(30, 20, 3, 1, 0.5, 8);
  for (std::size_t d : inst.degrees()) {
    EXPECT_EQ(d, 2U);
  }
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_solutions(Instance{3, {}}).size(), 8U);
  const auto forced = brute_force_solutions(Instance{2, {clause({1, 2}, 2)}});
  ASSERT_EQ(forced.size(), 1U);
  EXPECT_EQ(forced[0].to_string(), "11");
  EXPECT_THROW(brute_force_solutions(Instance{25, {}}), GuardExceeded);
}

TEST(BruteForce, AgreesWithIndependentEnumerationAndIsSorted) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = gen_locked_random(12, 8 + seed % 4, 3, 1, 0.5, seed);
    const auto sols = brute_force_solutions(inst);
    EXPECT_TRUE(std::is_sorted(sols.begin(), sols.end()));
    std::set<std::string> got;
    for (const auto& s : sols) {
      got.insert(s.to_string());
    }
    EXPECT_EQ(got, testing::reference_solutions(inst));
  }
}

TEST(Parser, FixtureFile) {
  const Instance inst = parse_instance(
      "c fixture\n"
      "p occ 5 3 1\n"
      "1 -2 3 0\n"
      "2 -3 4 0\n"
      "3 4 5 0\n");
  EXPECT_EQ(inst, testing::fixture_instance());
}

TEST(Parser, EmptyBody) {
  const Instance inst = parse_instance("p occ 1 0 1\n");
  EXPECT_EQ(inst.n, 1U);
  EXPECT_TRUE(inst.clauses.empty());
}

TEST(Parser, PerClauseQ) {
  const Instance inst = parse_instance("p occ 4 2 1\nq=2 1 2 3 0\n-1 4 0\n");
  EXPECT_EQ(inst.clauses[0].q, 2U);
  EXPECT_EQ(inst.clauses[1].q, 1U);
}

void expect_parse_error(std::string_view text, ParseErrorKind kind, std::size_t line) {
  try {
    parse_instance(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
    EXPECT_EQ(e.line(), line) << e.what();
  }
}

TEST(Parser, DistinctErrorsWithLineNumbers) {
  expect_parse_error("p occ 3 1 1\n2 2 -3 0\n", ParseErrorKind::kRepeatedVariable, 2);
  expect_parse_error("p cnf 3 1\n1 2 0\n", ParseErrorKind::kMalformedHeader, 1);
  expect_parse_error("c x\np occ 3 1 1\nq=3 1 2 0\n", ParseErrorKind::kQOutOfRange, 3);
  expect_parse_error("p occ 3 1 1\n1 2 4 0\n", ParseErrorKind::kLiteralOutOfRange, 2);
  expect_parse_error("p occ 3 1 1\n1 2 3\n", ParseErrorKind::kMalformedLine, 2);
  expect_parse_error("p occ 3 2 1\n1 2 3 0\n", ParseErrorKind::kCountMismatch, 2);
  expect_parse_error("1 2 3 0\n", ParseErrorKind::kMalformedHeader, 1);
}

TEST(Parser, RoundTripProperty) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorParams params;
    params.n = 5 + seed % 40;
    params.p = 2 + seed % 3;
    params.m = (2 * params.n + params.p - 1) / params.p + seed % 5;
    params.q = 1 + seed % params.p;
    Instance inst = generate_random(params, seed);
    if (seed % 3 == 0 && !inst.clauses.empty()) {
      inst.clauses.front().q = inst.clauses.front().arity();
    }
    const std::string text = emit_instance(inst);
    EXPECT_EQ(parse_instance(text), inst);
    EXPECT_EQ(emit_instance(parse_instance(text)), text);
  }
}

}  // namespace
}  // namespace xorsat
