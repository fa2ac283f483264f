#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "xorsat/gf2.hpp"

namespace xorsat {
namespace {

using testing::brute_force_affine;
using testing::brute_force_null_space;
using testing::dense;
using testing::span_of;

TEST(BinVec, BasicBitOperations) {
  BinVec v = BinVec::from_string("10110");
  EXPECT_EQ(v.size(), 5U);
  EXPECT_EQ(v.weight(), 3U);
  EXPECT_TRUE(v[0]);
  EXPECT_FALSE(v[1]);
  v.flip(1);
  EXPECT_EQ(v.to_string(), "11110");
  EXPECT_EQ(v.support(), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_TRUE(BinVec::from_string("111").dot(BinVec::from_string("101")) == false);
  EXPECT_THROW(BinVec::from_string("12"), std::invalid_argument);
  EXPECT_THROW(BinVec(3) ^= BinVec(4), std::invalid_argument);
}

TEST(BinVec, WordBoundaries) {
  BinVec v(130);
  v.set(63);
  v.set(64);
  v.set(129);
  EXPECT_EQ(v.support(), (std::vector<std::size_t>{63, 64, 129}));
  EXPECT_EQ(v.find_next(65), 129U);
  EXPECT_EQ(v.find_next(130), 130U);
}

TEST(BinVec, LexicographicOrderReadsIndexZeroFirst) {
  EXPECT_LT(BinVec::from_string("0111"), BinVec::from_string("1000"));
  EXPECT_LT(BinVec::from_string("0100"), BinVec::from_string("0110"));
  EXPECT_EQ(BinVec::from_string("0110") <=> BinVec::from_string("0110"),
            std::strong_ordering::equal);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(BinMatrix::from_strings({"11100", "01110", "00111"})), 3U);
  EXPECT_EQ(rank(BinMatrix(4, 7)), 0U);
  EXPECT_EQ(rank(BinMatrix(0, 0)), 0U);
  for (std::size_t k : {1U, 5U, 64U, 70U}) {
    EXPECT_EQ(rank(BinMatrix::identity(k)), k);
  }
  EXPECT_EQ(rank(BinMatrix::from_strings({"110", "011", "101"})), 2U);
}

TEST(KernelBasis, Examples) {
  const auto k1 = kernel_basis(BinMatrix::from_strings({"110", "011"}));
  ASSERT_EQ(k1.size(), 1U);
  EXPECT_EQ(k1[0].to_string(), "111");

  EXPECT_TRUE(kernel_basis(BinMatrix::identity(3)).empty());

  // Leftmost pivot is column 0; free columns 1 and 2 give 110 and 101.
  const auto k2 = kernel_basis(BinMatrix::from_strings({"111"}));
  ASSERT_EQ(k2.size(), 2U);
  EXPECT_EQ(k2[0].to_string(), "110");
  EXPECT_EQ(k2[1].to_string(), "101");
}

TEST(KernelBasis, ZeroRowMatrixGivesStandardBasis) {
  const auto basis = kernel_basis(BinMatrix(0, 4));
  ASSERT_EQ(basis.size(), 4U);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(basis[i], BinVec::unit(4, i));
  }
}

TEST(SolveParticular, Examples) {
  const auto x = solve_particular(BinMatrix::identity(2), BinVec::from_string("10"));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(x->to_string(), "10");

  EXPECT_FALSE(solve_particular(BinMatrix::from_strings({"11", "11"}), BinVec::from_string("10")));

  const BinMatrix a = BinMatrix::from_strings({"11100", "01110", "00111"});
  const BinVec b = BinVec::from_string("001");
  const auto sol = solve_particular(a, b);
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(matvec(a, *sol), b);
  const auto all = brute_force_affine(dense(a), {0, 0, 1}, 5);
  EXPECT_TRUE(all.count(sol->to_string()) == 1);
}

TEST(SolveParticular, InconsistencyWitnessSumsToContradiction) {
  const BinMatrix a = BinMatrix::from_strings({"1100", "0110", "1010", "0001"});
  const BinVec b = BinVec::from_string("1111");
  const auto result = solve_affine(a, b);
  ASSERT_TRUE(std::holds_alternative<InconsistentRows>(result));
  const auto& rows = std::get<InconsistentRows>(result).rows;
  BinVec row_sum(4);
  bool rhs = false;
  for (std::size_t r : rows) {
    row_sum ^= a.row(r);
    rhs ^= b[r];
  }
  EXPECT_TRUE(row_sum.none());
  EXPECT_TRUE(rhs);
}

TEST(SolveParticular, RejectsDimensionMismatch) {
  EXPECT_THROW(solve_particular(BinMatrix(2, 3), BinVec(3)), std::invalid_argument);
}

TEST(Matvec, Examples) {
  const BinVec v = BinVec::from_string("1011");
  EXPECT_EQ(matvec(BinMatrix::identity(4), v), v);
  EXPECT_TRUE(matvec(BinMatrix(3, 4), v).none());
  EXPECT_EQ(matvec(BinMatrix::from_strings({"111"}), BinVec::from_string("101")).to_string(), "0");
  EXPECT_THROW(matvec(BinMatrix(2, 3), BinVec(2)), std::invalid_argument);
}

TEST(StandardForm, SingleKernelVector) {
  const std::vector<BinVec> kernel{BinVec::from_string("111")};
  const StandardForm sf = standard_form(kernel, BinVec(3));
  EXPECT_EQ(sf.perm, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(sf.h, BinMatrix::from_strings({"1", "1"}));
  std::set<std::string> expanded;
  for (int b : {0, 1}) {
    BinVec v(1);
    v.set(0, b != 0);
    expanded.insert(sf.expand(v).to_string());
  }
  EXPECT_EQ(expanded, (std::set<std::string>{"000", "111"}));
}

TEST(StandardForm, AlreadyStandardKernelHasZeroH) {
  const std::vector<BinVec> kernel{BinVec::from_string("10000"), BinVec::from_string("01000")};
  const StandardForm sf = standard_form(kernel, BinVec(5));
  EXPECT_EQ(sf.h, BinMatrix(3, 2));
}

TEST(StandardForm, RejectsDependentKernel) {
  const std::vector<BinVec> kernel{BinVec::from_string("110"), BinVec::from_string("110")};
  EXPECT_THROW(standard_form(kernel, BinVec(3)), std::invalid_argument);
  const std::vector<BinVec> ok{BinVec::from_string("110"), BinVec::from_string("011")};
  const std::vector<std::size_t> bad_head{0, 0};
  EXPECT_THROW(standard_form(ok, BinVec(3), bad_head), std::invalid_argument);
}

TEST(StandardForm, HeadOffsetIsZero) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const BinMatrix a = testing::random_matrix(5, 12, 0.4, rng);
    const auto kernel = kernel_basis(a);
    const StandardForm sf = standard_form(kernel, testing::random_vec(12, rng));
    for (std::size_t i = 0; i < sf.k(); ++i) {
      EXPECT_FALSE(sf.xi_bar_prime[i]);
    }
  }
}

// Properties checked against brute force on random matrices.

TEST(Gf2Properties, RankNullityAndKernelSoundness) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = rng() % 20;
    const std::size_t cols = rng() % 90;
    const BinMatrix m = testing::random_matrix(rows, cols, 0.3, rng);
    const auto basis = kernel_basis(m);
    EXPECT_EQ(rank(m) + basis.size(), cols);
    for (const auto& xi : basis) {
      EXPECT_TRUE(matvec(m, xi).none());
    }
  }
}

TEST(Gf2Properties, KernelCompletenessSmallSizes) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = rng() % 10;
    const std::size_t cols = 1 + rng() % 14;
    const BinMatrix m = testing::random_matrix(rows, cols, 0.35, rng);
    EXPECT_EQ(span_of(kernel_basis(m), BinVec(cols)), brute_force_null_space(m));
  }
}

TEST(Gf2Properties, ParticularSolutionMatchesBruteForce) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 12;
    const std::size_t cols = 1 + rng() % 14;
    const BinMatrix m = testing::random_matrix(rows, cols, 0.3, rng);
    const BinVec b = testing::random_vec(rows, rng);
    std::vector<int> b_int(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      b_int[r] = b[r] ? 1 : 0;
    }
    const auto feasible = brute_force_affine(dense(m), b_int, cols);
    const auto x = solve_particular(m, b);
    ASSERT_EQ(x.has_value(), !feasible.empty());
    if (x) {
      EXPECT_EQ(matvec(m, *x), b);
    }
  }
}

TEST(Gf2Properties, StandardFormPreservesAffineSet) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t cols = 1 + rng() % 16;
    const std::size_t rows = rng() % (cols + 1);
    const BinMatrix m = testing::random_matrix(rows, cols, 0.4, rng);
    const auto kernel = kernel_basis(m);
    if (kernel.size() > 12) {
      continue;
    }
    const BinVec offset = testing::random_vec(cols, rng);
    const StandardForm sf = standard_form(kernel, offset);
    std::set<std::string> via_standard;
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << kernel.size()); ++u) {
      BinVec v(kernel.size());
      for (std::size_t i = 0; i < kernel.size(); ++i) {
        v.set(i, ((u >> i) & 1U) != 0);
      }
      via_standard.insert(sf.expand(v).to_string());
    }
    EXPECT_EQ(via_standard, span_of(kernel, offset));

    // The permuted kernel restricted to the head is the identity.
    for (std::size_t i = 0; i < sf.k(); ++i) {
      BinVec v = BinVec::unit(sf.k(), i);
      const BinVec x = sf.expand(v) ^ sf.expand(BinVec(sf.k()));
      for (std::size_t j = 0; j < sf.k(); ++j) {
        EXPECT_EQ(x[sf.perm[j]], i == j);
      }
    }
  }
}

}  // namespace
}  // namespace xorsat
