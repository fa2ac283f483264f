#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "xorsat/gf2.hpp"
#include "xorsat/instance.hpp"

namespace xorsat {

/// Parity relaxation A x = b (mod 2) of an occupation instance: row a has a
/// one at every variable of clause a, and b_a = (negations_a + q_a) mod 2.
struct LinearSystem {
  BinMatrix a;
  BinVec b;
};

LinearSystem build_linear_system(const Instance& i);

/// Affine space containing every solution of an instance:
///   x(v) = v_0 kernel_0 + ... + v_{k-1} kernel_{k-1} + xi_bar.
struct Reduction {
  std::vector<BinVec> kernel;
  BinVec xi_bar;
  /// Rank of A (number of independent clauses).
  std::size_t m_prime = 0;
  StandardForm standard;

  std::size_t k() const noexcept { return kernel.size(); }
  std::size_t n() const noexcept { return xi_bar.size(); }
};

/// Certificate that the parity relaxation, and therefore the instance, has no
/// solution: the listed clauses' rows sum to zero while their parities sum to one.
struct XorInfeasible {
  std::vector<std::size_t> witness;
};

using ReduceResult = std::variant<Reduction, XorInfeasible>;

ReduceResult reduce(const Instance& i);

/// Builds a Reduction from a kernel basis and offset, computing the default
/// standard form.
Reduction make_reduction(std::vector<BinVec> kernel, BinVec xi_bar);

/// Free-variable vector for enumeration index u: v_0 is the most significant
/// bit, so increasing u walks {0,1}^k in lexicographic order.
BinVec v_from_index(std::uint64_t u, std::size_t k);

/// Throws std::invalid_argument unless v.size() == r.k().
Assignment expand(const Reduction& r, const BinVec& v);
Assignment expand_standard(const Reduction& r, const BinVec& v_prime);

/// Delta k = k - (n - M) = M - M'.
long long kernel_excess(const Instance& i, const Reduction& r);

/// Walks x(v) for v in lexicographic order. Each step XORs in the kernel
/// vectors of the bits that change, two on average.
class AffineWalker {
 public:
  explicit AffineWalker(const Reduction& r);

  std::uint64_t index() const noexcept { return index_; }
  const Assignment& current() const noexcept { return x_; }
  /// Advances to the next index; returns false after the last one.
  bool next();

 private:
  const Reduction* r_;
  std::uint64_t index_ = 0;
  std::uint64_t end_;
  Assignment x_;
};

}  // namespace xorsat
