#include "xorsat/reduction.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace xorsat {

LinearSystem build_linear_system(const Instance& i) {
  LinearSystem sys{BinMatrix(i.clauses.size(), i.n), BinVec(i.clauses.size())};
  for (std::size_t a = 0; a < i.clauses.size(); ++a) {
    const Clause& c = i.clauses[a];
    for (const auto& l : c.literals) {
      sys.a.set(a, l.var);
    }
    sys.b.set(a, ((c.negations() + c.q) & 1U) != 0);
  }
  return sys;
}

Reduction make_reduction(std::vector<BinVec> kernel, BinVec xi_bar) {
  Reduction r;
  r.m_prime = xi_bar.size() - kernel.size();
  r.standard = standard_form(kernel, xi_bar);
  r.kernel = std::move(kernel);
  r.xi_bar = std::move(xi_bar);
  return r;
}

ReduceResult reduce(const Instance& i) {
  const LinearSystem sys = build_linear_system(i);
  auto particular = solve_affine(sys.a, sys.b);
  if (auto* bad = std::get_if<InconsistentRows>(&particular)) {
    return XorInfeasible{std::move(bad->rows)};
  }
  return make_reduction(kernel_basis(sys.a), std::get<BinVec>(std::move(particular)));
}

BinVec v_from_index(std::uint64_t u, std::size_t k) {
  BinVec v(k);
  for (std::size_t i = 0; i < k; ++i) {
    v.set(i, ((u >> (k - 1 - i)) & 1U) != 0);
  }
  return v;
}

Assignment expand(const Reduction& r, const BinVec& v) {
  if (v.size() != r.k()) {
    throw std::invalid_argument("expand: expected " + std::to_string(r.k()) + " free values");
  }
  Assignment x = r.xi_bar;
  for (std::size_t i = v.find_first(); i < v.size(); i = v.find_next(i + 1)) {
    x ^= r.kernel[i];
  }
  return x;
}

Assignment expand_standard(const Reduction& r, const BinVec& v_prime) {
  return r.standard.expand(v_prime);
}

long long kernel_excess(const Instance& i, const Reduction& r) {
  return static_cast<long long>(i.clauses.size()) - static_cast<long long>(r.m_prime);
}

AffineWalker::AffineWalker(const Reduction& r)
    : r_(&r), end_(std::uint64_t{1} << r.k()), x_(r.xi_bar) {}

bool AffineWalker::next() {
  if (index_ + 1 >= end_) {
    index_ = end_;
    return false;
  }
  const std::uint64_t flipped = index_ ^ (index_ + 1);
  const std::size_t k = r_->k();
  for (std::uint64_t bits = flipped; bits != 0; bits &= bits - 1) {
    const auto b = static_cast<std::size_t>(std::countr_zero(bits));
    x_ ^= r_->kernel[k - 1 - b];
  }
  ++index_;
  return true;
}

}  // namespace xorsat
