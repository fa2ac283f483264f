#include "xorsat/gf2.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace xorsat {

BinVec BinVec::from_string(std::string_view bits) {
  BinVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("BinVec::from_string: expected only '0' and '1'");
    }
  }
  return v;
}

BinVec BinVec::unit(std::size_t len, std::size_t index) {
  BinVec v(len);
  v.set(index);
  return v;
}

BinVec& BinVec::operator^=(const BinVec& other) {
  if (other.len_ != len_) {
    throw std::invalid_argument("BinVec: length mismatch in xor");
  }
  for (std::size_t w = 0; w < words_.size(); ++w) {
    words_[w] ^= other.words_[w];
  }
  return *this;
}

BinVec& BinVec::operator&=(const BinVec& other) {
  if (other.len_ != len_) {
    throw std::invalid_argument("BinVec: length mismatch in and");
  }
  for (std::size_t w = 0; w < words_.size(); ++w) {
    words_[w] &= other.words_[w];
  }
  return *this;
}

std::size_t BinVec::weight() const noexcept {
  std::size_t total = 0;
  for (Word w : words_) {
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

bool BinVec::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

bool BinVec::dot(const BinVec& other) const {
  if (other.len_ != len_) {
    throw std::invalid_argument("BinVec: length mismatch in dot product");
  }
  Word acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    acc ^= words_[w] & other.words_[w];
  }
  return (std::popcount(acc) & 1) != 0;
}

std::size_t BinVec::find_next(std::size_t from) const noexcept {
  if (from >= len_) {
    return len_;
  }
  std::size_t w = from / kWordBits;
  Word bits = words_[w] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (bits != 0) {
      return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
    }
    if (++w == words_.size()) {
      return len_;
    }
    bits = words_[w];
  }
}

std::vector<std::size_t> BinVec::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = find_first(); i < len_; i = find_next(i + 1)) {
    out.push_back(i);
  }
  return out;
}

std::string BinVec::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if (get(i)) {
      s[i] = '1';
    }
  }
  return s;
}

std::strong_ordering operator<=>(const BinVec& lhs, const BinVec& rhs) {
  const std::size_t common = std::min(lhs.words_.size(), rhs.words_.size());
  for (std::size_t w = 0; w < common; ++w) {
    const BinVec::Word diff = lhs.words_[w] ^ rhs.words_[w];
    if (diff != 0) {
      const BinVec::Word lowest = diff & (~diff + 1);
      return (lhs.words_[w] & lowest) != 0 ? std::strong_ordering::greater
                                          : std::strong_ordering::less;
    }
  }
  return lhs.len_ <=> rhs.len_;
}

BinMatrix BinMatrix::from_rows(std::vector<BinVec> rows, std::size_t cols) {
  for (const auto& r : rows) {
    if (r.size() != cols) {
      throw std::invalid_argument("BinMatrix::from_rows: ragged rows");
    }
  }
  BinMatrix m;
  m.cols_ = cols;
  m.data_ = std::move(rows);
  return m;
}

BinMatrix BinMatrix::from_strings(std::initializer_list<std::string_view> rows) {
  std::vector<BinVec> data;
  data.reserve(rows.size());
  for (auto r : rows) {
    data.push_back(BinVec::from_string(r));
  }
  const std::size_t cols = data.empty() ? 0 : data.front().size();
  return from_rows(std::move(data), cols);
}

BinMatrix BinMatrix::identity(std::size_t n) {
  BinMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.set(i, i);
  }
  return m;
}

BinVec BinMatrix::column(std::size_t c) const {
  BinVec out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    out.set(r, at(r, c));
  }
  return out;
}

BinMatrix BinMatrix::transposed() const {
  BinMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    const BinVec& src = data_[r];
    for (std::size_t c = src.find_first(); c < cols_; c = src.find_next(c + 1)) {
      t.set(c, r);
    }
  }
  return t;
}

namespace {

// Gauss-Jordan elimination in place. When `transform` is non-null it receives
// the same row operations.
std::vector<std::size_t> reduce_rows(BinMatrix& m, BinMatrix* transform) {
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t col = 0; col < m.cols() && next < m.rows(); ++col) {
    std::size_t r = next;
    while (r < m.rows() && !m.at(r, col)) {
      ++r;
    }
    if (r == m.rows()) {
      continue;
    }
    if (r != next) {
      std::swap(m.row(r), m.row(next));
      if (transform != nullptr) {
        std::swap(transform->row(r), transform->row(next));
      }
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != next && m.at(i, col)) {
        m.row(i) ^= m.row(next);
        if (transform != nullptr) {
          transform->row(i) ^= transform->row(next);
        }
      }
    }
    pivots.push_back(col);
    ++next;
  }
  return pivots;
}

}  // namespace

Elimination eliminate(const BinMatrix& m) {
  Elimination e{m, BinMatrix::identity(m.rows()), {}};
  e.pivot_cols = reduce_rows(e.reduced, &e.transform);
  return e;
}

std::size_t rank(const BinMatrix& m) {
  BinMatrix work = m;
  return reduce_rows(work, nullptr).size();
}

std::vector<BinVec> kernel_basis(const BinMatrix& m) {
  BinMatrix work = m;
  const auto pivots = reduce_rows(work, nullptr);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) {
    is_pivot[c] = true;
  }
  std::vector<BinVec> basis;
  basis.reserve(m.cols() - pivots.size());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) {
      continue;
    }
    BinVec x = BinVec::unit(m.cols(), f);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (work.at(r, f)) {
        x.set(pivots[r]);
      }
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::variant<BinVec, InconsistentRows> solve_affine(const BinMatrix& m, const BinVec& b) {
  if (b.size() != m.rows()) {
    throw std::invalid_argument("solve_affine: right-hand side length must equal row count");
  }
  const Elimination e = eliminate(m);
  const BinVec reduced_b = matvec(e.transform, b);
  for (std::size_t r = e.rank(); r < m.rows(); ++r) {
    if (reduced_b[r]) {
      return InconsistentRows{e.transform.row(r).support()};
    }
  }
  BinVec x(m.cols());
  for (std::size_t r = 0; r < e.rank(); ++r) {
    x.set(e.pivot_cols[r], reduced_b[r]);
  }
  return x;
}

std::optional<BinVec> solve_particular(const BinMatrix& m, const BinVec& b) {
  auto result = solve_affine(m, b);
  if (auto* x = std::get_if<BinVec>(&result)) {
    return std::move(*x);
  }
  return std::nullopt;
}

BinVec matvec(const BinMatrix& m, const BinVec& v) {
  if (v.size() != m.cols()) {
    throw std::invalid_argument("matvec: vector length must equal column count");
  }
  BinVec out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out.set(r, m.row(r).dot(v));
  }
  return out;
}

BinVec StandardForm::expand(const BinVec& v_prime) const {
  const std::size_t kk = k();
  if (v_prime.size() != kk) {
    throw std::invalid_argument("StandardForm::expand: expected " + std::to_string(kk) +
                                " free values");
  }
  BinVec x(n());
  for (std::size_t i = 0; i < kk; ++i) {
    x.set(perm[i], v_prime[i]);
  }
  for (std::size_t j = 0; j < h.rows(); ++j) {
    x.set(perm[kk + j], h.row(j).dot(v_prime) != xi_bar_prime[kk + j]);
  }
  return x;
}

namespace {

std::size_t common_length(std::span<const BinVec> kernel, const BinVec& xi_bar) {
  const std::size_t n = xi_bar.size();
  for (const auto& v : kernel) {
    if (v.size() != n) {
      throw std::invalid_argument("standard_form: kernel vectors and offset differ in length");
    }
  }
  if (kernel.size() > n) {
    throw std::invalid_argument("standard_form: more kernel vectors than coordinates");
  }
  return n;
}

}  // namespace

StandardForm standard_form(std::span<const BinVec> kernel, const BinVec& xi_bar) {
  const std::size_t n = common_length(kernel, xi_bar);
  BinMatrix basis = BinMatrix::from_rows({kernel.begin(), kernel.end()}, n);
  const auto pivots = reduce_rows(basis, nullptr);
  if (pivots.size() != kernel.size()) {
    throw std::invalid_argument("standard_form: kernel vectors are linearly dependent");
  }
  return standard_form(kernel, xi_bar, pivots);
}

StandardForm standard_form(std::span<const BinVec> kernel, const BinVec& xi_bar,
                           std::span<const std::size_t> head) {
  const std::size_t n = common_length(kernel, xi_bar);
  const std::size_t k = kernel.size();
  if (head.size() != k) {
    throw std::invalid_argument("standard_form: head size must equal kernel dimension");
  }
  std::vector<bool> in_head(n, false);
  for (std::size_t c : head) {
    if (c >= n || in_head[c]) {
      throw std::invalid_argument("standard_form: head coordinates must be distinct and in range");
    }
    in_head[c] = true;
  }

  std::vector<BinVec> rows(kernel.begin(), kernel.end());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t c = head[i];
    std::size_t r = i;
    while (r < k && !rows[r][c]) {
      ++r;
    }
    if (r == k) {
      throw std::invalid_argument(
          "standard_form: head is not an information set of the kernel (or kernel is dependent)");
    }
    std::swap(rows[r], rows[i]);
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i && rows[j][c]) {
        rows[j] ^= rows[i];
      }
    }
  }

  StandardForm sf;
  sf.perm.assign(head.begin(), head.end());
  for (std::size_t c = 0; c < n; ++c) {
    if (!in_head[c]) {
      sf.perm.push_back(c);
    }
  }

  sf.h = BinMatrix(n - k, k);
  for (std::size_t j = 0; j < n - k; ++j) {
    const std::size_t c = sf.perm[k + j];
    for (std::size_t i = 0; i < k; ++i) {
      sf.h.set(j, i, rows[i][c]);
    }
  }

  // Clear the offset on the head so v' = 0 maps to the offset itself.
  BinVec offset = xi_bar;
  for (std::size_t i = 0; i < k; ++i) {
    if (xi_bar[head[i]]) {
      offset ^= rows[i];
    }
  }
  sf.xi_bar_prime = BinVec(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    sf.xi_bar_prime.set(pos, offset[sf.perm[pos]]);
  }
  return sf;
}

}  // namespace xorsat
