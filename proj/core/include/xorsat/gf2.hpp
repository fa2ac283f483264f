#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace xorsat {

/// Fixed-length bit vector over GF(2), packed into 64-bit words.
///
/// Bits past `size()` in the last word are kept at zero so that word-wise
/// comparisons and popcounts need no masking.
class BinVec {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BinVec() = default;
  explicit BinVec(std::size_t len) : len_(len), words_((len + kWordBits - 1) / kWordBits, 0) {}

  /// Parses a string of '0'/'1' characters; index 0 is the first character.
  static BinVec from_string(std::string_view bits);
  static BinVec unit(std::size_t len, std::size_t index);

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool get(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  bool operator[](std::size_t i) const noexcept { return get(i); }
  void set(std::size_t i, bool value = true) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BinVec& operator^=(const BinVec& other);
  friend BinVec operator^(BinVec lhs, const BinVec& rhs) { return lhs ^= rhs; }
  BinVec& operator&=(const BinVec& other);
  friend BinVec operator&(BinVec lhs, const BinVec& rhs) { return lhs &= rhs; }

  /// Number of ones (Hamming weight).
  std::size_t weight() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  /// Inner product modulo 2.
  bool dot(const BinVec& other) const;
  /// Index of the lowest set bit at or after `from`, or size() when none.
  std::size_t find_next(std::size_t from) const noexcept;
  std::size_t find_first() const noexcept { return find_next(0); }
  /// Indices of all set bits in increasing order.
  std::vector<std::size_t> support() const;

  std::string to_string() const;
  std::span<const Word> words() const noexcept { return words_; }

  friend bool operator==(const BinVec&, const BinVec&) = default;
  /// Lexicographic order reading index 0 first; shorter vectors sort first.
  friend std::strong_ordering operator<=>(const BinVec& lhs, const BinVec& rhs);

 private:
  std::size_t len_ = 0;
  std::vector<Word> words_;
};

/// Dense row-major matrix over GF(2).
class BinMatrix {
 public:
  BinMatrix() = default;
  BinMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows, BinVec(cols)) {}

  /// All rows must share one length. An empty row list yields a 0x`cols` matrix.
  static BinMatrix from_rows(std::vector<BinVec> rows, std::size_t cols);
  static BinMatrix from_strings(std::initializer_list<std::string_view> rows);
  static BinMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return data_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  bool at(std::size_t r, std::size_t c) const noexcept { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept { data_[r].set(c, value); }
  const BinVec& row(std::size_t r) const noexcept { return data_[r]; }
  BinVec& row(std::size_t r) noexcept { return data_[r]; }
  std::span<const BinVec> row_span() const noexcept { return data_; }

  BinVec column(std::size_t c) const;
  BinMatrix transposed() const;

  friend bool operator==(const BinMatrix&, const BinMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BinVec> data_;
};

/// Reduced row echelon form of a matrix, together with the row operations
/// that produced it: `reduced == transform * input` over GF(2).
///
/// Pivoting always takes the leftmost remaining column and, inside it, the
/// lowest-index candidate row, so the result is a deterministic function of
/// the input.
struct Elimination {
  BinMatrix reduced;
  BinMatrix transform;
  /// pivot_cols[r] is the pivot column of reduced row r, for r < rank().
  std::vector<std::size_t> pivot_cols;

  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

Elimination eliminate(const BinMatrix& m);

std::size_t rank(const BinMatrix& m);

/// Basis of the null space {x : m x = 0}; one vector per free column, in
/// increasing free-column order.
std::vector<BinVec> kernel_basis(const BinMatrix& m);

/// Rows of the input whose sum is the zero row but whose right-hand sides sum
/// to one: a certificate that m x = b has no solution.
struct InconsistentRows {
  std::vector<std::size_t> rows;
};

/// Particular solution of m x = b with all free variables set to zero, or a
/// certificate of inconsistency. Throws std::invalid_argument when
/// b.size() != m.rows().
std::variant<BinVec, InconsistentRows> solve_affine(const BinMatrix& m, const BinVec& b);
std::optional<BinVec> solve_particular(const BinMatrix& m, const BinVec& b);

/// Matrix-vector product modulo 2. Throws std::invalid_argument on size mismatch.
BinVec matvec(const BinMatrix& m, const BinVec& v);

/// Re-parameterization of the affine space {sum v_i kernel_i + xi_bar} in
/// which k designated coordinates (the head) are free and the remaining n-k
/// coordinates are affine functions of them.
///
/// Writing x_P[i] = x[perm[i]], every member of the space satisfies
///   x_P[0..k)  = v'
///   x_P[k..n)  = h * v' + xi_bar_prime[k..n)
/// and every v' in {0,1}^k produces a member. The first k entries of
/// xi_bar_prime are zero.
struct StandardForm {
  /// perm[i] is the original coordinate placed at permuted position i.
  std::vector<std::size_t> perm;
  /// (n-k) x k.
  BinMatrix h;
  /// Offset in permuted order, length n.
  BinVec xi_bar_prime;

  std::size_t k() const noexcept { return h.cols(); }
  std::size_t n() const noexcept { return perm.size(); }
  std::span<const std::size_t> head() const noexcept { return std::span(perm).first(k()); }

  /// Assignment in original coordinate order for the given free values.
  BinVec expand(const BinVec& v_prime) const;
};

/// Standard form whose head is chosen by the leftmost-pivot rule. Throws
/// std::invalid_argument if the kernel vectors are dependent or have
/// inconsistent lengths.
StandardForm standard_form(std::span<const BinVec> kernel, const BinVec& xi_bar);

/// Standard form with an explicit head. Throws std::invalid_argument unless
/// `head` has exactly kernel.size() distinct coordinates on which the
/// kernel vectors restrict to an invertible k x k matrix.
StandardForm standard_form(std::span<const BinVec> kernel, const BinVec& xi_bar,
                           std::span<const std::size_t> head);

}  // namespace xorsat
