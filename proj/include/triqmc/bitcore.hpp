#pragma once

// Exact linear algebra over the two-element field: bit vectors, bit
// matrices, dyadic digit expansions and the n x 2 index matrices that
// address subtriangles and Walsh frequencies.

#include <cstdint>
#include <string>
#include <vector>

namespace triqmc {

/// One row of an index matrix: a pair in {0,1}^2.
/// `a` is column 1, `b` is column 2.
struct BitPair {
  std::uint8_t a = 0;
  std::uint8_t b = 0;

  constexpr bool is_zero() const { return a == 0 && b == 0; }
  /// 2-bit value with column 1 in the low bit; used as a table index.
  constexpr int index() const { return a | (b << 1); }
  static constexpr BitPair from_index(int idx) {
    return BitPair{static_cast<std::uint8_t>(idx & 1),
                   static_cast<std::uint8_t>((idx >> 1) & 1)};
  }
  friend constexpr BitPair operator^(BitPair x, BitPair y) {
    return BitPair{static_cast<std::uint8_t>(x.a ^ y.a),
                   static_cast<std::uint8_t>(x.b ^ y.b)};
  }
  friend constexpr bool operator==(BitPair, BitPair) = default;
};

/// Finite ordered sequence of bits. Entries are 0-based; the empty
/// vector is legal and represents 0.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length) : bits_(length, 0) {}
  BitVector(std::initializer_list<int> bits);

  std::size_t size() const { return bits_.size(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, int bit);
  void push_back(int bit);

  /// Componentwise XOR; lengths must agree.
  friend BitVector operator^(const BitVector& x, const BitVector& y);
  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Dyadic expansion of h, least significant digit first, zero-padded to
/// at least min_len entries: h = sum_a bits[a] * 2^a.
BitVector dyadic_expansion(std::uint64_t h, std::size_t min_len = 0);

/// Number of significant dyadic digits of h (0 for h = 0).
int digit_count(std::uint64_t h);

/// Dense rows x cols matrix over F2.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, int bit);

  /// entry(k,l) = 0 for all k > l.
  bool is_upper_triangular() const;

  BitMatrix transposed() const;

  /// Rows as strings of '0'/'1', one row per line, no padding.
  std::string to_text() const;
  /// Parses the to_text encoding. Throws std::invalid_argument on
  /// ragged rows or characters outside {0,1}.
  static BitMatrix from_text(const std::string& text);

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Matrix-vector product over F2 (XOR accumulation).
/// Requires v.size() == C.cols().
BitVector matvec(const BitMatrix& C, const BitVector& v);

/// Element of F2^(n x 2): n rows of pairs. Serves both as a point
/// address X and as a Walsh frequency index K.
///
/// Rows are 1-based, matching the index conventions of the partition
/// and Walsh maps. Internally row i occupies bits 2(i-1) (column 1)
/// and 2(i-1)+1 (column 2) of a 64-bit word, so encoding() is the
/// row-major integer used to index dense tables. Row count is capped
/// at 31.
class IndexMatrix {
 public:
  IndexMatrix() = default;
  explicit IndexMatrix(int rows);
  static IndexMatrix from_encoding(std::uint64_t bits, int rows);
  static IndexMatrix from_columns(const BitVector& k1, const BitVector& k2);

  int rows() const { return rows_; }
  std::uint64_t encoding() const { return bits_; }
  bool is_zero() const { return bits_ == 0; }

  BitPair row(int i) const;            // 1 <= i <= rows
  void set_row(int i, BitPair value);  // 1 <= i <= rows
  BitVector column(int j) const;       // j = 1 or 2

  /// Returns a copy with row i replaced by row(i) ^ kappa. Involutive.
  IndexMatrix xor_row(int i, BitPair kappa) const;

  /// Componentwise XOR; row counts must agree.
  friend IndexMatrix operator^(const IndexMatrix& x, const IndexMatrix& y);
  friend bool operator==(const IndexMatrix&, const IndexMatrix&) = default;

  /// Rows as two-character strings of '0'/'1', one row per line.
  std::string to_text() const;
  static IndexMatrix from_text(const std::string& text);

  static constexpr int kMaxRows = 31;

 private:
  std::uint64_t bits_ = 0;
  int rows_ = 0;
  void check_row(int i) const;
};

/// Free-function form of IndexMatrix::xor_row.
inline IndexMatrix xor_row(const IndexMatrix& X, int i, BitPair kappa) {
  return X.xor_row(i, kappa);
}

}  // namespace triqmc
