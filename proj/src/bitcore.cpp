#include "triqmc/bitcore.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace triqmc {

BitVector::BitVector(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("BitVector: entry not in {0,1}");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

void BitVector::set(std::size_t i, int bit) {
  if (i >= bits_.size()) throw std::out_of_range("BitVector::set: index out of range");
  if (bit != 0 && bit != 1) throw std::invalid_argument("BitVector::set: entry not in {0,1}");
  bits_[i] = static_cast<std::uint8_t>(bit);
}

void BitVector::push_back(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("BitVector::push_back: entry not in {0,1}");
  bits_.push_back(static_cast<std::uint8_t>(bit));
}

BitVector operator^(const BitVector& x, const BitVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("BitVector xor: length mismatch");
  BitVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.bits_[i] = x.bits_[i] ^ y.bits_[i];
  return out;
}

BitVector dyadic_expansion(std::uint64_t h, std::size_t min_len) {
  const std::size_t significant = static_cast<std::size_t>(std::bit_width(h));
  BitVector out(std::max(significant, min_len));
  for (std::size_t a = 0; a < significant; ++a) out.set(a, static_cast<int>((h >> a) & 1u));
  return out;
}

int digit_count(std::uint64_t h) { return std::bit_width(h); }

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, int bit) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("BitMatrix::set: index out of range");
  if (bit != 0 && bit != 1) throw std::invalid_argument("BitMatrix::set: entry not in {0,1}");
  data_[r * cols_ + c] = static_cast<std::uint8_t>(bit);
}

bool BitMatrix::is_upper_triangular() const {
  for (std::size_t r = 1; r < rows_; ++r)
    for (std::size_t c = 0; c < std::min(r, cols_); ++c)
      if (at(r, c)) return false;
  return true;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c)) out.set(c, r, 1);
  return out;
}

std::string BitMatrix::to_text() const {
  std::string out;
  out.reserve(rows_ * (cols_ + 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(at(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

BitMatrix BitMatrix::from_text(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lines.push_back(line);
  }
  if (lines.empty()) return BitMatrix();
  const std::size_t cols = lines[0].size();
  BitMatrix m(lines.size(), cols);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    if (lines[r].size() != cols)
      throw std::invalid_argument("BitMatrix::from_text: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const char ch = lines[r][c];
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("BitMatrix::from_text: entry not in {0,1}");
      m.set(r, c, ch - '0');
    }
  }
  return m;
}

BitVector matvec(const BitMatrix& C, const BitVector& v) {
  if (v.size() != C.cols()) throw std::invalid_argument("matvec: dimension mismatch");
  BitVector out(C.rows());
  for (std::size_t r = 0; r < C.rows(); ++r) {
    int acc = 0;
    for (std::size_t c = 0; c < C.cols(); ++c) acc ^= C.at(r, c) & v[c];
    out.set(r, acc);
  }
  return out;
}

IndexMatrix::IndexMatrix(int rows) : rows_(rows) {
  if (rows < 0 || rows > kMaxRows) throw std::invalid_argument("IndexMatrix: bad row count");
}

IndexMatrix IndexMatrix::from_encoding(std::uint64_t bits, int rows) {
  IndexMatrix m(rows);
  if (rows < kMaxRows && (bits >> (2 * rows)) != 0)
    throw std::invalid_argument("IndexMatrix::from_encoding: bits beyond row count");
  m.bits_ = bits;
  return m;
}

IndexMatrix IndexMatrix::from_columns(const BitVector& k1, const BitVector& k2) {
  if (k1.size() != k2.size())
    throw std::invalid_argument("IndexMatrix::from_columns: column length mismatch");
  IndexMatrix m(static_cast<int>(k1.size()));
  for (int i = 1; i <= m.rows_; ++i)
    m.set_row(i, BitPair{static_cast<std::uint8_t>(k1[i - 1]),
                         static_cast<std::uint8_t>(k2[i - 1])});
  return m;
}

void IndexMatrix::check_row(int i) const {
  if (i < 1 || i > rows_) throw std::out_of_range("IndexMatrix: row index out of range");
}

BitPair IndexMatrix::row(int i) const {
  check_row(i);
  const int shift = 2 * (i - 1);
  return BitPair::from_index(static_cast<int>((bits_ >> shift) & 3u));
}

void IndexMatrix::set_row(int i, BitPair value) {
  check_row(i);
  const int shift = 2 * (i - 1);
  bits_ = (bits_ & ~(std::uint64_t{3} << shift)) |
          (static_cast<std::uint64_t>(value.index()) << shift);
}

BitVector IndexMatrix::column(int j) const {
  if (j != 1 && j != 2) throw std::invalid_argument("IndexMatrix::column: j must be 1 or 2");
  BitVector out(static_cast<std::size_t>(rows_));
  for (int i = 1; i <= rows_; ++i) out.set(i - 1, j == 1 ? row(i).a : row(i).b);
  return out;
}

IndexMatrix IndexMatrix::xor_row(int i, BitPair kappa) const {
  check_row(i);
  IndexMatrix out = *this;
  out.bits_ ^= static_cast<std::uint64_t>(kappa.index()) << (2 * (i - 1));
  return out;
}

IndexMatrix operator^(const IndexMatrix& x, const IndexMatrix& y) {
  if (x.rows_ != y.rows_) throw std::invalid_argument("IndexMatrix xor: row count mismatch");
  IndexMatrix out(x.rows_);
  out.bits_ = x.bits_ ^ y.bits_;
  return out;
}

std::string IndexMatrix::to_text() const {
  std::string out;
  for (int i = 1; i <= rows_; ++i) {
    const BitPair p = row(i);
    out.push_back(p.a ? '1' : '0');
    out.push_back(p.b ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

IndexMatrix IndexMatrix::from_text(const std::string& text) {
  const BitMatrix m = BitMatrix::from_text(text);
  if (m.rows() > 0 && m.cols() != 2)
    throw std::invalid_argument("IndexMatrix::from_text: rows must have exactly two bits");
  IndexMatrix out(static_cast<int>(m.rows()));
  for (int i = 1; i <= out.rows(); ++i)
    out.set_row(i, BitPair{static_cast<std::uint8_t>(m.at(i - 1, 0)),
                           static_cast<std::uint8_t>(m.at(i - 1, 1))});
  return out;
}

}  // namespace triqmc
