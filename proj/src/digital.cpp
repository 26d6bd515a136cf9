#include "triqmc/digital.hpp"

#include <stdexcept>
#include <string>

namespace triqmc {

int GeneratorPair::entry(int j, int k, int l) const {
  if ((j != 1 && j != 2) || k < 1 || l < 1)
    throw std::invalid_argument("GeneratorPair::entry: bad index");
  switch (kind_) {
    case GeneratorKind::BasuOwen:
      return (j == 1 ? l == 2 * k - 1 : l == 2 * k) ? 1 : 0;
    case GeneratorKind::Pascal: {
      if (j == 1) return k == l ? 1 : 0;
      // binom(l-1, k-1) mod 2 by Lucas: 1 iff the bits of k-1 are a
      // subset of the bits of l-1.
      const std::uint64_t a = static_cast<std::uint64_t>(l - 1);
      const std::uint64_t b = static_cast<std::uint64_t>(k - 1);
      return (a & b) == b ? 1 : 0;
    }
    case GeneratorKind::User: {
      const BitMatrix& c = (j == 1) ? c1_ : c2_;
      if (static_cast<std::size_t>(k) > c.rows() || static_cast<std::size_t>(l) > c.cols())
        return 0;
      return c.at(k - 1, l - 1);
    }
  }
  return 0;
}

BitMatrix GeneratorPair::block(int j, int n, int m) const {
  BitMatrix out(n, m);
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= m; ++l)
      if (entry(j, k, l)) out.set(k - 1, l - 1, 1);
  return out;
}

int GeneratorPair::row_support(std::uint64_t h) const {
  const int a = digit_count(h);
  if (kind_ == GeneratorKind::BasuOwen) return (a + 1) / 2;
  return a;  // upper triangular: row k needs a digit in column >= k
}

std::optional<std::uint64_t> GeneratorPair::max_points() const {
  if (kind_ != GeneratorKind::User) return std::nullopt;
  if (c1_.cols() >= 63) return std::nullopt;
  return std::uint64_t{1} << c1_.cols();
}

GeneratorPair basu_owen_pair() {
  GeneratorPair g;
  g.kind_ = GeneratorKind::BasuOwen;
  return g;
}

GeneratorPair pascal_pair() {
  GeneratorPair g;
  g.kind_ = GeneratorKind::Pascal;
  return g;
}

GeneratorPair user_pair(BitMatrix c1, BitMatrix c2) {
  if (c1.rows() != c2.rows() || c1.cols() != c2.cols())
    throw std::invalid_argument("user_pair: matrices must share dimensions");
  if (c1.rows() == 0 || c1.cols() == 0)
    throw std::invalid_argument("user_pair: empty matrix");
  if (c1.rows() < c1.cols())
    throw std::invalid_argument("user_pair: need at least as many rows as columns");
  if (!c1.is_upper_triangular() || !c2.is_upper_triangular())
    throw std::invalid_argument("user_pair: matrices must be upper triangular");
  GeneratorPair g;
  g.kind_ = GeneratorKind::User;
  g.c1_ = std::move(c1);
  g.c2_ = std::move(c2);
  return g;
}

GeneratorPair parse_generator_file(const std::string& text) {
  // Two matrices separated by the first blank line.
  std::size_t split = std::string::npos;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::size_t len = eol - pos;
    if (len > 0 && text[pos + len - 1] == '\r') --len;
    if (len == 0 && pos > 0) {
      split = pos;
      break;
    }
    pos = eol + 1;
  }
  if (split == std::string::npos)
    throw std::invalid_argument("generator file: expected two matrices separated by a blank line");
  return user_pair(BitMatrix::from_text(text.substr(0, split)),
                   BitMatrix::from_text(text.substr(split)));
}

SequenceElement sequence_element(const GeneratorPair& gen, std::uint64_t h, int n) {
  if (n < 0 || n > IndexMatrix::kMaxRows)
    throw std::invalid_argument("sequence_element: bad precision");
  if (const auto cap = gen.max_points(); cap && h >= *cap)
    throw std::length_error("sequence_element: h exceeds the generator's digit capacity");

  const int a = digit_count(h);
  const int support = gen.row_support(h);
  const int n_full = std::max(n, support);
  if (n_full > IndexMatrix::kMaxRows)
    throw std::length_error("sequence_element: required precision exceeds row cap");

  const BitVector digits = dyadic_expansion(h, static_cast<std::size_t>(std::max(a, 1)));
  IndexMatrix full(n_full);
  for (int j = 1; j <= 2; ++j) {
    for (int k = 1; k <= n_full; ++k) {
      int bit = 0;
      for (int l = 1; l <= a; ++l) bit ^= gen.entry(j, k, l) & digits[l - 1];
      if (bit) {
        BitPair row = full.row(k);
        if (j == 1) row.a = 1; else row.b = 1;
        full.set_row(k, row);
      }
    }
  }

  int nu = 0;
  for (int k = n_full; k >= 1; --k) {
    if (!full.row(k).is_zero()) {
      nu = k;
      break;
    }
  }
  if (nu > n)
    throw std::length_error("sequence_element: precision " + std::to_string(n) +
                            " drops nonzero rows (need " + std::to_string(nu) + ")");

  IndexMatrix out(n);
  for (int k = 1; k <= std::min(n, n_full); ++k) out.set_row(k, full.row(k));
  return SequenceElement{out, nu};
}

std::vector<IndexMatrix> net_addresses(const NetSpec& spec) {
  if (spec.m < 0 || spec.n < spec.m)
    throw std::invalid_argument("net_addresses: need n >= m >= 0");
  if (spec.m >= 63) throw std::length_error("net_addresses: m too large");
  std::vector<IndexMatrix> out;
  out.reserve(std::size_t{1} << spec.m);
  for (std::uint64_t h = 0; h < (std::uint64_t{1} << spec.m); ++h)
    out.push_back(sequence_element(spec.gen, h, spec.n).X);
  return out;
}

std::vector<Vec2> triangle_points(const GeneratorPair& gen, const Triangle& t,
                                  std::uint64_t n_points) {
  if (n_points < 1) throw std::invalid_argument("triangle_points: need at least one point");
  const CenteredFrame frame(t);
  std::vector<Vec2> out;
  out.reserve(n_points);
  for (std::uint64_t h = 0; h < n_points; ++h) {
    const auto [X, nu] = sequence_element(gen, h, gen.row_support(h));
    out.push_back(frame.to_original(phi(X, nu, frame)));
  }
  return out;
}

}  // namespace triqmc
