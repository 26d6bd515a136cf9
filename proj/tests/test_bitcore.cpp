#include <doctest.h>

#include <random>
#include <stdexcept>

#include "triqmc/bitcore.hpp"

using namespace triqmc;

TEST_CASE("dyadic expansion digits") {
  CHECK(dyadic_expansion(0, 3) == BitVector{0, 0, 0});
  CHECK(dyadic_expansion(5, 0) == BitVector{1, 0, 1});
  const BitVector six = dyadic_expansion(6, 5);
  REQUIRE(six.size() == 5);
  // Oracle: the digits must reassemble the input value.
  std::uint64_t back = 0;
  for (std::size_t a = 0; a < six.size(); ++a) back += static_cast<std::uint64_t>(six[a]) << a;
  CHECK(back == 6);
  CHECK(six == BitVector{0, 1, 1, 0, 0});
}

TEST_CASE("dyadic expansion round-trips below 2^16") {
  for (std::uint64_t h = 0; h < (std::uint64_t{1} << 16); ++h) {
    const BitVector digits = dyadic_expansion(h);
    std::uint64_t back = 0;
    for (std::size_t a = 0; a < digits.size(); ++a) back += static_cast<std::uint64_t>(digits[a]) << a;
    REQUIRE(back == h);
  }
}

TEST_CASE("matvec over F2") {
  CHECK(matvec(BitMatrix::identity(3), BitVector{1, 0, 1}) == BitVector{1, 0, 1});

  BitMatrix ones(2, 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) ones.set(r, c, 1);
  CHECK(matvec(ones, BitVector{1, 1}) == BitVector{0, 0});

  BitMatrix c(2, 2);
  c.set(0, 0, 1);
  c.set(0, 1, 1);
  c.set(1, 1, 1);
  const BitVector v{1, 0};
  // Oracle: row-wise XOR dot product.
  BitVector expected(2);
  for (std::size_t r = 0; r < 2; ++r) {
    int acc = 0;
    for (std::size_t col = 0; col < 2; ++col) acc ^= c.at(r, col) & v[col];
    expected.set(r, acc);
  }
  CHECK(matvec(c, v) == expected);
  CHECK(matvec(c, v) == BitVector{1, 0});

  CHECK_THROWS_AS(matvec(c, BitVector{1, 0, 1}), std::invalid_argument);
}

TEST_CASE("matvec is linear (exhaustive, 5 columns)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    BitMatrix c(3, 5);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t col = 0; col < 5; ++col) c.set(r, col, static_cast<int>(rng() & 1));
    for (std::uint32_t u = 0; u < 32; ++u) {
      for (std::uint32_t v = 0; v < 32; ++v) {
        BitVector bu(5), bv(5);
        for (int i = 0; i < 5; ++i) {
          bu.set(i, (u >> i) & 1);
          bv.set(i, (v >> i) & 1);
        }
        REQUIRE(matvec(c, bu ^ bv) == (matvec(c, bu) ^ matvec(c, bv)));
      }
    }
  }
}

TEST_CASE("xor_row") {
  IndexMatrix x(2);
  x.set_row(2, BitPair{1, 0});
  const IndexMatrix flipped = x.xor_row(2, BitPair{1, 1});
  CHECK(flipped.row(1) == BitPair{0, 0});
  CHECK(flipped.row(2) == BitPair{0, 1});
  CHECK(x.xor_row(1, BitPair{0, 0}) == x);
  CHECK_THROWS_AS(x.xor_row(3, BitPair{1, 0}), std::out_of_range);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    IndexMatrix m = IndexMatrix::from_encoding(rng() & ((std::uint64_t{1} << (2 * n)) - 1), n);
    const int i = 1 + static_cast<int>(rng() % n);
    const BitPair kappa = BitPair::from_index(static_cast<int>(rng() % 4));
    REQUIRE(m.xor_row(i, kappa).xor_row(i, kappa) == m);
    const int j = 1 + static_cast<int>(rng() % n);
    const BitPair kappa2 = BitPair::from_index(static_cast<int>(rng() % 4));
    if (i != j)
      REQUIRE(m.xor_row(i, kappa).xor_row(j, kappa2) == m.xor_row(j, kappa2).xor_row(i, kappa));
  }
}

TEST_CASE("bit matrix text encoding") {
  BitMatrix m(3, 4);
  m.set(0, 0, 1);
  m.set(1, 3, 1);
  m.set(2, 2, 1);
  CHECK(m.to_text() == "1000\n0001\n0010\n");
  CHECK(BitMatrix::from_text(m.to_text()) == m);
  CHECK_THROWS_AS(BitMatrix::from_text("10\n0"), std::invalid_argument);
  CHECK_THROWS_AS(BitMatrix::from_text("10\n2x"), std::invalid_argument);

  CHECK(BitMatrix::identity(4).is_upper_triangular());
  BitMatrix lower(2, 2);
  lower.set(1, 0, 1);
  CHECK_FALSE(lower.is_upper_triangular());
}

TEST_CASE("index matrix encoding and columns") {
  IndexMatrix x(3);
  x.set_row(1, BitPair{1, 0});
  x.set_row(3, BitPair{0, 1});
  CHECK(x.encoding() == (1u | (2u << 4)));
  CHECK(IndexMatrix::from_encoding(x.encoding(), 3) == x);
  CHECK(x.column(1) == BitVector{1, 0, 0});
  CHECK(x.column(2) == BitVector{0, 0, 1});
  CHECK(IndexMatrix::from_columns(x.column(1), x.column(2)) == x);
  CHECK(x.to_text() == "10\n00\n01\n");
  CHECK(IndexMatrix::from_text(x.to_text()) == x);
  CHECK_THROWS_AS(IndexMatrix::from_encoding(16, 2), std::invalid_argument);

  // n = 0 is the unique element of F2^(0 x 2).
  const IndexMatrix empty(0);
  CHECK(empty.rows() == 0);
  CHECK(empty.encoding() == 0);
}
