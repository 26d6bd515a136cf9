#include <doctest.h>

#include <stdexcept>
#include <algorithm>

#include "triqmc/quality.hpp"

using namespace triqmc;

TEST_CASE("mu1 of bit vectors") {
  CHECK(mu1(BitVector{0, 0, 0}) == 0);
  CHECK(mu1(BitVector{}) == 0);
  CHECK(mu1(BitVector{1, 0, 1, 0}) == 3);
  // Zero padding never changes the weight.
  BitVector padded{1, 0, 1, 0};
  padded.push_back(0);
  padded.push_back(0);
  CHECK(mu1(padded) == 3);
}

TEST_CASE("matrix weights") {
  CHECK(mu1_matrix(IndexMatrix(3)) == 0);
  CHECK(v_weight(IndexMatrix(3)) == 0);

  // Columns (1,0,0) and (0,0,1): weights 1 and 3.
  IndexMatrix k(3);
  k.set_row(1, BitPair{1, 0});
  k.set_row(3, BitPair{0, 1});
  CHECK(mu1_matrix(k) == 4);
  CHECK(v_weight(k) == 3);

  // mu1(K) >= v(K) and v(K) >= mu1(K)/2, exhaustively for n <= 4.
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t enc = 0; enc < (std::uint64_t{1} << (2 * n)); ++enc) {
      const IndexMatrix m = IndexMatrix::from_encoding(enc, n);
      const int mu = mu1_matrix(m);
      const int v = v_weight(m);
      REQUIRE(mu >= v);
      REQUIRE(2 * v >= mu);
      // v equals the larger column weight.
      REQUIRE(v == std::max(mu1(m.column(1)), mu1(m.column(2))));
    }
  }
}

TEST_CASE("dual net kernels") {
  // basu-owen, n = m = 2: the dual is exactly {K : row 1 = (0,0)}.
  const DualNet dual = dual_net(basu_owen_pair(), 2, 2);
  CHECK(dual.dimension() == 2);
  CHECK(dual.size() == 4);
  for (std::uint64_t enc = 0; enc < 16; ++enc) {
    const IndexMatrix k = IndexMatrix::from_encoding(enc, 2);
    CHECK(dual.contains(k) == k.row(1).is_zero());
  }

  // m = 0: no constraints, the dual is everything.
  const DualNet full = dual_net(pascal_pair(), 3, 0);
  CHECK(full.dimension() == 6);
  CHECK(full.rank == 0);

  // Rank-nullity.
  for (int n = 1; n <= 4; ++n)
    for (int m = 0; m <= n; ++m)
      for (const GeneratorPair& gen : {basu_owen_pair(), pascal_pair()}) {
        const DualNet d = dual_net(gen, n, m);
        CHECK(d.size() * (std::uint64_t{1} << d.rank) == (std::uint64_t{1} << (2 * n)));
      }
}

TEST_CASE("dual membership matches the definition predicate") {
  for (const GeneratorPair& gen : {basu_owen_pair(), pascal_pair()}) {
    for (int n = 1; n <= 4; ++n) {
      for (int m = 0; m <= n; ++m) {
        const DualNet dual = dual_net(gen, n, m);
        const BitMatrix c1t = gen.block(1, n, m).transposed();
        const BitMatrix c2t = gen.block(2, n, m).transposed();
        for (std::uint64_t enc = 0; enc < (std::uint64_t{1} << (2 * n)); ++enc) {
          const IndexMatrix k = IndexMatrix::from_encoding(enc, n);
          const BitVector lhs = matvec(c1t, k.column(1)) ^ matvec(c2t, k.column(2));
          bool in_dual = true;
          for (std::size_t r = 0; r < lhs.size(); ++r)
            if (lhs[r]) in_dual = false;
          REQUIRE(dual.contains(k) == in_dual);
        }
      }
    }
  }
}

TEST_CASE("minimum weights") {
  CHECK(min_weights(dual_net(basu_owen_pair(), 2, 2)).v_min == 2);

  for (int m = 1; m <= 12; ++m) {
    const WeightReport rep = min_weights(dual_net(basu_owen_pair(), m, m));
    CHECK(rep.v_min == (m % 2 == 1 ? (m + 1) / 2 : m / 2 + 1));
    CHECK(rep.t == (m + 1) / 2);  // ceil(m/2)
  }
  for (int m = 1; m <= 10; ++m) {
    const WeightReport rep = min_weights(dual_net(pascal_pair(), m, m));
    CHECK(rep.mu1_min == m + 1);
    CHECK(rep.t == 0);
  }

  // Spectrum counts every nonzero dual element.
  const WeightReport rep = min_weights(dual_net(pascal_pair(), 6, 6));
  std::uint64_t total = 0;
  for (std::uint64_t c : rep.v_spectrum) total += c;
  CHECK(total + 1 == dual_net(pascal_pair(), 6, 6).size());
}

TEST_CASE("t-value bound") {
  const WeightReport bo4 = min_weights(dual_net(basu_owen_pair(), 4, 4));
  CHECK(bo4.t == 2);
  CHECK(bo4.v_min == 3);
  CHECK(check_tvalue_bound(bo4, 4));

  const WeightReport pas6 = min_weights(dual_net(pascal_pair(), 6, 6));
  CHECK(pas6.t == 0);
  CHECK(pas6.v_min >= 4);
  CHECK(check_tvalue_bound(pas6, 6));

  // Degenerate m = 0 with an empty dual is vacuously fine.
  const WeightReport empty = min_weights(dual_net(pascal_pair(), 0, 0));
  CHECK(empty.empty_dual());
  CHECK(empty.t == 0);
  CHECK(check_tvalue_bound(empty, 0));
}

TEST_CASE("enumeration capacity guard") {
  // m = 0 at n = 13 gives a 26-dimensional dual, beyond the cap.
  CHECK_THROWS_AS(min_weights(dual_net(pascal_pair(), 13, 0)), std::length_error);
}
