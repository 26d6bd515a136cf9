#pragma once

// Digital nets and sequences over F2: generator-matrix constructions,
// the address stream X(h) with its precision nu(h), and the mapped
// point stream in a triangle.

#include <cstdint>
#include <optional>
#include <vector>

#include "triqmc/bitcore.hpp"
#include "triqmc/partition.hpp"

namespace triqmc {

enum class GeneratorKind { BasuOwen, Pascal, User };

/// A pair of generating matrices (C1, C2), conceptually N x N with
/// finitely supported columns, realized by an entry rule (basu-owen,
/// pascal) or by stored finite upper-triangular matrices (user).
class GeneratorPair {
 public:
  GeneratorKind kind() const { return kind_; }

  /// C_j entry at row k, column l; 1-based, defined for all k, l >= 1.
  int entry(int j, int k, int l) const;

  /// Upper-left n x m block of C_j.
  BitMatrix block(int j, int n, int m) const;

  /// Rows below this index are zero in X(h), for every h' <= h.
  int row_support(std::uint64_t h) const;

  /// Largest h + 1 the pair can generate (2^m for stored user matrices
  /// with m columns; unbounded otherwise).
  std::optional<std::uint64_t> max_points() const;

  bool upper_triangular() const { return kind_ != GeneratorKind::BasuOwen; }

 private:
  friend GeneratorPair basu_owen_pair();
  friend GeneratorPair pascal_pair();
  friend GeneratorPair user_pair(BitMatrix c1, BitMatrix c2);
  GeneratorPair() = default;

  GeneratorKind kind_ = GeneratorKind::BasuOwen;
  BitMatrix c1_, c2_;  // populated for user pairs only
};

/// Digit de-interleaving: C1 picks even-indexed dyadic digits and C2 the
/// odd ones (row k of C1 has its single 1 in column 2k-1, row k of C2 in
/// column 2k).
GeneratorPair basu_owen_pair();

/// C1 = identity, C2 = Pascal matrix mod 2 (entry(k,l) = binom(l-1,k-1)
/// mod 2, upper triangular).
GeneratorPair pascal_pair();

/// User-supplied matrices; both must share dimensions n x m with n >= m
/// and be upper triangular. Entries outside the stored block are zero.
GeneratorPair user_pair(BitMatrix c1, BitMatrix c2);

/// Parses the CLI generator file format: two matrices in the bitcore
/// textual encoding separated by a blank line.
GeneratorPair parse_generator_file(const std::string& text);

struct NetSpec {
  GeneratorPair gen;
  int m = 0;  // log2 of point count
  int n = 0;  // row precision, n >= m
};

struct SequenceElement {
  IndexMatrix X;  // n-row truncation of X(h)
  int nu = 0;     // deepest nonzero row of the untruncated X(h)
};

/// X(h) truncated to n rows plus nu(h). Throws std::length_error when
/// the truncation would drop a nonzero row (n < row_support suffices to
/// avoid this).
SequenceElement sequence_element(const GeneratorPair& gen, std::uint64_t h, int n);

/// The 2^m addresses of the net, in h order.
std::vector<IndexMatrix> net_addresses(const NetSpec& spec);

/// First N points of the mapped sequence phi^(nu(h))(X(h)), in original
/// coordinates of t.
std::vector<Vec2> triangle_points(const GeneratorPair& gen, const Triangle& t,
                                  std::uint64_t n_points);

}  // namespace triqmc
