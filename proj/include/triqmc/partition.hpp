#pragma once

// Triangle geometry: the recursive 4-way partition T^(n)(X), the sign
// sequence eta_i(X), the center map phi^(n), and the point-level shift
// maps y (+)_i kappa with their tau / sigma / p1 / p2 tables.

#include <array>

#include "triqmc/bitcore.hpp"

namespace triqmc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 u, Vec2 v) { return {u.x + v.x, u.y + v.y}; }
  friend constexpr Vec2 operator-(Vec2 u, Vec2 v) { return {u.x - v.x, u.y - v.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend constexpr Vec2 operator-(Vec2 v) { return {-v.x, -v.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

double norm(Vec2 v);
double distance(Vec2 u, Vec2 v);

/// Ordered vertex triple. Order is semantic: the recursive partition
/// composes through the vertex order produced by subtriangle().
struct Triangle {
  Vec2 a, b, c;

  friend constexpr bool operator==(const Triangle&, const Triangle&) = default;

  Vec2 centroid() const { return (1.0 / 3.0) * (a + b + c); }
  double area() const;
  /// Longest edge length (equals the diameter for a triangle).
  double diameter() const;
  /// Barycentric coordinates of p with respect to (a, b, c).
  std::array<double, 3> barycentric(Vec2 p) const;
  /// All barycentric coordinates >= -tol.
  bool contains(Vec2 p, double tol = kInsideTol) const;

  static constexpr double kInsideTol = 1e-9;
};

/// Default domain used by the CLI when no triangle is given.
Triangle unit_triangle();

bool degenerate(const Triangle& t);

/// Vertex vectors e(sigma) of the triangle re-centered at its centroid:
/// e(1,0) = A - G, e(0,1) = B - G, e(1,1) = C - G and e(0,0) = 0.
/// Public points stay in original coordinates; the frame carries the
/// shift between the two.
class CenteredFrame {
 public:
  explicit CenteredFrame(const Triangle& t);

  Vec2 e(BitPair sigma) const { return e_[sigma.index()]; }
  Vec2 origin_shift() const { return shift_; }
  Vec2 to_original(Vec2 centered) const { return centered + shift_; }
  Vec2 to_centered(Vec2 original) const { return original - shift_; }

 private:
  std::array<Vec2, 4> e_{};
  Vec2 shift_{};
};

/// One quarter of T: medial triangle for (0,0), corner triangles
/// otherwise, with the vertex order the recursion depends on.
Triangle subtriangle(const Triangle& t, BitPair xi);

/// Orientation sign: eta_1 = 1, eta_i = (-1)^(# rows a < i equal to (0,0)).
/// Valid for 1 <= i <= X.rows() + 1.
int eta(const IndexMatrix& X, int i);

/// Center of the level-i subregion, in centered coordinates:
/// phi^(i)(X) = sum_{j<=i} eta_j(X) 2^-j e(row_j). phi^(0) = 0.
Vec2 phi(const IndexMatrix& X, int i, const CenteredFrame& frame);

/// Level-i subregion by i-fold composition of subtriangle (the
/// reference implementation).
Triangle subregion(const IndexMatrix& X, int i, const Triangle& t);

/// Same subregion by the closed form phi^(i)(X) + eta_{i+1}(X) 2^-i T,
/// vertices ordered (phi_X(1,0), phi_X(0,1), phi_X(1,1)).
Triangle subregion_closed_form(const IndexMatrix& X, int i, const Triangle& t);

/// tau(kappa, kappa') = e(kappa ^ kappa') - e(kappa') if kappa' is
/// neither 0 nor kappa, else e(kappa ^ kappa') + e(kappa').
Vec2 tau(BitPair kappa, BitPair kappa_prime, const CenteredFrame& frame);

struct ShiftTableRow {
  BitPair sigma;
  BitPair p1;
  BitPair p2;
};

/// The sigma / p1 / p2 table. P(kappa) = {p1, p2}, N(kappa) = complement.
ShiftTableRow sigma_p1_p2(BitPair kappa);

bool in_P(BitPair kappa, BitPair xi);
inline bool in_N(BitPair kappa, BitPair xi) { return !in_P(kappa, xi); }

/// Walsh character of a single pair: (-1)^(kappa . xi).
int wal_pair(BitPair kappa, BitPair xi);

/// The point-level shift y (+)_i kappa restricted to T^(n)(X):
/// a translation by 2^-i eta_i(X) tau(kappa, xi_i) when xi_i is outside
/// {0, kappa}, otherwise the reflection through 2 phi^(i-1)(X) plus the
/// same offset. For kappa != 0 the image is T^(n)(X (+)_i kappa).
/// Throws std::domain_error if y lies outside T^(n)(X) beyond tolerance.
Vec2 point_xor_row(Vec2 y, const IndexMatrix& X, int i, BitPair kappa,
                   const Triangle& t);

}  // namespace triqmc
