#include "triqmc/partition.hpp"

#include <cmath>
#include <stdexcept>

namespace triqmc {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }
double distance(Vec2 u, Vec2 v) { return norm(u - v); }

double Triangle::area() const {
  return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double Triangle::diameter() const {
  return std::max({distance(a, b), distance(b, c), distance(c, a)});
}

std::array<double, 3> Triangle::barycentric(Vec2 p) const {
  const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  const double w1 = ((b.x - p.x) * (c.y - p.y) - (c.x - p.x) * (b.y - p.y)) / det;
  const double w2 = ((c.x - p.x) * (a.y - p.y) - (a.x - p.x) * (c.y - p.y)) / det;
  return {w1, w2, 1.0 - w1 - w2};
}

bool Triangle::contains(Vec2 p, double tol) const {
  const auto w = barycentric(p);
  return w[0] >= -tol && w[1] >= -tol && w[2] >= -tol;
}

Triangle unit_triangle() { return Triangle{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}; }

bool degenerate(const Triangle& t) { return !(t.area() > 0.0); }

CenteredFrame::CenteredFrame(const Triangle& t) {
  if (degenerate(t)) throw std::invalid_argument("CenteredFrame: degenerate triangle");
  shift_ = t.centroid();
  e_[BitPair{0, 0}.index()] = Vec2{0.0, 0.0};
  e_[BitPair{1, 0}.index()] = t.a - shift_;
  e_[BitPair{0, 1}.index()] = t.b - shift_;
  e_[BitPair{1, 1}.index()] = t.c - shift_;
}

Triangle subtriangle(const Triangle& t, BitPair xi) {
  const Vec2 ab = 0.5 * (t.a + t.b);
  const Vec2 bc = 0.5 * (t.b + t.c);
  const Vec2 ca = 0.5 * (t.c + t.a);
  switch (xi.index()) {
    case 0: return Triangle{bc, ca, ab};      // (0,0) medial
    case 1: return Triangle{t.a, ab, ca};     // (1,0) corner A
    case 2: return Triangle{ab, t.b, bc};     // (0,1) corner B
    default: return Triangle{ca, bc, t.c};    // (1,1) corner C
  }
}

int eta(const IndexMatrix& X, int i) {
  if (i < 1 || i > X.rows() + 1) throw std::out_of_range("eta: index out of range");
  int zeros = 0;
  for (int a = 1; a < i; ++a)
    if (X.row(a).is_zero()) ++zeros;
  return (zeros % 2 == 0) ? 1 : -1;
}

Vec2 phi(const IndexMatrix& X, int i, const CenteredFrame& frame) {
  if (i < 0 || i > X.rows()) throw std::out_of_range("phi: index out of range");
  Vec2 acc{0.0, 0.0};
  double scale = 1.0;
  int sign = 1;
  for (int j = 1; j <= i; ++j) {
    scale *= 0.5;  // exact
    acc = acc + (sign * scale) * frame.e(X.row(j));
    if (X.row(j).is_zero()) sign = -sign;
  }
  return acc;
}

Triangle subregion(const IndexMatrix& X, int i, const Triangle& t) {
  if (i < 0 || i > X.rows()) throw std::out_of_range("subregion: index out of range");
  Triangle cur = t;
  for (int j = 1; j <= i; ++j) cur = subtriangle(cur, X.row(j));
  return cur;
}

Triangle subregion_closed_form(const IndexMatrix& X, int i, const Triangle& t) {
  if (i < 0 || i > X.rows()) throw std::out_of_range("subregion_closed_form: index out of range");
  const CenteredFrame frame(t);
  const Vec2 center = phi(X, i, frame);
  const double scale = eta(X, i + 1) * std::ldexp(1.0, -i);
  const auto vertex = [&](BitPair sigma) {
    return frame.to_original(center + scale * frame.e(sigma));
  };
  return Triangle{vertex(BitPair{1, 0}), vertex(BitPair{0, 1}), vertex(BitPair{1, 1})};
}

Vec2 tau(BitPair kappa, BitPair kappa_prime, const CenteredFrame& frame) {
  const Vec2 mixed = frame.e(kappa ^ kappa_prime);
  if (!kappa_prime.is_zero() && kappa_prime != kappa)
    return mixed - frame.e(kappa_prime);
  return mixed + frame.e(kappa_prime);
}

ShiftTableRow sigma_p1_p2(BitPair kappa) {
  static constexpr std::array<ShiftTableRow, 4> kTable = {{
      {{1, 1}, {0, 0}, {1, 1}},  // kappa = (0,0)
      {{1, 0}, {1, 1}, {0, 1}},  // kappa = (1,0)
      {{0, 1}, {1, 1}, {1, 0}},  // kappa = (0,1)
      {{0, 1}, {1, 0}, {1, 1}},  // kappa = (1,1)
  }};
  return kTable[kappa.index()];
}

bool in_P(BitPair kappa, BitPair xi) {
  const ShiftTableRow row = sigma_p1_p2(kappa);
  return xi == row.p1 || xi == row.p2;
}

int wal_pair(BitPair kappa, BitPair xi) {
  return ((kappa.a & xi.a) ^ (kappa.b & xi.b)) ? -1 : 1;
}

Vec2 point_xor_row(Vec2 y, const IndexMatrix& X, int i, BitPair kappa,
                   const Triangle& t) {
  if (i < 1 || i > X.rows()) throw std::out_of_range("point_xor_row: index out of range");
  const Triangle cell = subregion(X, X.rows(), t);
  if (!cell.contains(y)) throw std::domain_error("point_xor_row: y outside T^(n)(X)");

  const CenteredFrame frame(t);
  const BitPair xi = X.row(i);
  const Vec2 offset = (eta(X, i) * std::ldexp(1.0, -i)) * tau(kappa, xi, frame);
  if (!xi.is_zero() && xi != kappa) return y + offset;
  const Vec2 pivot = frame.to_original(phi(X, i - 1, frame));
  return 2.0 * pivot - y + offset;
}

}  // namespace triqmc
