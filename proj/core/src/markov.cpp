#include "colouring/markov.hpp"

#include <cmath>
#include <stdexcept>

namespace colouring {

Distribution3 TransitionMatrix::apply(const Distribution3& x) const {
  Distribution3 y;
  for (int i = 0; i < 3; ++i) {
    Q7 acc;
    for (int j = 0; j < 3; ++j) acc += m[i][j] * x.d[static_cast<size_t>(j)];
    y.d[static_cast<size_t>(i)] = acc;
  }
  return y;
}

TransitionMatrix TransitionMatrix::operator*(const TransitionMatrix& o) const {
  TransitionMatrix p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Q7 acc;
      for (int k = 0; k < 3; ++k) acc += m[i][k] * o.m[k][j];
      p.m[i][j] = acc;
    }
  return p;
}

bool TransitionMatrix::column_stochastic() const {
  for (int j = 0; j < 3; ++j) {
    Q7 sum;
    for (int i = 0; i < 3; ++i) {
      if (m[i][j].sign() < 0) return false;
      sum += m[i][j];
    }
    if (sum != Q7(1)) return false;
  }
  return true;
}

TransitionMatrix c_matrix(const Q7& z) {
  if (z.sign() < 0 || (z - Q7(1)).sign() > 0)
    throw std::domain_error("c_matrix: z outside [0, 1]");
  const Q7 half(Rational(1, 2), Rational(0));
  TransitionMatrix c;
  c.m[0][0] = (Q7(1) - z) * half;
  c.m[0][1] = Q7(0);
  c.m[0][2] = (Q7(2) - z) * half;
  c.m[1][0] = (z + Q7(1)) * half;
  c.m[1][1] = (Q7(1) - z) * half;
  c.m[1][2] = Q7(0);
  c.m[2][0] = Q7(0);
  c.m[2][1] = (z + Q7(1)) * half;
  c.m[2][2] = z * half;
  return c;
}

Distribution3 fixed_point() {
  const Q7 s7 = Q7::sqrt7();
  Distribution3 y;
  y.d = {Q7(3) - s7, Q7(3) - s7, Q7(2) * s7 - Q7(5)};

  // Exact certification: substitute into the three defining equations
  // (equivalently C_{y1} y = y).
  const Q7 half(Rational(1, 2), Rational(0));
  const Q7 &y1 = y.d[0], &y2 = y.d[1], &y3 = y.d[2];
  const Q7 e1 = half * y3 + half * ((Q7(1) - y1) * y1 + (Q7(1) - y1) * y3);
  const Q7 e2 = half * y1 + half * ((Q7(1) - y1) * y2 + y1 * y1);
  const Q7 e3 = half * y2 + half * (y1 * y3 + y1 * y2);
  if (!(e1 == y1 && e2 == y2 && e3 == y3))
    throw std::logic_error("fixed_point: substitution certificate failed");
  if (!(c_matrix(y1).apply(y) == y))
    throw std::logic_error("fixed_point: eigenvector certificate failed");
  if (!y.valid()) throw std::logic_error("fixed_point: not a distribution");

  // Independent cross-check: double-precision fixed-point iteration of
  // v <- C_{v1} v from the barycentre.
  double v[3] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  for (int it = 0; it < 400; ++it) {
    const double z = v[0];
    const double n0 = (1 - z) / 2 * v[0] + (2 - z) / 2 * v[2];
    const double n1 = (z + 1) / 2 * v[0] + (1 - z) / 2 * v[1];
    const double n2 = (z + 1) / 2 * v[1] + z / 2 * v[2];
    v[0] = n0;
    v[1] = n1;
    v[2] = n2;
  }
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v[i] - y.d[static_cast<size_t>(i)].to_double()) > 1e-12)
      throw std::logic_error("fixed_point: numeric cross-check diverged");
  }
  return y;
}

SpectrumResult chain_spectrum(const RandomColouringChain& chain) {
  if (!chain.admissible())
    throw std::domain_error("chain_spectrum: parameters outside [0, 1/2]");
  const Rational &p = chain.p, &q = chain.q, &r = chain.r;
  const Rational one(1);

  SpectrumResult res;
  // det(M - xI) for M = [[p,0,1-r],[1-p,q,0],[0,1-q,r]]:
  // (p-x)(q-x)(r-x) + (1-r)(1-q)(1-p).
  res.char_poly = {
      p * q * r + (one - r) * (one - q) * (one - p),
      -(q * r + q * p + p * r),
      p + q + r,
      Rational(-1),
  };
  const Rational at_one =
      res.char_poly[0] + res.char_poly[1] + res.char_poly[2] + res.char_poly[3];
  res.one_minus_x_divides = at_one.is_zero();
  if (!res.one_minus_x_divides) return res;

  res.quad_b = one - r - p - q;
  res.quad_d = r * p + r * q + q * p;
  // Remaining factor x^2 + b x + (b + d). For admissible parameters the
  // discriminant b^2 - 4(b + d) is never positive (with s = p + q + r and
  // minimal d at fixed s it equals (1 - s)^2 - 1 <= 0), so the roots are a
  // conjugate pair with squared norm b + d.
  const Rational disc = res.quad_b * res.quad_b - Rational(4) * (res.quad_b + res.quad_d);
  if (disc.sign() > 0)
    throw std::domain_error("chain_spectrum: positive discriminant (inadmissible chain)");
  res.subdominant_norm_sq = res.quad_b + res.quad_d;
  res.subdominant_below_one = res.subdominant_norm_sq < one;
  return res;
}

PathwayReport pathway_analysis() {
  PathwayReport rep;
  rep.stationary = fixed_point();
  const Distribution3& y = rep.stationary;

  const TransitionMatrix c = c_matrix(y.d[0]);
  const TransitionMatrix c2 = c * c;
  rep.c_cubed = c2 * c;
  rep.branch_v0 = c2.apply(c_matrix(Q7(0)).apply(y));
  rep.branch_v1 = c2.apply(c_matrix(Q7(1)).apply(y));

  for (int clamp = 0; clamp < 3; ++clamp) {
    // z = P(T2-descendant coloured c1 | confluence coloured c_clamp), the
    // (1, clamp) entry of the cubed chain; the T1-branch passed through the
    // confluence bit, C_1 for clamp c1 and C_0 otherwise.
    const Q7& z = rep.c_cubed.m[0][clamp];
    const Distribution3& branch = clamp == 0 ? rep.branch_v1 : rep.branch_v0;
    rep.recombination[static_cast<size_t>(clamp)] = c_matrix(z).apply(branch);
  }

  for (int i = 0; i < 3; ++i) {
    Q7 acc;
    for (int clamp = 0; clamp < 3; ++clamp)
      acc += y.d[static_cast<size_t>(clamp)] *
             rep.recombination[static_cast<size_t>(clamp)].d[static_cast<size_t>(i)];
    rep.final_dist.d[static_cast<size_t>(i)] = acc;
  }
  for (int i = 0; i < 3; ++i) {
    rep.discrepancy[static_cast<size_t>(i)] =
        rep.final_dist.d[static_cast<size_t>(i)] - y.d[static_cast<size_t>(i)];
    rep.discrepancy_sign[static_cast<size_t>(i)] = rep.discrepancy[static_cast<size_t>(i)].sign();
  }
  return rep;
}

bool RationalMatrix::column_stochastic() const {
  for (int j = 0; j < n; ++j) {
    Rational sum(0);
    for (int i = 0; i < n; ++i) {
      if (at(i, j).sign() < 0) return false;
      sum += at(i, j);
    }
    if (sum != Rational(1)) return false;
  }
  return true;
}

namespace {

/// Nullspace basis of a square rational matrix via fraction-exact
/// Gauss-Jordan elimination.
std::vector<std::vector<Rational>> nullspace(RationalMatrix m) {
  const int n = m.n;
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot_col(static_cast<size_t>(n), false);
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(m.a[static_cast<size_t>(piv) * n + j], m.a[static_cast<size_t>(row) * n + j]);
    const Rational inv = Rational(1) / m.at(row, col);
    for (int j = 0; j < n; ++j) m.at(row, j) *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      const Rational f = m.at(i, col);
      for (int j = 0; j < n; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivot_col_of_row.push_back(col);
    is_pivot_col[static_cast<size_t>(col)] = true;
    ++row;
  }

  std::vector<std::vector<Rational>> basis;
  for (int free_col = 0; free_col < n; ++free_col) {
    if (is_pivot_col[static_cast<size_t>(free_col)]) continue;
    std::vector<Rational> v(static_cast<size_t>(n), Rational(0));
    v[static_cast<size_t>(free_col)] = Rational(1);
    for (size_t rr = 0; rr < pivot_col_of_row.size(); ++rr)
      v[static_cast<size_t>(pivot_col_of_row[rr])] = -m.at(static_cast<int>(rr), free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

InvariantResult invariant_distribution(const RationalMatrix& chain) {
  RationalMatrix a = chain;
  for (int i = 0; i < a.n; ++i) a.at(i, i) -= Rational(1);
  auto basis = nullspace(a);
  InvariantResult res;
  res.nullity = static_cast<int>(basis.size());
  if (res.nullity != 1) return res;
  Rational sum(0);
  for (const auto& x : basis[0]) sum += x;
  if (sum.is_zero()) return res;  // cannot normalise to a distribution
  std::vector<Rational> dist = basis[0];
  for (auto& x : dist) x /= sum;
  for (const auto& x : dist)
    if (x.sign() < 0) return res;
  res.unique_distribution = std::move(dist);
  return res;
}

ProductChainVerdict product_chain_check(const RationalMatrix& chain_s,
                                        const RationalMatrix& chain_t) {
  ProductChainVerdict v;
  if (!chain_s.column_stochastic() || !chain_t.column_stochastic()) {
    v.reason = "input is not column-stochastic";
    return v;
  }
  for (const RationalMatrix* c : {&chain_s, &chain_t}) {
    for (int j = 0; j < c->n; ++j) {
      if (c->at(j, j) == Rational(1)) {
        v.reason = "a state has no chance of leaving";
        return v;
      }
    }
  }
  const InvariantResult inv_s = invariant_distribution(chain_s);
  const InvariantResult inv_t = invariant_distribution(chain_t);
  if (!inv_s.unique_distribution || !inv_t.unique_distribution) {
    v.reason = "a factor chain lacks a unique invariant distribution";
    return v;
  }
  v.applicable = true;

  const int ns = chain_s.n, nt = chain_t.n;
  RationalMatrix prod(ns * nt);
  for (int i1 = 0; i1 < ns; ++i1)
    for (int i2 = 0; i2 < nt; ++i2)
      for (int j1 = 0; j1 < ns; ++j1)
        for (int j2 = 0; j2 < nt; ++j2)
          prod.at(i1 * nt + i2, j1 * nt + j2) = chain_s.at(i1, j1) * chain_t.at(i2, j2);

  const InvariantResult inv_p = invariant_distribution(prod);
  if (!inv_p.unique_distribution) {
    v.reason = "product chain invariant not unique";
    return v;
  }
  v.product_invariant = *inv_p.unique_distribution;
  v.verified = true;
  for (int i1 = 0; i1 < ns && v.verified; ++i1)
    for (int i2 = 0; i2 < nt; ++i2) {
      const Rational expect = (*inv_s.unique_distribution)[static_cast<size_t>(i1)] *
                              (*inv_t.unique_distribution)[static_cast<size_t>(i2)];
      if (v.product_invariant[static_cast<size_t>(i1 * nt + i2)] != expect) {
        v.verified = false;
        break;
      }
    }
  return v;
}

}  // namespace colouring
