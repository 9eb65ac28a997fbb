#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "colouring/q7.hpp"
#include "colouring/rational.hpp"

namespace colouring {

/// Exact colour distribution: three nonnegative Q(sqrt7) entries summing to 1.
struct Distribution3 {
  std::array<Q7, 3> d;

  bool valid() const {
    Q7 sum;
    for (const auto& x : d) {
      if (x.sign() < 0) return false;
      sum += x;
    }
    return sum == Q7(1);
  }
  friend bool operator==(const Distribution3&, const Distribution3&) = default;
};

/// Column-stochastic 3x3 matrix over Q(sqrt7): entry (i,j) is
/// P(new = c_i | old = c_j). The column convention is fixed project-wide.
struct TransitionMatrix {
  Q7 m[3][3];

  Distribution3 apply(const Distribution3& x) const;
  TransitionMatrix operator*(const TransitionMatrix& o) const;
  bool column_stochastic() const;
  friend bool operator==(const TransitionMatrix& a, const TransitionMatrix& b) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (a.m[i][j] != b.m[i][j]) return false;
    return true;
  }
};

/// The one-step colour transition family: z is the probability of colour c1
/// at the T2-descendant. Requires 0 <= z <= 1.
TransitionMatrix c_matrix(const Q7& z);

/// The stationary colour distribution (3 - sqrt7, 3 - sqrt7, 2 sqrt7 - 5),
/// certified by exact substitution into its defining equations and
/// cross-checked by an independent double-precision fixed-point iteration.
/// Throws std::logic_error if either certification fails.
Distribution3 fixed_point();

/// Half-probabilities of colour non-advancement conditioned on c1, c2, c3.
struct RandomColouringChain {
  Rational p, q, r;

  bool admissible() const {
    const Rational half(1, 2);
    for (const Rational* x : {&p, &q, &r})
      if (x->sign() < 0 || *x > half) return false;
    return true;
  }
};

struct SpectrumResult {
  /// Characteristic polynomial of [[p,0,1-r],[1-p,q,0],[0,1-q,r]] in
  /// ascending powers: c0 + c1 x + c2 x^2 + c3 x^3.
  std::array<Rational, 4> char_poly;
  bool one_minus_x_divides = false;
  Rational quad_b, quad_d;          // remaining factor x^2 + b x + (b + d)
  Rational subdominant_norm_sq;     // squared norm of the quadratic's roots
  bool subdominant_below_one = false;
};

/// Exact spectral certificate for the colour-advancement chain. For every
/// admissible chain the quadratic factor has non-positive discriminant (so
/// norm^2 = b + d); a positive discriminant is rejected as a domain error.
SpectrumResult chain_spectrum(const RandomColouringChain& chain);

struct PathwayReport {
  Distribution3 stationary;                    // y*
  TransitionMatrix c_cubed;                    // C_{y1}^3
  Distribution3 branch_v0, branch_v1;          // C_{y1}^2 C_0 y*, C_{y1}^2 C_1 y*
  std::array<Distribution3, 3> recombination;  // per clamp colour at the confluence
  Distribution3 final_dist;                    // y*-weighted mixture d*
  std::array<Q7, 3> discrepancy;               // d* - y*
  std::array<int, 3> discrepancy_sign;
};

/// The full two-pathway computation in exact Q(sqrt7) arithmetic: the cubed
/// chain, both branch vectors, the three conditional recombinations, the
/// mixed final distribution and its certified-sign discrepancy from y*.
PathwayReport pathway_analysis();

/// Dense matrix of exact rationals, column-stochastic when used as a chain.
struct RationalMatrix {
  int n = 0;
  std::vector<Rational> a;  // row-major, n*n

  explicit RationalMatrix(int size = 0) : n(size), a(static_cast<size_t>(size) * size) {}
  Rational& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const Rational& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  bool column_stochastic() const;
};

/// Invariant distributions of a column-stochastic chain by exact nullspace
/// computation of P - I. Returns the nullspace dimension and, when it is 1,
/// the unique invariant distribution.
struct InvariantResult {
  int nullity = 0;
  std::optional<std::vector<Rational>> unique_distribution;
};
InvariantResult invariant_distribution(const RationalMatrix& chain);

struct ProductChainVerdict {
  bool applicable = false;  // preconditions held
  std::string reason;       // set when inapplicable
  bool verified = false;    // unique product invariant == outer product
  std::vector<Rational> product_invariant;
};

/// Checks that the independent product of two chains has a unique invariant
/// distribution equal to the outer product of the marginal invariants.
/// Precondition failures (non-unique marginal invariant, or some state with
/// no chance of leaving) are reported as inapplicable, not as failure.
ProductChainVerdict product_chain_check(const RationalMatrix& chain_s,
                                        const RationalMatrix& chain_t);

}  // namespace colouring
