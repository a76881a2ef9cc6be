// Bivariate Chebyshev polynomials of type B2.
//
// The polynomials T_{k,l}(x1,x2) are defined through a generalized cosine:
// under the coordinate change
//
//   x1 = cos(2*pi*t2) * cos(2*pi*(t1 - t2))
//   x2 = cos(pi*t1)   * cos(pi*(t1 - 2*t2))
//
// T_{k,l} is the average of four cosines of integer combinations of
// (t1, t2). This header provides both evaluation routes: the closed
// trigonometric form (valid for arbitrary integer indices) and a
// recurrence-based evaluation as a genuine polynomial in (x1, x2).
// Each route serves as an independent cross-check of the other.

#pragma once

#include <cmath>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace tridct {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Index pair (k, l) labelling T_{k,l}. Entries may be negative in
/// intermediate computations; see canonicalize().
struct MultiIndex {
  int k = 0;
  int l = 0;
  friend constexpr bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend constexpr auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

/// Total degree of the canonical representative.
constexpr int degree(MultiIndex idx) { return idx.k + idx.l; }

/// Point in angle coordinates (t1, t2).
struct ThetaPoint {
  double theta1 = 0.0;
  double theta2 = 0.0;
};

/// Point in transformed coordinates (x1, x2).
struct XPoint {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Fundamental triangle F = { 0 <= t1 <= t2 <= 1/2 }, the region on which
/// the coordinate change is one-to-one.
inline bool in_fundamental_triangle(ThetaPoint t) {
  return 0.0 <= t.theta1 && t.theta1 <= t.theta2 && t.theta2 <= 0.5;
}

/// Coordinate change from angle to polynomial coordinates. Defined for all
/// real (t1, t2); both outputs are products of cosines, hence in [-1, 1].
inline XPoint theta_to_x(ThetaPoint t) {
  const double x1 = std::cos(kTwoPi * t.theta2) * std::cos(kTwoPi * (t.theta1 - t.theta2));
  const double x2 = std::cos(kPi * t.theta1) * std::cos(kPi * (t.theta1 - 2.0 * t.theta2));
  return {x1, x2};
}

/// T_{k,l} evaluated through the closed four-cosine form. Valid for all
/// integer indices, including negative ones.
inline double eval_T_theta(MultiIndex idx, ThetaPoint t) {
  const double k = idx.k;
  const double l = idx.l;
  const double a1 = k * t.theta1 + l * t.theta2;
  const double a2 = (k + l) * t.theta1 - l * t.theta2;
  const double a3 = k * t.theta1 - (2.0 * k + l) * t.theta2;
  const double a4 = (k + l) * t.theta1 - (2.0 * k + l) * t.theta2;
  return 0.25 * (std::cos(kTwoPi * a1) + std::cos(kTwoPi * a2) +
                 std::cos(kTwoPi * a3) + std::cos(kTwoPi * a4));
}

/// Folds an arbitrary integer index into the nonnegative quadrant using the
/// two reflections
///
///   s1: (k, l) -> (-k, 2k + l)      applied while k < 0
///   s2: (k, l) -> (k + l, -l)       applied while l < 0
///
/// Both reflections permute the four cosine arguments of eval_T_theta, so
/// the value of T is preserved; the quadrant representative is unique.
/// The reflections generate a finite group, so folding terminates; the
/// iteration bound only guards against an implementation bug.
inline MultiIndex canonicalize(MultiIndex idx) {
  constexpr int kFoldLimit = 64;
  for (int iter = 0; iter < kFoldLimit; ++iter) {
    if (idx.k >= 0 && idx.l >= 0) return idx;
    if (idx.k < 0) {
      idx = {-idx.k, 2 * idx.k + idx.l};
    } else {
      idx = {idx.k + idx.l, -idx.l};
    }
  }
  throw std::logic_error("canonicalize: index folding did not terminate");
}

namespace detail {

// Tabulates T_{m,d-m}(p) for every canonical index with total degree <= deg;
// tab[d][m] holds T_{m,d-m}. Entries are produced by the two recurrences
//
//   x1 * T_{k,l} = 1/4 (T_{k+1,l} + T_{k-1,l} + T_{k-1,l+2} + T_{k+1,l-2})
//   x2 * T_{k,l} = 1/4 (T_{k,l+1} + T_{k,l-1} + T_{k-1,l+1} + T_{k+1,l-1})
//
// solved for the highest entry, with out-of-quadrant indices folded by
// canonicalize(). A folded term may coincide with the target entry; those
// occurrences are collected on the left-hand side (divisor `mult`). Every
// remaining term has strictly smaller degree or an earlier slot of the
// current degree, so the fill order below is well defined.
inline std::vector<std::vector<double>> chebyshev_tableau(int deg, XPoint p) {
  std::vector<std::vector<double>> tab(static_cast<std::size_t>(deg) + 1);
  tab[0] = {1.0};
  if (deg == 0) return tab;
  tab[1] = {p.x2, p.x1};  // ( T_{0,1}, T_{1,0} )
  for (int d = 2; d <= deg; ++d) {
    tab[d].assign(static_cast<std::size_t>(d) + 1, 0.0);
    for (int m = 0; m < d; ++m) {
      // Target (m, l), l = d - m >= 1, from the x2 recurrence at (m, l-1).
      const int l = d - m;
      double rhs = 4.0 * p.x2 * tab[d - 1][m];
      int mult = 1;
      const MultiIndex lower[3] = {{m, l - 2}, {m - 1, l}, {m + 1, l - 2}};
      for (MultiIndex nb : lower) {
        const MultiIndex c = canonicalize(nb);
        if (c.k == m && c.l == l) {
          ++mult;
        } else {
          rhs -= tab[degree(c)][c.k];
        }
      }
      tab[d][m] = rhs / mult;
    }
    // Target (d, 0) from the x1 recurrence at (d-1, 0); the fold
    // (d, -2) -> (d-2, 2) doubles the T_{d-2,2} term.
    tab[d][d] = 4.0 * p.x1 * tab[d - 1][d - 1] - tab[d - 2][d - 2] - 2.0 * tab[d][d - 2];
  }
  return tab;
}

}  // namespace detail

/// T_{k,l} evaluated as a polynomial in (x1, x2) by dynamic programming on
/// the recurrences, seeded by T_{0,0} = 1, T_{1,0} = x1, T_{0,1} = x2.
/// The index is folded first, so arbitrary integer indices are accepted.
inline double eval_T_x(MultiIndex idx, XPoint p) {
  const MultiIndex c = canonicalize(idx);
  const auto tab = detail::chebyshev_tableau(degree(c), p);
  return tab[degree(c)][c.k];
}

/// The degree-k vector (T_{0,k}, T_{1,k-1}, ..., T_{k,0}) evaluated at p.
inline std::vector<double> eval_T_vector(int k, XPoint p) {
  if (k < 0) throw std::invalid_argument("eval_T_vector: negative degree");
  auto tab = detail::chebyshev_tableau(k, p);
  return std::move(tab[static_cast<std::size_t>(k)]);
}

/// Residual |T_{k,l}(T_{n,0}(x), T_{0,n}(x)) - T_{nk,nl}(x)| at x from the
/// decomposition property of the family. The outer T_{k,l} goes through the
/// polynomial route, the right-hand side through the trigonometric one.
inline double check_decomposition(int k, int l, int n, ThetaPoint t) {
  if (k < 0 || l < 0 || n < 0) {
    throw std::invalid_argument("check_decomposition: negative argument");
  }
  const XPoint inner{eval_T_theta({n, 0}, t), eval_T_theta({0, n}, t)};
  const double lhs = eval_T_x({k, l}, inner);
  const double rhs = eval_T_theta({n * k, n * l}, t);
  return std::abs(lhs - rhs);
}

}  // namespace tridct
