// Vector three-term recurrence and the Christoffel-Darboux kernel.
//
// With TT_k = (T_{0,k}, T_{1,k-1}, ..., T_{k,0})^T the degree-k vector,
// multiplication by a coordinate satisfies
//
//   x_i * TT_k = A_{k,i} TT_{k+1} + B_{k,i} TT_k + C_{k,i} TT_{k-1}
//
// whose matrix entries follow from expanding each component with the scalar
// recurrences and folding out-of-quadrant indices. Together with the
// normalization blocks H_k these give the Christoffel-Darboux closed form
// of the kernel sum_{k<n} TT_k(x)^T H_k^{-1} TT_k(y).

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tridct/cheb2d.hpp"

namespace tridct {

struct RecurrenceMatrices {
  int k = 0;
  int dir = 1;        // coordinate index i in {1, 2}
  Eigen::MatrixXd A;  // (k+1) x (k+2)
  Eigen::MatrixXd B;  // (k+1) x (k+1)
  Eigen::MatrixXd C;  // (k+1) x k
};

namespace detail {

// The four scalar-recurrence neighbours of (k, l) for coordinate dir.
inline std::array<MultiIndex, 4> recurrence_neighbors(MultiIndex idx, int dir) {
  const int k = idx.k;
  const int l = idx.l;
  if (dir == 1) {
    return {{{k + 1, l}, {k - 1, l}, {k - 1, l + 2}, {k + 1, l - 2}}};
  }
  return {{{k, l + 1}, {k, l - 1}, {k - 1, l + 1}, {k + 1, l - 1}}};
}

}  // namespace detail

/// Builds A_{k,i}, B_{k,i}, C_{k,i}. Entries are integer multiples of 1/4,
/// accumulated as integer counts and converted once, so they are exact.
inline RecurrenceMatrices build_recurrence_matrices(int k, int dir) {
  if (k < 0) throw std::invalid_argument("build_recurrence_matrices: k must be >= 0");
  if (dir != 1 && dir != 2) {
    throw std::invalid_argument("build_recurrence_matrices: direction must be 1 or 2");
  }
  Eigen::MatrixXi countA = Eigen::MatrixXi::Zero(k + 1, k + 2);
  Eigen::MatrixXi countB = Eigen::MatrixXi::Zero(k + 1, k + 1);
  Eigen::MatrixXi countC = Eigen::MatrixXi::Zero(k + 1, std::max(k, 0));
  for (int m = 0; m <= k; ++m) {
    for (MultiIndex nb : detail::recurrence_neighbors({m, k - m}, dir)) {
      const MultiIndex c = canonicalize(nb);
      const int d = degree(c);
      if (d == k + 1) {
        countA(m, c.k) += 1;
      } else if (d == k) {
        countB(m, c.k) += 1;
      } else if (d == k - 1) {
        countC(m, c.k) += 1;
      } else {
        throw std::logic_error("build_recurrence_matrices: folded index out of band");
      }
    }
  }
  RecurrenceMatrices out;
  out.k = k;
  out.dir = dir;
  out.A = countA.cast<double>() * 0.25;
  out.B = countB.cast<double>() * 0.25;
  out.C = countC.cast<double>() * 0.25;
  return out;
}

/// Normalization blocks: H_0 = 1/2 and, for k >= 1,
/// H_k = diag(1/8, 1/16, ..., 1/16, 1/8) of size k+1. h_oplus is the
/// diagonal of the block-diagonal sum of the inverses H_k^{-1}, laid out in
/// degree-major order (total length n(n+1)/2).
struct WeightMatrices {
  int n = 0;
  std::vector<Eigen::VectorXd> H_blocks;  // diagonals of H_0 .. H_{n-1}
  Eigen::VectorXd h_oplus;                // diagonal of (+)_k H_k^{-1}
};

inline WeightMatrices build_weights(int n) {
  if (n < 1) throw std::invalid_argument("build_weights: n must be >= 1");
  WeightMatrices w;
  w.n = n;
  w.H_blocks.reserve(n);
  w.h_oplus.resize(static_cast<Eigen::Index>(n) * (n + 1) / 2);
  Eigen::Index pos = 0;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd h(k + 1);
    if (k == 0) {
      h(0) = 0.5;
    } else {
      h.setConstant(1.0 / 16.0);
      h(0) = 1.0 / 8.0;
      h(k) = 1.0 / 8.0;
    }
    for (int m = 0; m <= k; ++m) w.h_oplus(pos++) = 1.0 / h(m);
    w.H_blocks.push_back(std::move(h));
  }
  return w;
}

/// The kernel sum_{k=0}^{n-1} TT_k(x)^T H_k^{-1} TT_k(y) by direct summation.
inline double cd_kernel_direct(int n, XPoint x, XPoint y) {
  if (n < 1) throw std::invalid_argument("cd_kernel_direct: n must be >= 1");
  const auto tx = detail::chebyshev_tableau(n - 1, x);
  const auto ty = detail::chebyshev_tableau(n - 1, y);
  const WeightMatrices w = build_weights(n);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m <= k; ++m) {
      sum += tx[k][m] * ty[k][m] / w.H_blocks[k](m);
    }
  }
  return sum;
}

/// Christoffel-Darboux closed form of the same kernel, branch x_i != y_i:
///
///   (x_i - y_i)^{-1} [ (A_{n-1,i} TT_n(x))^T H_{n-1}^{-1} TT_{n-1}(y)
///                      - TT_{n-1}(x)^T H_{n-1}^{-1} A_{n-1,i} TT_n(y) ]
///
/// Throws when |x_i - y_i| < 1e-12; callers should fall back to the direct
/// sum for near-coincident points.
inline double cd_kernel(int n, XPoint x, XPoint y, int dir) {
  if (n < 1) throw std::invalid_argument("cd_kernel: n must be >= 1");
  if (dir != 1 && dir != 2) throw std::invalid_argument("cd_kernel: direction must be 1 or 2");
  const double xi = (dir == 1) ? x.x1 : x.x2;
  const double yi = (dir == 1) ? y.x1 : y.x2;
  if (std::abs(xi - yi) < 1e-12) {
    throw std::domain_error("cd_kernel: coordinates nearly coincide in the chosen direction");
  }
  const auto tabx = detail::chebyshev_tableau(n, x);
  const auto taby = detail::chebyshev_tableau(n, y);
  const Eigen::Map<const Eigen::VectorXd> tnx(tabx[n].data(), n + 1);
  const Eigen::Map<const Eigen::VectorXd> tny(taby[n].data(), n + 1);
  const Eigen::Map<const Eigen::VectorXd> tn1x(tabx[n - 1].data(), n);
  const Eigen::Map<const Eigen::VectorXd> tn1y(taby[n - 1].data(), n);

  const RecurrenceMatrices rec = build_recurrence_matrices(n - 1, dir);
  const Eigen::VectorXd hinv = build_weights(n).h_oplus.tail(n);  // H_{n-1}^{-1}

  const double lhs = (rec.A * tnx).dot(hinv.cwiseProduct(tn1y));
  const double rhs = tn1x.dot(hinv.cwiseProduct(rec.A * tny));
  return (lhs - rhs) / (xi - yi);
}

}  // namespace tridct
