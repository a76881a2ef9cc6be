// Transform plans: the evaluation matrix F on a degree-n node grid, its
// closed-form inverse, and the orthogonal variant.
//
// F has one row per basis index (k, l) with k + l < n and one column per
// grid node a, entry T_{k,l}(a). With the block weight diagonal H and the
// grid being the common zero set of every degree-n polynomial, the Gram
// matrix G = F^T H F is diagonal, which yields
//
//   F^{-1} = D F^T H,                 D = diag(G)^{-1}
//   F_orth = sqrt(H) F sqrt(D),       F_orth^T F_orth = I.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tridct/cdkernel.hpp"
#include "tridct/cheb2d.hpp"
#include "tridct/nodegrid.hpp"

namespace tridct {

/// Basis { T_{k,l} : k + l < n } in degree-major order; within degree d the
/// entries follow the vector order (T_{0,d}, T_{1,d-1}, ..., T_{d,0}).
struct BasisOrder {
  int n = 0;
  std::vector<MultiIndex> indices;

  /// Position of a canonical index in the ordering, or -1 if outside.
  int position(MultiIndex idx) const {
    const int d = degree(idx);
    if (idx.k < 0 || idx.l < 0 || d >= n) return -1;
    return d * (d + 1) / 2 + idx.k;
  }
};

inline BasisOrder build_basis(int n) {
  if (n < 1) throw std::invalid_argument("build_basis: n must be >= 1");
  BasisOrder basis;
  basis.n = n;
  basis.indices.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int d = 0; d < n; ++d) {
    for (int k = 0; k <= d; ++k) basis.indices.push_back({k, d - k});
  }
  return basis;
}

struct TransformPlan {
  int n = 0;
  Eigen::Index size = 0;  // n(n+1)/2
  BasisOrder basis;
  NodeGrid grid;
  Eigen::MatrixXd F;       // rows: basis order, columns: node order
  Eigen::VectorXd h_oplus; // diagonal of the block weight matrix
  Eigen::VectorXd d;       // diagonal of D = diag(F^T H F)^{-1}
  Eigen::MatrixXd F_inv;
  Eigen::MatrixXd F_orth;
  double gram_offdiag = 0.0;  // measured max |offdiag| of F^T H F
};

/// Builds the full plan for a given n. F is filled through the exact-node
/// trigonometric evaluation. Fails if the Gram matrix has a vanishing
/// diagonal entry, a diagonal entry that is not positive, or off-diagonal
/// mass above `gram_tol` relative to the smallest diagonal entry; any of
/// those would falsify the diagonalization the inverse formula rests on.
inline TransformPlan build_plan(int n, double gram_tol = 1e-8) {
  TransformPlan plan;
  plan.n = n;
  plan.grid = build_nodes(n);  // rejects n < 1
  plan.basis = build_basis(n);
  plan.size = static_cast<Eigen::Index>(plan.basis.indices.size());
  const Eigen::Index N = plan.size;

  plan.F.resize(N, N);
  for (Eigen::Index c = 0; c < N; ++c) {
    const Node& node = plan.grid.nodes[static_cast<std::size_t>(c)];
    for (Eigen::Index r = 0; r < N; ++r) {
      plan.F(r, c) = eval_T_node(plan.basis.indices[static_cast<std::size_t>(r)], n, node.k, node.j);
    }
  }

  plan.h_oplus = build_weights(n).h_oplus;

  const Eigen::MatrixXd G = plan.F.transpose() * plan.h_oplus.asDiagonal() * plan.F;
  const Eigen::VectorXd gdiag = G.diagonal();
  const double min_diag = gdiag.cwiseAbs().minCoeff();
  if (min_diag < 1e-12) {
    throw std::runtime_error("build_plan: Gram matrix has a vanishing diagonal entry");
  }
  if (gdiag.minCoeff() <= 0.0) {
    throw std::runtime_error("build_plan: Gram matrix has a non-positive diagonal entry");
  }
  plan.gram_offdiag = (G - Eigen::MatrixXd(gdiag.asDiagonal())).cwiseAbs().maxCoeff();
  if (plan.gram_offdiag > gram_tol * min_diag) {
    throw std::runtime_error("build_plan: Gram matrix is not diagonal within tolerance");
  }

  plan.d = gdiag.cwiseInverse();
  plan.F_inv = plan.d.asDiagonal() * plan.F.transpose() * plan.h_oplus.asDiagonal();
  plan.F_orth = plan.h_oplus.cwiseSqrt().asDiagonal() * plan.F * plan.d.cwiseSqrt().asDiagonal();
  return plan;
}

/// Sample values on the node grid, in node order.
struct Signal {
  Eigen::VectorXd values;
};

/// Coefficients on the basis, in degree-major order.
struct Spectrum {
  Eigen::VectorXd values;
};

namespace detail {

inline void require_length(const TransformPlan& plan, Eigen::Index len, const char* what) {
  if (len != plan.size) {
    throw std::invalid_argument(std::string(what) + ": expected length " +
                                std::to_string(plan.size) + ", got " + std::to_string(len));
  }
}

}  // namespace detail

/// Samples of the polynomial with coefficients c at the grid nodes: F^T c.
inline Signal synthesize(const TransformPlan& plan, const Spectrum& c) {
  detail::require_length(plan, c.values.size(), "synthesize");
  return {plan.F.transpose() * c.values};
}

/// The unique coefficient vector whose synthesis matches s at all nodes:
/// (F^{-1})^T s = H F D s.
inline Spectrum analyze(const TransformPlan& plan, const Signal& s) {
  detail::require_length(plan, s.values.size(), "analyze");
  return {plan.F_inv.transpose() * s.values};
}

/// F_orth * v. Norm preserving; the inverse direction is apply_orthogonal_inverse.
inline Eigen::VectorXd apply_orthogonal(const TransformPlan& plan, const Eigen::VectorXd& v) {
  detail::require_length(plan, v.size(), "apply_orthogonal");
  return plan.F_orth * v;
}

/// F_orth^T * v, the inverse of apply_orthogonal.
inline Eigen::VectorXd apply_orthogonal_inverse(const TransformPlan& plan, const Eigen::VectorXd& v) {
  detail::require_length(plan, v.size(), "apply_orthogonal_inverse");
  return plan.F_orth.transpose() * v;
}

}  // namespace tridct
