// Node grids: the n(n+1)/2 common zeros of all degree-n polynomials
// { T_{k,l} : k + l = n } inside the fundamental triangle,
//
//   (t1, t2) = (k/2n, j/4n),   k = 0..n-1,  j = 1,3,...,2n-1,  j >= 2k,
//
// ordered lexicographically by (k, j). Nodes are stored with their exact
// integer labels (k, j); floating-point coordinates are derived from them,
// so cosine arguments that are exact quarter turns evaluate to exact
// zeros and units.

#pragma once

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "tridct/cheb2d.hpp"

namespace tridct {

/// cos(2*pi*num/den) with exact values at quarter multiples. Reduction of
/// the argument into [0, 1) is done in integer arithmetic.
inline double cos_frac(long long num, long long den) {
  num %= den;
  if (num < 0) num += den;
  const long long q = 4 * num;
  if (q == 0) return 1.0;
  if (q == den || q == 3 * den) return 0.0;
  if (q == 2 * den) return -1.0;
  return std::cos(kTwoPi * static_cast<double>(num) / static_cast<double>(den));
}

struct Node {
  int k = 0;        // t1 = k / (2n)
  int j = 0;        // t2 = j / (4n), j odd
  ThetaPoint theta;
  XPoint x;
};

struct NodeGrid {
  int n = 0;
  std::vector<Node> nodes;

  std::size_t size() const { return nodes.size(); }
};

/// T_{a,b} at the grid node (k/2n, j/4n). All four cosine arguments are
/// integer multiples of 1/(4n), evaluated through cos_frac.
inline double eval_T_node(MultiIndex idx, int n, int k, int j) {
  const long long a = idx.k;
  const long long b = idx.l;
  const long long den = 4LL * n;
  const double c1 = cos_frac(2 * a * k + b * j, den);
  const double c2 = cos_frac(2 * (a + b) * k - b * j, den);
  const double c3 = cos_frac(2 * a * k - (2 * a + b) * j, den);
  const double c4 = cos_frac(2 * (a + b) * k - (2 * a + b) * j, den);
  return 0.25 * (c1 + c2 + c3 + c4);
}

inline NodeGrid build_nodes(int n) {
  if (n < 1) throw std::invalid_argument("build_nodes: n must be >= 1");
  NodeGrid grid;
  grid.n = n;
  grid.nodes.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  const long long den = 4LL * n;
  for (int k = 0; k < n; ++k) {
    for (int j = 1; j <= 2 * n - 1; j += 2) {
      if (j < 2 * k) continue;
      Node node;
      node.k = k;
      node.j = j;
      node.theta = {static_cast<double>(k) / (2.0 * n),
                    static_cast<double>(j) / (4.0 * n)};
      // x1 = cos(2*pi*t2) cos(2*pi*(t1-t2)), x2 = cos(pi*t1) cos(pi*(t1-2*t2)),
      // with all arguments reduced to integer multiples of 1/(4n).
      node.x.x1 = cos_frac(j, den) * cos_frac(2LL * k - j, den);
      node.x.x2 = cos_frac(k, den) * cos_frac(static_cast<long long>(k) - j, den);
      grid.nodes.push_back(node);
    }
  }
  return grid;
}

/// Max over all nodes and all indices with k + l = n of |T_{k,l}(node)|.
inline double verify_common_zeros(const NodeGrid& grid) {
  double worst = 0.0;
  for (const Node& node : grid.nodes) {
    for (int k = 0; k <= grid.n; ++k) {
      const double v = std::abs(eval_T_node({k, grid.n - k}, grid.n, node.k, node.j));
      if (v > worst) worst = v;
    }
  }
  return worst;
}

}  // namespace tridct
