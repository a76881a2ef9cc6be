// Signal-model layer on top of a transform plan: shift operators on the
// coefficient basis, filtering, and the visualization graph of the model.
//
// On the node grid the quotient algebra decomposes into one-dimensional
// pieces, one per node; multiplication by a coordinate acts diagonally
// there with the node coordinate as eigenvalue. Conjugating that diagonal
// action back to the coefficient basis produces the shift matrices.

#pragma once

#include <Eigen/Dense>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tridct/cdkernel.hpp"
#include "tridct/cheb2d.hpp"
#include "tridct/xform.hpp"

namespace tridct {

struct ShiftMatrices {
  int n = 0;
  Eigen::MatrixXd S1;  // multiplication by x1 on the coefficient basis
  Eigen::MatrixXd S2;  // multiplication by x2
};

/// S_i = (F^T)^{-1} diag(node coordinate i) F^T, using the closed-form
/// inverse from the plan.
inline ShiftMatrices build_shift_matrices(const TransformPlan& plan) {
  const Eigen::Index N = plan.size;
  Eigen::VectorXd a1(N), a2(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    a1(i) = plan.grid.nodes[static_cast<std::size_t>(i)].x.x1;
    a2(i) = plan.grid.nodes[static_cast<std::size_t>(i)].x.x2;
  }
  const Eigen::MatrixXd Ft_inv = plan.F_inv.transpose();  // (F^T)^{-1}
  ShiftMatrices shifts;
  shifts.n = plan.n;
  shifts.S1 = Ft_inv * a1.asDiagonal() * plan.F.transpose();
  shifts.S2 = Ft_inv * a2.asDiagonal() * plan.F.transpose();
  return shifts;
}

/// A filter as coefficients on the basis, supported on k + l < n.
struct FilterSpec {
  std::map<MultiIndex, double> coefficients;
};

/// Applies the filter spectrally: the filter polynomial is evaluated at
/// every node and the sample values are scaled pointwise. Equivalent to
/// analyze -> multiply in the algebra -> synthesize.
inline Signal apply_filter(const TransformPlan& plan, const FilterSpec& h, const Signal& s) {
  detail::require_length(plan, s.values.size(), "apply_filter");
  for (const auto& [idx, coeff] : h.coefficients) {
    if (plan.basis.position(idx) < 0) {
      throw std::invalid_argument("apply_filter: filter index outside the basis support");
    }
  }
  Signal out{Eigen::VectorXd(plan.size)};
  for (Eigen::Index i = 0; i < plan.size; ++i) {
    const Node& node = plan.grid.nodes[static_cast<std::size_t>(i)];
    double hval = 0.0;
    for (const auto& [idx, coeff] : h.coefficients) {
      hval += coeff * eval_T_node(idx, plan.n, node.k, node.j);
    }
    out.values(i) = hval * s.values(i);
  }
  return out;
}

/// Visualization graph of the signal model: one vertex per basis index; an
/// edge {u, v} with label x1 or x2 whenever v is a folded recurrence
/// neighbour of u that stays inside the basis (degree-n neighbours vanish
/// on the grid and are dropped). Each undirected edge is stored once;
/// self-loops arise at boundary vertices whose neighbours fold back.
struct ModelGraph {
  struct Edge {
    int u = 0;    // positions into `vertices`, u <= v
    int v = 0;
    int dir = 1;  // 1 for x1, 2 for x2
    friend constexpr bool operator==(const Edge&, const Edge&) = default;
    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
  };
  int n = 0;
  std::vector<MultiIndex> vertices;  // basis order
  std::vector<Edge> edges;           // sorted, unique
};

inline ModelGraph export_graph(const TransformPlan& plan) {
  ModelGraph graph;
  graph.n = plan.n;
  graph.vertices = plan.basis.indices;
  std::vector<ModelGraph::Edge> edges;
  for (std::size_t u = 0; u < graph.vertices.size(); ++u) {
    for (int dir : {1, 2}) {
      for (MultiIndex nb : detail::recurrence_neighbors(graph.vertices[u], dir)) {
        const int v = plan.basis.position(canonicalize(nb));
        if (v < 0) continue;
        const int a = static_cast<int>(u);
        edges.push_back({std::min(a, v), std::max(a, v), dir});
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  graph.edges = std::move(edges);
  return graph;
}

/// DOT serialization (undirected; edge attribute label in {x1, x2}).
inline std::string to_dot(const ModelGraph& graph) {
  std::string out = "graph signal_model {\n";
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    const MultiIndex idx = graph.vertices[i];
    out += "  v" + std::to_string(i) + " [label=\"(" + std::to_string(idx.k) + "," +
           std::to_string(idx.l) + ")\"];\n";
  }
  for (const auto& e : graph.edges) {
    out += "  v" + std::to_string(e.u) + " -- v" + std::to_string(e.v) +
           " [label=\"x" + std::to_string(e.dir) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace tridct
