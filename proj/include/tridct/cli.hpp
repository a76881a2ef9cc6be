// Command implementations behind the command-line tool. Commands read and
// write streams so they can be driven directly; the binary wires them to
// files, stdin/stdout and flag parsing.
//
// Exit codes: 0 success, 1 validation failure (bad input data, violated
// numerical contract), 2 usage error (bad flag values).

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "tridct/aspmodel.hpp"
#include "tridct/cdkernel.hpp"
#include "tridct/cheb2d.hpp"
#include "tridct/io.hpp"
#include "tridct/nodegrid.hpp"
#include "tridct/xform.hpp"

namespace tridct::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

// Plans above this size stop being desk-scale dense problems.
inline constexpr int kMaxOrder = 128;

namespace detail {

inline bool check_order(int n, std::ostream& err) {
  if (n < 1 || n > kMaxOrder) {
    err << "error: --n must be in 1.." << kMaxOrder << "\n";
    return false;
  }
  return true;
}

inline ThetaPoint random_theta(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double t2 = 0.5 * unit(rng);
  return {t2 * unit(rng), t2};
}

}  // namespace detail

inline int cmd_nodes(int n, std::ostream& out, std::ostream& err) {
  if (!detail::check_order(n, err)) return kExitUsage;
  write_nodes_csv(out, build_nodes(n));
  return kExitOk;
}

inline int cmd_matrix(int n, const std::string& which, const std::string& format,
                      std::ostream& out, std::ostream& err) {
  if (!detail::check_order(n, err)) return kExitUsage;
  if (format != "csv" && format != "json") {
    err << "error: unknown format \"" << format << "\" (expected csv or json)\n";
    return kExitUsage;
  }
  Eigen::MatrixXd m;
  std::string row_order;
  std::string col_order;
  TransformPlan plan;
  try {
    plan = build_plan(n);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  if (which == "F") {
    m = plan.F;
    row_order = kBasisOrdering;
    col_order = kNodeOrdering;
  } else if (which == "Finv") {
    m = plan.F_inv;
    row_order = kNodeOrdering;
    col_order = kBasisOrdering;
  } else if (which == "Forth") {
    m = plan.F_orth;
    row_order = kBasisOrdering;
    col_order = kNodeOrdering;
  } else if (which == "H") {
    m = Eigen::MatrixXd(plan.h_oplus.asDiagonal());
    row_order = kBasisOrdering;
    col_order = kBasisOrdering;
  } else if (which == "D") {
    m = Eigen::MatrixXd(plan.d.asDiagonal());
    row_order = kNodeOrdering;
    col_order = kNodeOrdering;
  } else {
    err << "error: unknown matrix \"" << which << "\" (expected F, Finv, Forth, H or D)\n";
    return kExitUsage;
  }
  if (format == "csv") {
    write_matrix_csv(out, which, n, row_order, col_order, m);
  } else {
    out << matrix_to_json(which, n, row_order, col_order, m).dump(2) << "\n";
  }
  return kExitOk;
}

namespace detail {

// Shared body of forward/inverse: parse, check the header against the
// requested order and expected ordering tag, transform, report the
// round-trip residual on err.
inline int transform_file(int n, bool forward, std::istream& in, std::ostream& out,
                          std::ostream& err) {
  if (!check_order(n, err)) return kExitUsage;
  SignalFile file;
  try {
    file = read_signal_file(in);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  if (file.n != n) {
    err << "error: file is for n=" << file.n << ", command requested n=" << n << "\n";
    return kExitValidation;
  }
  const char* want = forward ? kNodeOrdering : kBasisOrdering;
  if (file.ordering != want) {
    err << "error: expected ordering \"" << want << "\", file has \"" << file.ordering << "\"\n";
    return kExitValidation;
  }
  try {
    const TransformPlan plan = build_plan(n);
    SignalFile result;
    result.n = n;
    double residual = 0.0;
    if (forward) {
      const Spectrum spec = analyze(plan, Signal{file.values});
      residual = (synthesize(plan, spec).values - file.values).cwiseAbs().maxCoeff();
      result.ordering = kBasisOrdering;
      result.values = spec.values;
    } else {
      const Signal sig = synthesize(plan, Spectrum{file.values});
      residual = (analyze(plan, sig).values - file.values).cwiseAbs().maxCoeff();
      result.ordering = kNodeOrdering;
      result.values = sig.values;
    }
    err << "round-trip max abs error: " << fmt_full(residual) << "\n";
    write_signal_file(out, result);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace detail

/// Samples on the node grid -> coefficients on the basis.
inline int cmd_forward(int n, std::istream& in, std::ostream& out, std::ostream& err) {
  return detail::transform_file(n, true, in, out, err);
}

/// Coefficients on the basis -> samples on the node grid.
inline int cmd_inverse(int n, std::istream& in, std::ostream& out, std::ostream& err) {
  return detail::transform_file(n, false, in, out, err);
}

/// Keeps the top ceil(keep*N) spectrum magnitudes, reconstructs, and
/// reports the relative l2 reconstruction error on err.
inline int cmd_compress(int n, double keep, std::istream& in, std::ostream& out,
                        std::ostream& err) {
  if (!detail::check_order(n, err)) return kExitUsage;
  if (!(keep > 0.0) || keep > 1.0) {
    err << "error: --keep must lie in (0, 1]\n";
    return kExitUsage;
  }
  SignalFile file;
  try {
    file = read_signal_file(in);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  if (file.n != n || file.ordering != kNodeOrdering) {
    err << "error: expected a signal file (ordering " << kNodeOrdering << ") for n=" << n << "\n";
    return kExitValidation;
  }
  try {
    const TransformPlan plan = build_plan(n);
    Spectrum spec = analyze(plan, Signal{file.values});
    const Eigen::Index N = plan.size;
    const Eigen::Index kept = static_cast<Eigen::Index>(
        std::ceil(keep * static_cast<double>(N)));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(N));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      const double ma = std::abs(spec.values(a));
      const double mb = std::abs(spec.values(b));
      return ma != mb ? ma > mb : a < b;
    });
    Eigen::VectorXd truncated = Eigen::VectorXd::Zero(N);
    for (Eigen::Index i = 0; i < std::min(kept, N); ++i) {
      truncated(order[static_cast<std::size_t>(i)]) = spec.values(order[static_cast<std::size_t>(i)]);
    }
    const Signal rec = synthesize(plan, Spectrum{truncated});
    const double denom = file.values.norm();
    const double rel = denom > 0.0 ? (rec.values - file.values).norm() / denom : 0.0;
    err << "kept " << std::min(kept, N) << " of " << N
        << " coefficients; relative l2 error: " << fmt_full(rel) << "\n";
    write_signal_file(out, SignalFile{n, kNodeOrdering, rec.values});
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

inline int cmd_graph(int n, const std::string& format, std::ostream& out, std::ostream& err) {
  if (!detail::check_order(n, err)) return kExitUsage;
  if (format != "dot" && format != "json") {
    err << "error: unknown format \"" << format << "\" (expected dot or json)\n";
    return kExitUsage;
  }
  try {
    const ModelGraph graph = export_graph(build_plan(n));
    if (format == "dot") {
      out << to_dot(graph);
    } else {
      out << graph_to_json(graph).dump(2) << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

namespace detail {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

inline void report(std::ostream& out, std::vector<CheckResult>& all, const std::string& name,
                   double residual, double tol) {
  const bool pass = residual < tol;
  out << (pass ? "PASS  " : "FAIL  ") << std::left << std::setw(22) << name
      << " residual=" << fmt_full(residual) << " tol=" << fmt_full(tol) << "\n";
  all.push_back({name, residual, pass});
}

}  // namespace detail

/// Runs the invariant suites for every n up to n_max against a single
/// tolerance and prints one line per property. Returns nonzero when any
/// property fails.
inline int cmd_verify(int n_max, double tol, std::ostream& out, std::ostream& err) {
  if (n_max < 1 || n_max > kMaxOrder) {
    err << "error: --n-max must be in 1.." << kMaxOrder << "\n";
    return kExitUsage;
  }
  std::vector<detail::CheckResult> results;
  std::mt19937 rng(0x5eedu);

  // Grid size and common-zero property.
  {
    double count_dev = 0.0;
    double zero_resid = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      const NodeGrid grid = build_nodes(n);
      count_dev = std::max(count_dev,
                           std::abs(static_cast<double>(grid.nodes.size()) -
                                    static_cast<double>(n) * (n + 1) / 2));
      zero_resid = std::max(zero_resid, verify_common_zeros(grid));
    }
    detail::report(out, results, "node-count", count_dev, 0.5);
    detail::report(out, results, "common-zeros", zero_resid, tol);
  }

  // Scalar recurrences in the trigonometric form.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
      const ThetaPoint t = detail::random_theta(rng);
      const XPoint x = theta_to_x(t);
      for (int d = 0; d <= 8; ++d) {
        for (int k = 0; k <= d; ++k) {
          const MultiIndex idx{k, d - k};
          for (int dir : {1, 2}) {
            double sum = 0.0;
            for (MultiIndex nb : tridct::detail::recurrence_neighbors(idx, dir)) {
              sum += eval_T_theta(canonicalize(nb), t);
            }
            const double coord = dir == 1 ? x.x1 : x.x2;
            worst = std::max(worst, std::abs(coord * eval_T_theta(idx, t) - 0.25 * sum));
          }
        }
      }
    }
    detail::report(out, results, "scalar-recurrence", worst, tol);
  }

  // Vector recurrence with the constructed A/B/C matrices.
  {
    double worst = 0.0;
    for (int k = 0; k <= 8; ++k) {
      for (int dir : {1, 2}) {
        const RecurrenceMatrices rec = build_recurrence_matrices(k, dir);
        for (int trial = 0; trial < 40; ++trial) {
          const ThetaPoint t = detail::random_theta(rng);
          const XPoint x = theta_to_x(t);
          Eigen::VectorXd tk(k + 1), tk1(k + 2);
          Eigen::VectorXd tkm = Eigen::VectorXd::Zero(std::max(k, 1));
          for (int m = 0; m <= k; ++m) tk(m) = eval_T_theta({m, k - m}, t);
          for (int m = 0; m <= k + 1; ++m) tk1(m) = eval_T_theta({m, k + 1 - m}, t);
          for (int m = 0; m <= k - 1; ++m) tkm(m) = eval_T_theta({m, k - 1 - m}, t);
          const double coord = dir == 1 ? x.x1 : x.x2;
          Eigen::VectorXd resid = coord * tk - rec.A * tk1 - rec.B * tk;
          if (k >= 1) resid -= rec.C * tkm.head(k);
          worst = std::max(worst, resid.cwiseAbs().maxCoeff());
        }
      }
    }
    detail::report(out, results, "vector-recurrence", worst, tol);
  }

  // Decomposition property.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
      const ThetaPoint t = detail::random_theta(rng);
      for (int n = 1; n <= 3; ++n) {
        for (int d = 0; d <= 3; ++d) {
          for (int k = 0; k <= d; ++k) {
            worst = std::max(worst, check_decomposition(k, d - k, n, t));
          }
        }
      }
    }
    detail::report(out, results, "decomposition", worst, tol);
  }

  // Christoffel-Darboux closed form against the direct kernel sum.
  {
    double worst = 0.0;
    for (int n = 1; n <= std::min(n_max, 8); ++n) {
      for (int trial = 0; trial < 40; ++trial) {
        const XPoint x = theta_to_x(detail::random_theta(rng));
        XPoint y = theta_to_x(detail::random_theta(rng));
        while (std::abs(x.x1 - y.x1) < 1e-4 || std::abs(x.x2 - y.x2) < 1e-4) {
          y = theta_to_x(detail::random_theta(rng));
        }
        const double direct = cd_kernel_direct(n, x, y);
        for (int dir : {1, 2}) {
          const double closed = cd_kernel(n, x, y, dir);
          worst = std::max(worst, std::abs(closed - direct) / (1.0 + std::abs(direct)));
        }
      }
    }
    detail::report(out, results, "cd-identity", worst, tol);
  }

  // Plan-level properties.
  {
    double gram = 0.0, inverse = 0.0, orth = 0.0, parseval = 0.0, roundtrip = 0.0;
    double commutator = 0.0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Eigen::Index n_shift = std::min(n_max, 8);
    for (int n = 1; n <= n_max; ++n) {
      const TransformPlan plan = build_plan(n);
      const Eigen::Index N = plan.size;
      gram = std::max(gram, plan.gram_offdiag * plan.d.maxCoeff());
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
      inverse = std::max(inverse, (plan.F * plan.F_inv - I).cwiseAbs().maxCoeff());
      orth = std::max(orth, (plan.F_orth.transpose() * plan.F_orth - I).cwiseAbs().maxCoeff());
      Eigen::VectorXd v(N);
      for (Eigen::Index i = 0; i < N; ++i) v(i) = gauss(rng);
      parseval = std::max(parseval,
                          std::abs(apply_orthogonal(plan, v).norm() - v.norm()) / v.norm());
      const Spectrum c{v};
      roundtrip = std::max(roundtrip,
                           (analyze(plan, synthesize(plan, c)).values - v).cwiseAbs().maxCoeff());
      if (n <= n_shift) {
        const ShiftMatrices sh = build_shift_matrices(plan);
        commutator = std::max(commutator,
                              (sh.S1 * sh.S2 - sh.S2 * sh.S1).cwiseAbs().maxCoeff());
      }
    }
    detail::report(out, results, "gram-diagonal", gram, tol);
    detail::report(out, results, "inverse", inverse, tol);
    detail::report(out, results, "orthogonality", orth, tol);
    detail::report(out, results, "parseval", parseval, tol);
    detail::report(out, results, "round-trip", roundtrip, tol);
    detail::report(out, results, "shift-commutator", commutator, tol);
  }

  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  out << (failed == 0 ? "verify: all properties hold" : "verify: FAILURES present") << " (n_max="
      << n_max << ", tol=" << fmt_full(tol) << ")\n";
  return failed == 0 ? kExitOk : kExitValidation;
}

}  // namespace tridct::cli
