#pragma once

//
// gf-Riesz and gf-orthonormal basis tests, the orthogonal-decomposition
// characterization of orthonormal bases, and the cross operator V that
// links a gf-orthonormal basis Θ to a g-fusion frame Λ on the same
// subspaces and weights:
//
//     V = Σ_j v_j² π_{W_j} Λ_jᴴ Θ_j π_{W_j},   Λ_j π_{W_j} = Θ_j π_{W_j} Vᴴ.
//

#include <gfusion/frame.hpp>

#include <algorithm>
#include <optional>

namespace gfusion {

struct RieszVerdict {
  double sigma_min = 0.0;  // of T over the whole direct sum (0 when not injective)
  double sigma_max = 0.0;
  bool complete = false;
  std::optional<FrameBounds> bounds;  // empty => NotRiesz

  bool is_riesz() const { return bounds.has_value(); }
};

/// (σ_min(T)², σ_max(T)²) when the system is gf-complete and the synthesis
/// matrix T is injective with σ_min(T) > tol.
template <Field S>
RieszVerdict riesz_bounds(const GFusionSystem<S>& sys, double tol = Tolerances{}.verdict,
                          double tol_rank = Tolerances{}.rank) {
  const Matrix<S> t = synthesis_matrix(sys);
  RieszVerdict v;
  v.sigma_max = operator_norm(t);
  v.sigma_min = injectivity_modulus(t);
  v.complete = is_gf_complete(sys, tol_rank);
  if (v.complete && v.sigma_min > tol) {
    v.bounds = FrameBounds{v.sigma_min * v.sigma_min, v.sigma_max * v.sigma_max,
                           BoundsKind::optimal_spectral};
  }
  return v;
}

struct BasisVerdict {
  bool is_riesz = false;
  std::optional<FrameBounds> riesz_bounds;
  bool is_gf_orthonormal = false;
  bool gram_ok = false;        // block Gram identity
  bool parseval_ok = false;    // S = I
  double gram_deviation = 0.0;      // max_{i,j} ‖G_ij − δ_ij I‖
  double parseval_deviation = 0.0;  // ‖S − I‖
};

/// Block Gram matrix G = TᴴT with G_ij = v_i v_j Λ_i π_{W_i} π_{W_j} Λ_jᴴ;
/// returns max over blocks of ‖G_ij − δ_ij I‖.
template <Field S>
double gram_block_deviation(const GFusionSystem<S>& sys) {
  const Matrix<S> t = synthesis_matrix(sys);
  const Matrix<S> g = t.adjoint() * t;
  double worst = 0.0;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = 0; j < sys.size(); ++j) {
      Matrix<S> block = g.block(sys.block_offset(i), sys.block_offset(j), sys.block_dim(i),
                                sys.block_dim(j));
      if (i == j) block -= Matrix<S>::Identity(sys.block_dim(i), sys.block_dim(i));
      worst = std::max(worst, operator_norm(block));
    }
  }
  return worst;
}

template <Field S>
BasisVerdict is_gf_orthonormal(const GFusionSystem<S>& sys, double tol = Tolerances{}.verdict,
                               const Tolerances& tols = {}) {
  BasisVerdict v;
  v.gram_deviation = gram_block_deviation(sys);
  const Index n = sys.ambient_dim();
  v.parseval_deviation = operator_norm<S>(frame_operator(sys) - Matrix<S>::Identity(n, n));
  v.gram_ok = v.gram_deviation <= tol;
  v.parseval_ok = v.parseval_deviation <= tol;
  v.is_gf_orthonormal = v.gram_ok && v.parseval_ok;
  const RieszVerdict r = riesz_bounds(sys, tol, tols.rank);
  v.is_riesz = r.is_riesz();
  v.riesz_bounds = r.bounds;
  return v;
}

/// The two-part characterization of gf-orthonormal bases: each block
/// v_j π_{W_j} Λ_jᴴ is an isometry, and the block images are mutually
/// orthogonal and fill H.
struct OrthogonalDecomposition {
  std::vector<double> isometry_deviation;  // per j: ‖YᴴY − I‖
  double cross_deviation = 0.0;            // max_{i≠j} ‖Y_iᴴ Y_j‖
  Index image_dim_sum = 0;                 // Σ rank(Y_j)
  Index combined_rank = 0;                 // rank [Y_1 … Y_J]
  bool isometric = false;
  bool orthogonal = false;
  bool spans = false;

  bool holds() const { return isometric && orthogonal && spans; }
};

template <Field S>
OrthogonalDecomposition orthogonal_decomposition(const GFusionSystem<S>& sys,
                                                 double tol = Tolerances{}.verdict,
                                                 double tol_rank = Tolerances{}.rank) {
  OrthogonalDecomposition d;
  std::vector<Matrix<S>> y;
  y.reserve(sys.size());
  for (std::size_t j = 0; j < sys.size(); ++j) {
    y.push_back(sys.weight(j) * sys.restricted(j).adjoint());
    const Index m = sys.block_dim(j);
    d.isometry_deviation.push_back(
        operator_norm<S>(y.back().adjoint() * y.back() - Matrix<S>::Identity(m, m)));
    d.image_dim_sum += numerical_rank(y.back(), tol_rank);
  }
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j)
      d.cross_deviation = std::max(d.cross_deviation, operator_norm<S>(y[i].adjoint() * y[j]));
  d.combined_rank = numerical_rank(synthesis_matrix(sys), tol_rank);
  d.isometric = std::all_of(d.isometry_deviation.begin(), d.isometry_deviation.end(),
                            [&](double e) { return e <= tol; });
  d.orthogonal = d.cross_deviation <= tol;
  d.spans = d.image_dim_sum == sys.ambient_dim() && d.combined_rank == sys.ambient_dim();
  return d;
}

template <Field S>
struct CrossOperatorReport {
  Matrix<S> v;
  double intertwine_residual = 0.0;  // max_j ‖Λ_j π_{W_j} − Θ_j π_{W_j} Vᴴ‖
  double norm = 0.0;                 // ‖V‖
  double norm_bound = 0.0;           // √B of the frame Λ
  double sigma_min = 0.0;
  bool surjective = false;

  // Filled by classify_cross_operator.
  bool classified = false;
  double isometry_deviation = 0.0;  // ‖V Vᴴ − I‖
  bool adjoint_isometric = false;
  bool invertible = false;
  bool unitary = false;
  bool lambda_parseval = false;
  bool lambda_riesz = false;
  bool lambda_orthonormal = false;
  /// Each property the frame's class guarantees was observed.
  bool corollaries_hold = false;
};

template <Field S>
CrossOperatorReport<S> cross_operator(const GFusionSystem<S>& theta, const GFusionSystem<S>& lambda,
                                      double tol = Tolerances{}.verdict,
                                      const Tolerances& tols = {}) {
  if (auto why = structure_mismatch(theta, lambda, tols.verdict)) {
    throw PreconditionFailed("cross_operator: systems must share subspaces, weights and target "
                             "dimensions (" + *why + ")");
  }
  const BasisVerdict tv = is_gf_orthonormal(theta, tol, tols);
  if (!tv.is_gf_orthonormal) {
    throw PreconditionFailed("cross_operator: theta is not a gf-orthonormal basis (Gram deviation " +
                             std::to_string(tv.gram_deviation) + ", Parseval deviation " +
                             std::to_string(tv.parseval_deviation) + ")");
  }
  const FrameVerdict lv = frame_bounds(lambda, tols);
  if (!lv.is_frame()) throw PreconditionFailed("cross_operator: lambda is not a g-fusion frame");

  const Index n = theta.ambient_dim();
  CrossOperatorReport<S> r;
  r.v = Matrix<S>::Zero(n, n);
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double w2 = lambda.weight(j) * lambda.weight(j);
    r.v += w2 * (lambda.restricted(j).adjoint() * theta.restricted(j));
  }
  const Matrix<S> vh = r.v.adjoint();
  for (std::size_t j = 0; j < theta.size(); ++j) {
    r.intertwine_residual = std::max(
        r.intertwine_residual, operator_norm<S>(lambda.restricted(j) - theta.restricted(j) * vh));
  }
  r.norm = operator_norm(r.v);
  r.norm_bound = std::sqrt(lv.bounds->upper);
  r.sigma_min = injectivity_modulus(r.v);
  r.surjective = numerical_rank(r.v, tols.rank) == n;
  return r;
}

/// Adjoint-isometry, invertibility and unitarity of V, together with the
/// class of Λ (Parseval, gf-Riesz, gf-orthonormal) that forces each.
template <Field S>
CrossOperatorReport<S> classify_cross_operator(CrossOperatorReport<S> report,
                                               const GFusionSystem<S>& lambda,
                                               double tol = Tolerances{}.verdict,
                                               const Tolerances& tols = {}) {
  const Index n = report.v.rows();
  report.isometry_deviation =
      operator_norm<S>(report.v * report.v.adjoint() - Matrix<S>::Identity(n, n));
  report.adjoint_isometric = report.isometry_deviation <= tol;
  report.invertible = report.sigma_min > tol * report.norm;
  report.unitary = report.adjoint_isometric && report.invertible;

  const FrameVerdict fv = frame_bounds(lambda, tols);
  const BasisVerdict bv = is_gf_orthonormal(lambda, tol, tols);
  report.lambda_parseval = fv.is_parseval(tol);
  report.lambda_riesz = bv.is_riesz;
  report.lambda_orthonormal = bv.is_gf_orthonormal;
  report.corollaries_hold = (!report.lambda_parseval || report.adjoint_isometric) &&
                            (!report.lambda_riesz || report.invertible) &&
                            (!report.lambda_orthonormal || report.unitary);
  report.classified = true;
  return report;
}

}  // namespace gfusion
