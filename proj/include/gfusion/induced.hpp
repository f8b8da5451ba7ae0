#pragma once

//
// The ordinary frame induced by a g-fusion system: for an orthonormal
// basis {e_{j,k}} of each H_j,
//
//     u_{j,k} = v_j π_{W_j} Λ_jᴴ e_{j,k},
//
// so that ⟨f, u_{j,k}⟩ = ⟨v_j Λ_j π_{W_j} f, e_{j,k}⟩. The vector family
// {u_{j,k}} is a frame / Riesz basis / orthonormal basis exactly when the
// system is the g-fusion counterpart, and Σ u uᴴ equals S.
//

#include <gfusion/bases.hpp>

#include <optional>
#include <vector>

namespace gfusion {

template <Field S>
struct InducedVector {
  std::size_t j;
  Index k;
  Vector<S> u;
};

template <Field S>
struct InducedFamily {
  std::vector<InducedVector<S>> vectors;
  std::vector<Matrix<S>> source_onbs;  // columns of block j are e_{j,k}

  /// n × Σm_j matrix with the u_{j,k} as columns, in (j, k) order.
  Matrix<S> matrix() const {
    if (vectors.empty()) return Matrix<S>();
    Matrix<S> m(vectors.front().u.size(), static_cast<Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Index>(i)) = vectors[i].u;
    return m;
  }
};

template <Field S>
InducedFamily<S> induce_vectors(const GFusionSystem<S>& sys,
                                const std::optional<std::vector<Matrix<S>>>& onbs = std::nullopt,
                                double tol_ortho = Tolerances{}.ortho) {
  InducedFamily<S> fam;
  if (onbs) {
    if (onbs->size() != sys.size()) {
      throw BadBasis("induce_vectors: expected one basis per subsystem");
    }
    for (std::size_t j = 0; j < sys.size(); ++j) {
      const Matrix<S>& e = (*onbs)[j];
      const Index m = sys.block_dim(j);
      if (e.rows() != m || e.cols() != m) {
        throw BadBasis("induce_vectors: basis " + std::to_string(j) + " must be " +
                       std::to_string(m) + "×" + std::to_string(m));
      }
      const double dev = (e.adjoint() * e - Matrix<S>::Identity(m, m)).cwiseAbs().maxCoeff();
      if (!(dev <= tol_ortho)) {
        throw BadBasis("induce_vectors: basis " + std::to_string(j) +
                       " is not orthonormal (deviation " + std::to_string(dev) + ")");
      }
    }
    fam.source_onbs = *onbs;
  } else {
    for (std::size_t j = 0; j < sys.size(); ++j) {
      fam.source_onbs.push_back(Matrix<S>::Identity(sys.block_dim(j), sys.block_dim(j)));
    }
  }
  for (std::size_t j = 0; j < sys.size(); ++j) {
    const Matrix<S> block = sys.weight(j) * (sys.restricted(j).adjoint() * fam.source_onbs[j]);
    for (Index k = 0; k < block.cols(); ++k) fam.vectors.push_back({j, k, block.col(k)});
  }
  return fam;
}

struct CorrespondenceReport {
  // (a) frame bounds of {u_{j,k}} versus the system's optimal bounds
  SpectralBounds family_spectrum;
  SpectralBounds system_spectrum;
  bool family_is_frame = false;
  bool system_is_frame = false;
  double bounds_deviation = 0.0;
  // (b) Σ u uᴴ versus S
  double operator_deviation = 0.0;
  // (c) Riesz / orthonormal-basis counterparts
  bool system_is_riesz = false;
  bool family_is_riesz = false;
  std::optional<FrameBounds> family_riesz_bounds;  // Gram eigenvalue extremes
  double riesz_bounds_deviation = 0.0;
  bool system_is_orthonormal = false;
  bool family_is_orthonormal = false;
  double family_gram_deviation = 0.0;  // max |UᴴU − I|, entrywise
  Index family_size = 0;

  bool consistent = false;
};

template <Field S>
CorrespondenceReport verify_correspondence(const GFusionSystem<S>& sys, const InducedFamily<S>& fam,
                                           double tol = Tolerances{}.verdict,
                                           const Tolerances& tols = {}) {
  CorrespondenceReport r;
  const Matrix<S> u = fam.matrix();
  if (u.rows() != sys.ambient_dim() || u.cols() != sys.total_block_dim()) {
    throw DimensionMismatch("verify_correspondence: family does not match the system");
  }
  r.family_size = u.cols();

  const Matrix<S> s = frame_operator(sys);
  const Matrix<S> su = hermitian_part<S>(u * u.adjoint());
  r.operator_deviation = (su - s).cwiseAbs().maxCoeff();

  const FrameVerdict sv = frame_bounds(sys, tols);
  r.system_spectrum = sv.spectrum;
  r.system_is_frame = sv.is_frame();
  r.family_spectrum = hermitian_eigen_extremes(su, tols.herm);
  r.family_is_frame = r.family_spectrum.min_eig > tols.pd;
  r.bounds_deviation = std::max(std::abs(r.family_spectrum.min_eig - r.system_spectrum.min_eig),
                                std::abs(r.family_spectrum.max_eig - r.system_spectrum.max_eig));

  // A vector family is a Riesz basis iff it is complete and its Gram
  // matrix is positive definite; Riesz bounds are the Gram extremes.
  const Matrix<S> gram = hermitian_part<S>(u.adjoint() * u);
  const SpectralBounds gb = hermitian_eigen_extremes(gram, tols.herm);
  const bool complete = numerical_rank(u, tols.rank) == sys.ambient_dim();
  r.family_is_riesz = complete && gb.min_eig > tol * tol;
  if (r.family_is_riesz) r.family_riesz_bounds = FrameBounds{gb.min_eig, gb.max_eig};

  const RieszVerdict rv = riesz_bounds(sys, tol, tols.rank);
  r.system_is_riesz = rv.is_riesz();
  if (rv.is_riesz() && r.family_is_riesz) {
    r.riesz_bounds_deviation = std::max(std::abs(rv.bounds->lower - gb.min_eig),
                                        std::abs(rv.bounds->upper - gb.max_eig));
  }

  r.family_gram_deviation =
      (gram - Matrix<S>::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  r.family_is_orthonormal = r.family_gram_deviation <= tol && r.family_size == sys.ambient_dim();
  r.system_is_orthonormal = is_gf_orthonormal(sys, tol, tols).is_gf_orthonormal;

  r.consistent = r.operator_deviation <= tol && r.family_is_frame == r.system_is_frame &&
                 r.bounds_deviation <= tol && r.family_is_riesz == r.system_is_riesz &&
                 r.riesz_bounds_deviation <= tol &&
                 r.family_is_orthonormal == r.system_is_orthonormal;
  return r;
}

}  // namespace gfusion
