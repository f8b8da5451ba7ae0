#pragma once

//
// g-fusion frame core: synthesis / analysis / frame operators, optimal
// bounds, gf-completeness, canonical dual and reconstruction.
//
// Conventions: T maps the direct sum ⊕H_j to H with block j equal to
// v_j π_{W_j} Λ_jᴴ; its adjoint T* sends f to {v_j Λ_j π_{W_j} f}; the
// frame operator is S = T T*. Per-j sums run in index order so results
// are reproducible bit for bit.
//

#include <gfusion/system.hpp>

#include <optional>

namespace gfusion {

enum class BoundsKind { optimal_spectral, certified };

inline const char* to_string(BoundsKind k) {
  return k == BoundsKind::optimal_spectral ? "optimal-spectral" : "certified";
}

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  BoundsKind kind = BoundsKind::optimal_spectral;
};

/// Outcome of a frame test. An empty `bounds` is the NotAFrame verdict;
/// the spectrum of S is kept either way.
struct FrameVerdict {
  SpectralBounds spectrum;
  std::optional<FrameBounds> bounds;

  bool is_frame() const { return bounds.has_value(); }
  bool is_parseval(double tol) const {
    return is_frame() && std::abs(bounds->lower - 1.0) <= tol && std::abs(bounds->upper - 1.0) <= tol;
  }
};

template <Field S>
DirectSumVector<S> analysis(const GFusionSystem<S>& sys, const Vector<S>& f) {
  if (f.size() != sys.ambient_dim()) {
    throw DimensionMismatch("analysis: vector has length " + std::to_string(f.size()) +
                            ", expected " + std::to_string(sys.ambient_dim()));
  }
  DirectSumVector<S> g;
  g.blocks.reserve(sys.size());
  for (std::size_t j = 0; j < sys.size(); ++j) {
    g.blocks.push_back(sys.weight(j) * (sys.restricted(j) * f));
  }
  return g;
}

template <Field S>
Vector<S> synthesis(const GFusionSystem<S>& sys, const DirectSumVector<S>& g) {
  require_shape(sys, g);
  Vector<S> f = Vector<S>::Zero(sys.ambient_dim());
  for (std::size_t j = 0; j < sys.size(); ++j) {
    f += sys.weight(j) * (sys.restricted(j).adjoint() * g.blocks[j]);
  }
  return f;
}

/// Matrix of T: n × Σm_j, block j = v_j π_{W_j} Λ_jᴴ.
template <Field S>
Matrix<S> synthesis_matrix(const GFusionSystem<S>& sys) {
  Matrix<S> t(sys.ambient_dim(), sys.total_block_dim());
  for (std::size_t j = 0; j < sys.size(); ++j) {
    t.middleCols(sys.block_offset(j), sys.block_dim(j)) =
        sys.weight(j) * sys.restricted(j).adjoint();
  }
  return t;
}

/// Matrix of T*: Σm_j × n, block j = v_j Λ_j π_{W_j}.
template <Field S>
Matrix<S> analysis_matrix(const GFusionSystem<S>& sys) {
  Matrix<S> a(sys.total_block_dim(), sys.ambient_dim());
  for (std::size_t j = 0; j < sys.size(); ++j) {
    a.middleRows(sys.block_offset(j), sys.block_dim(j)) = sys.weight(j) * sys.restricted(j);
  }
  return a;
}

/// Σ v_j² π_{W_j} Λ_jᴴ Λ_j π_{W_j}, symmetrized.
template <Field S>
Matrix<S> frame_operator(const GFusionSystem<S>& sys) {
  const Index n = sys.ambient_dim();
  Matrix<S> s = Matrix<S>::Zero(n, n);
  for (std::size_t j = 0; j < sys.size(); ++j) {
    const auto& r = sys.restricted(j);
    s += (sys.weight(j) * sys.weight(j)) * (r.adjoint() * r);
  }
  return hermitian_part(s);
}

/// Optimal bounds (λ_min(S), λ_max(S)); NotAFrame when λ_min ≤ tol_pd.
template <Field S>
FrameVerdict frame_bounds(const GFusionSystem<S>& sys, const Tolerances& tol = {}) {
  FrameVerdict v;
  v.spectrum = hermitian_eigen_extremes(frame_operator(sys), tol.herm);
  if (v.spectrum.min_eig > tol.pd) {
    v.bounds = FrameBounds{v.spectrum.min_eig, v.spectrum.max_eig, BoundsKind::optimal_spectral};
  }
  return v;
}

/// Joint kernel of the Λ_j π_{W_j} is trivial, i.e. their stack has
/// numerical rank n.
template <Field S>
bool is_gf_complete(const GFusionSystem<S>& sys, double tol_rank = Tolerances{}.rank) {
  Matrix<S> stacked(sys.total_block_dim(), sys.ambient_dim());
  for (std::size_t j = 0; j < sys.size(); ++j) {
    stacked.middleRows(sys.block_offset(j), sys.block_dim(j)) = sys.restricted(j);
  }
  return numerical_rank(stacked, tol_rank) == sys.ambient_dim();
}

/// Canonical dual (S⁻¹W_j, Λ_j π_{W_j} S⁻¹, v_j). The dual subspaces are
/// re-orthonormalized since S⁻¹ does not preserve orthonormality.
template <Field S>
GFusionSystem<S> canonical_dual(const GFusionSystem<S>& sys, const Tolerances& tol = {}) {
  const Matrix<S> s = frame_operator(sys);
  Matrix<S> s_inv;
  try {
    s_inv = hpd_inverse(s, tol.pd, tol.herm);
  } catch (const NotPositiveDefinite& e) {
    throw NotAFrame(std::string("canonical_dual: frame operator is not invertible: ") + e.what());
  }
  std::vector<Subsystem<S>> dual;
  dual.reserve(sys.size());
  for (std::size_t j = 0; j < sys.size(); ++j) {
    Subspace<S> w = orthonormalize<S>(s_inv * sys.subspace(j).basis(), tol.rank, tol.ortho);
    dual.push_back({sys.weight(j), std::move(w), sys.restricted(j) * s_inv});
  }
  return GFusionSystem<S>(sys.ambient_dim(), std::move(dual));
}

template <Field S>
struct Reconstruction {
  Vector<S> primal;   // Σ v_j² π_{W_j} Λ_jᴴ Λ̃_j π_{W̃_j} f
  Vector<S> swapped;  // Σ v_j² π_{W̃_j} Λ̃_jᴴ Λ_j π_{W_j} f
  double primal_residual = 0.0;
  double swapped_residual = 0.0;
};

template <Field S>
Reconstruction<S> reconstruct(const GFusionSystem<S>& sys, const GFusionSystem<S>& dual,
                              const Vector<S>& f) {
  if (f.size() != sys.ambient_dim()) throw DimensionMismatch("reconstruct: vector length");
  if (dual.size() != sys.size() || dual.ambient_dim() != sys.ambient_dim()) {
    throw DimensionMismatch("reconstruct: dual does not match the system");
  }
  const Index n = sys.ambient_dim();
  Reconstruction<S> out{Vector<S>::Zero(n), Vector<S>::Zero(n)};
  for (std::size_t j = 0; j < sys.size(); ++j) {
    if (dual.block_dim(j) != sys.block_dim(j)) {
      throw DimensionMismatch("reconstruct: dual block " + std::to_string(j) + " has the wrong shape");
    }
    const double w2 = sys.weight(j) * sys.weight(j);
    out.primal += w2 * (sys.restricted(j).adjoint() * (dual.restricted(j) * f));
    out.swapped += w2 * (dual.restricted(j).adjoint() * (sys.restricted(j) * f));
  }
  out.primal_residual = (out.primal - f).norm();
  out.swapped_residual = (out.swapped - f).norm();
  return out;
}

}  // namespace gfusion
