#pragma once

// Shared fixtures for the unit tests: small hand-built systems and
// independent oracles that do not go through the library's assembly code.

#include <gfusion/gfusion.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace gfusion::testing {

/// W_j = span{e_j}, Λ_j = e_jᵀ in ℝ^n with the given weights.
inline GFusionSystem<double> coordinate_system(const std::vector<double>& weights) {
  const Index n = static_cast<Index>(weights.size());
  std::vector<Subsystem<double>> subs;
  for (Index j = 0; j < n; ++j) {
    const Matrix<double> e = Matrix<double>::Identity(n, n).col(j);
    subs.push_back({weights[static_cast<std::size_t>(j)],
                    Subspace<double>::from_orthonormal(e, 1e-12), e.transpose()});
  }
  return GFusionSystem<double>(n, std::move(subs));
}

/// One subsystem on span{e₁} in ℝ²: not a frame.
inline GFusionSystem<double> half_coordinate_system() {
  const Matrix<double> e1 = Matrix<double>::Identity(2, 2).col(0);
  return GFusionSystem<double>(
      2, {{1.0, Subspace<double>::from_orthonormal(e1, 1e-12), e1.transpose()}});
}

template <Field S>
double max_abs(const Matrix<S>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Σ_j v_j² ‖Λ_j P_j f‖², with P_j built from the stored basis directly.
template <Field S>
double direct_frame_sum(const GFusionSystem<S>& sys, const Vector<S>& f) {
  double s = 0.0;
  for (std::size_t j = 0; j < sys.size(); ++j) {
    const Matrix<S>& q = sys.subspace(j).basis();
    const Vector<S> pf = q * (q.adjoint() * f);
    s += sys.weight(j) * sys.weight(j) * (sys.lambda(j) * pf).squaredNorm();
  }
  return s;
}

/// Dense frame operator summed column by column from the definition.
template <Field S>
Matrix<S> oracle_frame_operator(const GFusionSystem<S>& sys) {
  const Index n = sys.ambient_dim();
  Matrix<S> out = Matrix<S>::Zero(n, n);
  for (Index c = 0; c < n; ++c) {
    const Vector<S> e = Matrix<S>::Identity(n, n).col(c);
    for (std::size_t j = 0; j < sys.size(); ++j) {
      const Matrix<S>& q = sys.subspace(j).basis();
      const Vector<S> pe = q * (q.adjoint() * e);
      const Vector<S> back = sys.lambda(j).adjoint() * (sys.lambda(j) * pe);
      out.col(c) += sys.weight(j) * sys.weight(j) * (q * (q.adjoint() * back));
    }
  }
  return out;
}

/// Extremes of the Rayleigh quotient over random unit vectors.
template <Field S>
std::pair<double, double> rayleigh_range(const Matrix<S>& h, int samples, Rng& rng) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int s = 0; s < samples; ++s) {
    const Vector<S> x = random_unit_vector<S>(h.rows(), rng);
    const double q = std::real(x.dot(h * x));
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return {lo, hi};
}

}  // namespace gfusion::testing
