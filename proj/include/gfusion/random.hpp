#pragma once

// Seeded random draws used by the generators and the sampling certifiers.
// Nothing in the toolkit seeds from the clock.

#include <gfusion/linalg.hpp>

#include <cmath>
#include <cstdint>
#include <random>

namespace gfusion {

using Rng = std::mt19937_64;

/// Standard Gaussian scalar; complex draws have unit expected modulus².
template <Field S>
S gaussian(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  if constexpr (is_complex_v<S>) {
    const double re = nd(rng);
    const double im = nd(rng);
    return Complex(re, im) / std::sqrt(2.0);
  } else {
    return nd(rng);
  }
}

template <Field S>
Matrix<S> gaussian_matrix(Index rows, Index cols, Rng& rng) {
  Matrix<S> m(rows, cols);
  // column-major fill keeps the draw order independent of Eigen internals
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m(r, c) = gaussian<S>(rng);
  return m;
}

template <Field S>
Vector<S> random_unit_vector(Index n, Rng& rng) {
  Vector<S> v(n);
  do {
    for (Index i = 0; i < n; ++i) v(i) = gaussian<S>(rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

/// Haar-distributed unitary (orthogonal in the real case): QR of a
/// Gaussian matrix with the diagonal phases of R divided out.
template <Field S>
Matrix<S> random_unitary(Index n, Rng& rng) {
  const Matrix<S> g = gaussian_matrix<S>(n, n, rng);
  Eigen::HouseholderQR<Matrix<S>> qr(g);
  Matrix<S> q = qr.householderQ();
  const Matrix<S> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

/// U·diag(s)·Vᴴ with singular values drawn uniformly from [lo, hi].
template <Field S>
Matrix<S> random_conditioned(Index n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> ud(lo, hi);
  Eigen::VectorXd s(n);
  for (Index i = 0; i < n; ++i) s(i) = ud(rng);
  const Matrix<S> u = random_unitary<S>(n, rng);
  const Matrix<S> v = random_unitary<S>(n, rng);
  return u * s.cast<S>().asDiagonal() * v.adjoint();
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Index uniform_index(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

}  // namespace gfusion
