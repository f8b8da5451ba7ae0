#pragma once

//
// Dense linear-algebra substrate: orthonormal bases, projectors,
// Hermitian spectra, operator norms and positive-definite inverses.
//
// Every routine is a pure function over Eigen matrices of a single
// scalar field (double or std::complex<double>). Mixing fields is a
// compile error.
//

#include <gfusion/error.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <concepts>
#include <string>

namespace gfusion {

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <typename S>
concept Field = std::same_as<S, double> || std::same_as<S, Complex>;

template <Field S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <Field S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <Field S>
inline constexpr bool is_complex_v = std::same_as<S, Complex>;

template <Field S>
constexpr const char* field_name() {
  return is_complex_v<S> ? "complex" : "real";
}

/// Numerical thresholds shared by the whole toolkit. Every operation takes
/// the set (or a single member) explicitly; these are the defaults.
struct Tolerances {
  double rank = 1e-10;     // relative singular-value cutoff for numerical rank
  double ortho = 1e-10;    // orthonormality / projector identities
  double herm = 1e-8;      // relative asymmetry accepted before symmetrizing
  double pd = 1e-12;       // smallest eigenvalue accepted as positive
  double inv = 1e-9;       // inverse residual
  double verdict = 1e-9;   // basis classification and bound comparisons
};

struct SpectralBounds {
  double min_eig = 0.0;
  double max_eig = 0.0;
};

template <Field S>
bool all_finite(const Matrix<S>& x) {
  return x.allFinite();
}

template <Field S>
void require_finite(const Matrix<S>& x, const char* what) {
  if (!x.allFinite()) {
    throw NonFiniteInput(std::string(what) + ": entries contain NaN or Inf");
  }
}

template <Field S>
Matrix<S> hermitian_part(const Matrix<S>& s) {
  Matrix<S> h = (s + s.adjoint()) / 2.0;
  return h;
}

/// Singular values in decreasing order (min(rows, cols) of them).
template <Field S>
Eigen::VectorXd singular_values(const Matrix<S>& x) {
  if (x.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<Matrix<S>> svd(x);
  return svd.singularValues();
}

/// Largest singular value; zero for empty operators.
template <Field S>
double operator_norm(const Matrix<S>& x) {
  require_finite(x, "operator_norm");
  if (x.size() == 0) return 0.0;
  return singular_values(x)(0);
}

/// Smallest singular value of x viewed as a map on its full domain:
/// a wide matrix has a kernel, so the answer is 0 when cols > rows.
template <Field S>
double injectivity_modulus(const Matrix<S>& x) {
  if (x.cols() == 0) return 0.0;
  if (x.cols() > x.rows()) return 0.0;
  const Eigen::VectorXd sv = singular_values(x);
  return sv(sv.size() - 1);
}

/// Count of singular values above rel_tol * sigma_max.
template <Field S>
Index numerical_rank(const Matrix<S>& x, double rel_tol) {
  if (x.size() == 0) return 0;
  const Eigen::VectorXd sv = singular_values(x);
  if (sv(0) == 0.0) return 0;
  const double cut = rel_tol * sv(0);
  return static_cast<Index>((sv.array() > cut).count());
}

/// Closed subspace of C^n (or R^n) carried by an orthonormal column basis.
template <Field S>
class Subspace {
 public:
  /// Wraps an already-orthonormal basis. Throws BadBasis if basisᴴbasis
  /// deviates from the identity by more than tol_ortho.
  static Subspace from_orthonormal(Matrix<S> basis, double tol_ortho = Tolerances{}.ortho) {
    require_finite(basis, "Subspace");
    const Index d = basis.cols();
    if (d > 0) {
      const double dev =
          (basis.adjoint() * basis - Matrix<S>::Identity(d, d)).cwiseAbs().maxCoeff();
      if (dev > tol_ortho) {
        throw BadBasis("Subspace: basis columns are not orthonormal (deviation " +
                       std::to_string(dev) + ")");
      }
    }
    return Subspace(std::move(basis));
  }

  static Subspace zero(Index ambient_dim) { return Subspace(Matrix<S>(ambient_dim, 0)); }

  static Subspace whole(Index ambient_dim) {
    return Subspace(Matrix<S>::Identity(ambient_dim, ambient_dim));
  }

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  const Matrix<S>& basis() const { return basis_; }

  Matrix<S> projector() const {
    if (dim() == 0) return Matrix<S>::Zero(ambient_dim(), ambient_dim());
    return hermitian_part<S>(basis_ * basis_.adjoint());
  }

 private:
  explicit Subspace(Matrix<S> basis) : basis_(std::move(basis)) {}

  Matrix<S> basis_;
};

/// Orthonormal basis for the column space of `spanning`.
///
/// Rank is decided by singular values above tol_rank * sigma_max. A
/// spanning set whose columns are already orthonormal (within tol_ortho)
/// is returned unchanged, so serialized bases round-trip exactly.
template <Field S>
Subspace<S> orthonormalize(const Matrix<S>& spanning, double tol_rank = Tolerances{}.rank,
                           double tol_ortho = Tolerances{}.ortho) {
  require_finite(spanning, "orthonormalize");
  if (tol_rank <= 0.0) throw InvalidArgument("orthonormalize: tol_rank must be positive");
  const Index n = spanning.rows();
  const Index k = spanning.cols();
  if (k == 0 || n == 0) return Subspace<S>::zero(n);

  if (k <= n) {
    const double dev =
        (spanning.adjoint() * spanning - Matrix<S>::Identity(k, k)).cwiseAbs().maxCoeff();
    if (dev <= tol_ortho) return Subspace<S>::from_orthonormal(spanning, tol_ortho);
  }

  Eigen::JacobiSVD<Matrix<S>> svd(spanning, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv(0) == 0.0) return Subspace<S>::zero(n);
  const Index r = static_cast<Index>((sv.array() > tol_rank * sv(0)).count());
  return Subspace<S>::from_orthonormal(svd.matrixU().leftCols(r), 1e3 * tol_ortho);
}

template <Field S>
Matrix<S> projector(const Subspace<S>& w) {
  return w.projector();
}

/// Extreme eigenvalues of the Hermitian part of s.
///
/// Rejects inputs whose asymmetry ‖s − sᴴ‖ exceeds tol_herm·‖s‖.
template <Field S>
SpectralBounds hermitian_eigen_extremes(const Matrix<S>& s, double tol_herm = Tolerances{}.herm) {
  if (s.rows() != s.cols() || s.rows() == 0) {
    throw DimensionMismatch("hermitian_eigen_extremes: expected a non-empty square operator");
  }
  require_finite(s, "hermitian_eigen_extremes");
  const double asym = operator_norm<S>(s - s.adjoint());
  if (asym > tol_herm * operator_norm(s)) {
    throw NotHermitian("hermitian_eigen_extremes: operator is not Hermitian (asymmetry " +
                       std::to_string(asym) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix<S>> eig(hermitian_part(s), Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

/// Inverse of a Hermitian positive-definite operator via its spectral
/// decomposition. The result is exactly Hermitian.
template <Field S>
Matrix<S> hpd_inverse(const Matrix<S>& s, double tol_pd = Tolerances{}.pd,
                      double tol_herm = Tolerances{}.herm) {
  if (s.rows() != s.cols() || s.rows() == 0) {
    throw DimensionMismatch("hpd_inverse: expected a non-empty square operator");
  }
  require_finite(s, "hpd_inverse");
  const double asym = operator_norm<S>(s - s.adjoint());
  if (asym > tol_herm * operator_norm(s)) {
    throw NotHermitian("hpd_inverse: operator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix<S>> eig(hermitian_part(s));
  const Eigen::VectorXd& ev = eig.eigenvalues();
  if (ev(0) <= tol_pd) {
    throw NotPositiveDefinite("hpd_inverse: smallest eigenvalue " + std::to_string(ev(0)) +
                              " is not above " + std::to_string(tol_pd));
  }
  const Matrix<S>& q = eig.eigenvectors();
  Matrix<S> inv = q * ev.cwiseInverse().cast<S>().asDiagonal() * q.adjoint();
  return hermitian_part(inv);
}

}  // namespace gfusion
