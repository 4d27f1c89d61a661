#pragma once

// Log-Euclidean geometry on symmetric / Hermitian positive-definite matrices.
//
// All routines are templated on the scalar: `double` for graph Laplacians and
// `std::complex<double>` for channel matrices. Every spectral computation goes
// through Eigen::SelfAdjointEigenSolver, so spectra are always real.

#include <cmath>
#include <complex>
#include <span>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>

namespace relaygeo {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

inline constexpr double kHermitianTolerance = 1e-10;

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << ": matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw std::invalid_argument(msg.str());
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (skew > kHermitianTolerance * scale) {
    std::ostringstream msg;
    msg << what << ": matrix is not Hermitian (max |A - A^H| = " << skew << ")";
    throw std::invalid_argument(msg.str());
  }
}

// U diag(f(lambda)) U^H for a Hermitian matrix.
template <typename Scalar, typename Fn>
DenseMatrix<Scalar> spectral_map(const Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>>& eig, Fn fn) {
  const auto& u = eig.eigenvectors();
  const Eigen::VectorXd mapped = eig.eigenvalues().unaryExpr(fn);
  DenseMatrix<Scalar> out = u * mapped.template cast<Scalar>().asDiagonal() * u.adjoint();
  return (out + out.adjoint()) * Scalar(0.5);
}

}  // namespace detail

/// Hermitian positive-definite matrix. Construction checks Hermitian symmetry
/// (relative tolerance 1e-10) and positive definiteness (Cholesky), then stores
/// the exactly symmetrised matrix.
template <typename Scalar>
class SpdMatrix {
 public:
  using MatrixType = DenseMatrix<Scalar>;

  explicit SpdMatrix(MatrixType m) : m_(std::move(m)) {
    detail::require_hermitian(m_, "SpdMatrix");
    m_ = (m_ + m_.adjoint()).eval() * Scalar(0.5);
    Eigen::LLT<MatrixType> llt(m_);
    if (llt.info() != Eigen::Success) {
      Eigen::SelfAdjointEigenSolver<MatrixType> eig(m_, Eigen::EigenvaluesOnly);
      std::ostringstream msg;
      msg << "SpdMatrix: matrix is not positive definite (smallest eigenvalue "
          << eig.eigenvalues().minCoeff() << ")";
      throw std::invalid_argument(msg.str());
    }
  }

  const MatrixType& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  MatrixType m_;
};

/// Principal logarithm of an SpdMatrix: Hermitian, not necessarily definite.
template <typename Scalar>
class LogMatrix {
 public:
  using MatrixType = DenseMatrix<Scalar>;

  explicit LogMatrix(MatrixType m) : m_(std::move(m)) {
    detail::require_hermitian(m_, "LogMatrix");
    m_ = (m_ + m_.adjoint()).eval() * Scalar(0.5);
  }

  const MatrixType& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  MatrixType m_;
};

/// log(S) = U diag(ln lambda) U^H. Throws if the eigensolver reports a
/// non-positive eigenvalue.
template <typename Scalar>
LogMatrix<Scalar> matrix_log(const SpdMatrix<Scalar>& s) {
  using MatrixType = DenseMatrix<Scalar>;
  Eigen::SelfAdjointEigenSolver<MatrixType> eig(s.matrix());
  if (eig.info() != Eigen::Success) throw std::runtime_error("matrix_log: eigensolver failed");
  const double smallest = eig.eigenvalues().minCoeff();
  if (!(smallest > 0.0)) {
    std::ostringstream msg;
    msg << "matrix_log: non-positive eigenvalue " << smallest;
    throw std::domain_error(msg.str());
  }
  return LogMatrix<Scalar>(detail::spectral_map<Scalar>(eig, [](double x) { return std::log(x); }));
}

/// Raw-matrix overload: validates into an SpdMatrix first.
template <typename Derived>
auto matrix_log(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  return matrix_log(SpdMatrix<Scalar>(m.eval()));
}

template <typename Scalar>
SpdMatrix<Scalar> matrix_exp(const LogMatrix<Scalar>& l) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> eig(l.matrix());
  return SpdMatrix<Scalar>(detail::spectral_map<Scalar>(eig, [](double x) { return std::exp(x); }));
}

/// Principal square root, used to colour white Gaussian vectors.
template <typename Scalar>
DenseMatrix<Scalar> matrix_sqrt(const SpdMatrix<Scalar>& s) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> eig(s.matrix());
  return detail::spectral_map<Scalar>(eig, [](double x) { return std::sqrt(x); });
}

template <typename Scalar>
Eigen::VectorXd eigenvalues(const SpdMatrix<Scalar>& s) {
  return Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>>(s.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
}

/// Squared Log-Euclidean distance ||log A - log B||_F^2 on precomputed logs.
template <typename Scalar>
double lem_distance(const LogMatrix<Scalar>& a, const LogMatrix<Scalar>& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "lem_distance: dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw std::invalid_argument(msg.str());
  }
  return (a.matrix() - b.matrix()).squaredNorm();
}

/// Squared Log-Euclidean distance ||log A - log B||_F^2. This is the square
/// of the metric, so it is symmetric and zero on the diagonal but only its
/// square root obeys the triangle inequality.
template <typename Scalar>
double lem_distance(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "lem_distance: dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw std::invalid_argument(msg.str());
  }
  return lem_distance(matrix_log(a), matrix_log(b));
}

/// Isometric half-vectorisation: diagonal entries as they are, off-diagonal
/// upper-triangle entries times sqrt(2) (real and imaginary parts separately
/// in the complex case). Output length n(n+1)/2 for real, n^2 for complex.
template <typename Scalar>
Eigen::VectorXd log_vectorize(const LogMatrix<Scalar>& l) {
  const Eigen::Index n = l.dim();
  const auto& m = l.matrix();
  constexpr bool complex = detail::is_complex<Scalar>::value;
  const Eigen::Index off = n * (n - 1) / 2;
  Eigen::VectorXd out(n + (complex ? 2 * off : off));
  const double root2 = std::sqrt(2.0);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) out[k++] = std::real(m(i, i));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if constexpr (complex) {
        out[k++] = root2 * m(i, j).real();
        out[k++] = root2 * m(i, j).imag();
      } else {
        out[k++] = root2 * m(i, j);
      }
    }
  }
  return out;
}

/// exp of the arithmetic mean of the logs.
template <typename Scalar>
SpdMatrix<Scalar> log_euclidean_mean(std::span<const SpdMatrix<Scalar>> matrices) {
  if (matrices.empty()) throw std::invalid_argument("log_euclidean_mean: empty input");
  const Eigen::Index n = matrices.front().dim();
  DenseMatrix<Scalar> sum = DenseMatrix<Scalar>::Zero(n, n);
  for (const auto& s : matrices) {
    if (s.dim() != n) throw std::invalid_argument("log_euclidean_mean: dimension mismatch");
    sum += matrix_log(s).matrix();
  }
  sum /= static_cast<double>(matrices.size());
  return matrix_exp(LogMatrix<Scalar>(std::move(sum)));
}

}  // namespace relaygeo
