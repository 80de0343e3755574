#pragma once

// Dense complex linear algebra shared by the rest of the library.
// All routines are pure functions on small matrices (dimension a few
// hundred at most), so everything is dense.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "decolab/errors.hpp"

namespace decolab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

inline bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const Complex z = a.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

inline Complex make_complex(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw Error(ErrorKind::NonFinite, "complex component is NaN or infinite");
  }
  return {re, im};
}

inline double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// max |A - A^dagger|
inline double hermiticity_defect(const ComplexMatrix& a) {
  return max_abs(a - a.adjoint());
}

inline void require_square(const ComplexMatrix& a, const char* where) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorKind::NotSquare, std::string(where) + ": matrix is " +
                                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

/// Checks Hermiticity within `tol` and returns the symmetrized (A + A^dagger)/2.
inline ComplexMatrix hermitian_part_checked(const ComplexMatrix& a, const char* where,
                                            double tol = kHermiticityTol) {
  require_square(a, where);
  const double defect = hermiticity_defect(a);
  if (!(defect <= tol)) {
    throw Error(ErrorKind::NotHermitian,
                std::string(where) + ": |A - A^dagger|_max = " + std::to_string(defect));
  }
  return (a + a.adjoint()) * 0.5;
}

inline ComplexMatrix identity(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

/// Kronecker product; block (i, j) of the result is A(i, j) * B.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns
};

inline HermitianEigen herm_eig(const ComplexMatrix& a, double tol = kHermiticityTol) {
  const ComplexMatrix h = hermitian_part_checked(a, "herm_eig", tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Real eigenvalues of a Hermitian matrix, ascending.
inline std::vector<double> herm_eigvals(const ComplexMatrix& a, double tol = kHermiticityTol) {
  const ComplexMatrix h = hermitian_part_checked(a, "herm_eigvals", tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline double min_herm_eigval(const ComplexMatrix& a, double tol = kHermiticityTol) {
  return herm_eigvals(a, tol).front();
}

inline Complex det(const ComplexMatrix& a) {
  require_square(a, "det");
  return Eigen::PartialPivLU<ComplexMatrix>(a).determinant();
}

inline RealVector singular_values(const ComplexMatrix& a) {
  return Eigen::BDCSVD<ComplexMatrix>(a).singularValues();
}

/// Sum of singular values.
inline double trace_norm(const ComplexMatrix& a) {
  require_square(a, "trace_norm");
  return singular_values(a).sum();
}

/// e^A, Pade approximant with scaling and squaring.
inline ComplexMatrix matrix_exp(const ComplexMatrix& a) {
  require_square(a, "matrix_exp");
  return a.exp();
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-kPsdTol, 0) are clamped to zero; anything more negative is rejected.
inline ComplexMatrix sqrtm_psd(const ComplexMatrix& a, double psd_tol = kPsdTol) {
  const HermitianEigen eig = herm_eig(a);
  if (eig.values.minCoeff() < -psd_tol) {
    throw Error(ErrorKind::NegativeSpectrum,
                "sqrtm_psd: eigenvalue " + std::to_string(eig.values.minCoeff()));
  }
  const RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

}  // namespace decolab
