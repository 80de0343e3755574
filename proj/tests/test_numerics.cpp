#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "decolab/numerics.hpp"
#include "support.hpp"

namespace {

using namespace decolab;
using decolab::fixtures::Rng;

ComplexMatrix diag(std::initializer_list<Complex> v) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(v.size()),
                                        static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (Complex z : v) m(k, k) = z, ++k;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix s(2, 2);
  s << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  return s;
}

// Partially transposed Bell state, written out by hand.
ComplexMatrix bell_pt() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 0.5;
  m(1, 2) = m(2, 1) = 0.5;
  return m;
}

TEST(Kron, IdentityAndDiagonal) {
  EXPECT_LT(max_abs(kron(identity(2), identity(2)) - identity(4)), 1e-15);
  EXPECT_LT(max_abs(kron(diag({1, 2}), identity(2)) - diag({1, 1, 2, 2})), 1e-15);
}

TEST(Kron, PauliYSquaredIsSignedAntidiagonal) {
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 3) = -1.0;
  expected(1, 2) = 1.0;
  expected(2, 1) = 1.0;
  expected(3, 0) = -1.0;
  EXPECT_LT(max_abs(kron(pauli_y(), pauli_y()) - expected), 1e-15);
}

TEST(Kron, BlockStructure) {
  Rng rng(1);
  const ComplexMatrix a = fixtures::random_matrix(2, 3, rng);
  const ComplexMatrix b = fixtures::random_matrix(3, 2, rng);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_LT(max_abs(k.block(i * 3, j * 2, 3, 2) - a(i, j) * b), 1e-15);
}

TEST(HermEigvals, Examples) {
  const auto d = herm_eigvals(diag({3, 1, 2}));
  ASSERT_EQ(d.size(), 3u);
  EXPECT_NEAR(d[0], 1, 1e-14);
  EXPECT_NEAR(d[1], 2, 1e-14);
  EXPECT_NEAR(d[2], 3, 1e-14);

  const auto y = herm_eigvals(pauli_y());
  EXPECT_NEAR(y[0], -1, 1e-14);
  EXPECT_NEAR(y[1], 1, 1e-14);

  const auto b = herm_eigvals(bell_pt());
  EXPECT_NEAR(b[0], -0.5, 1e-14);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(b[static_cast<std::size_t>(k)], 0.5, 1e-14);
}

TEST(HermEigvals, Errors) {
  ComplexMatrix rect(2, 3);
  rect.setZero();
  try {
    herm_eigvals(rect);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSquare);
  }
  ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
  skew(0, 1) = 1e-6;
  try {
    herm_eigvals(skew);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
  }
  // within tolerance: symmetrized silently
  skew(0, 1) = 1e-11;
  EXPECT_NO_THROW(herm_eigvals(skew));
}

TEST(HermEigvals, GramMatricesArePsd) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix x = fixtures::random_matrix(6, 4, rng);
    EXPECT_GE(herm_eigvals(x * x.adjoint()).front(), -1e-12);
  }
}

TEST(Det, Examples) {
  EXPECT_LT(std::abs(det(identity(3)) - Complex(1.0)), 1e-15);
  EXPECT_LT(std::abs(det(diag({2, 3})) - Complex(6.0)), 1e-14);
  EXPECT_THROW(det(ComplexMatrix::Zero(2, 3)), Error);
}

TEST(Det, HermitianMatchesEigenvalueProduct) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix h = fixtures::random_hermitian(3, rng);
    double prod = 1.0;
    for (double v : herm_eigvals(h)) prod *= v;
    const Complex d = det(h);
    EXPECT_NEAR(d.real(), prod, 1e-12 * std::max(1.0, std::abs(prod)));
    EXPECT_NEAR(d.imag(), 0.0, 1e-12);
  }
}

TEST(Det, Multiplicative) {
  Rng rng(4);
  for (Eigen::Index d = 1; d <= 12; ++d) {
    const ComplexMatrix a = fixtures::random_matrix(d, d, rng);
    const ComplexMatrix b = fixtures::random_matrix(d, d, rng);
    const Complex lhs = det(a * b);
    const Complex rhs = det(a) * det(b);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::abs(rhs)) << "d=" << d;
  }
}

TEST(TraceNorm, Examples) {
  EXPECT_NEAR(trace_norm(identity(4)), 4.0, 1e-14);
  EXPECT_NEAR(trace_norm(bell_pt()), 2.0, 1e-14);
}

TEST(TraceNorm, HermitianEqualsAbsEigenvalueSum) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix h = fixtures::random_hermitian(5, rng);
    double s = 0.0;
    for (double v : herm_eigvals(h)) s += std::abs(v);
    EXPECT_NEAR(trace_norm(h), s, 1e-12 * s);
  }
}

TEST(TraceNorm, BoundsTrace) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix a = fixtures::random_matrix(4, 4, rng);
    EXPECT_GE(trace_norm(a) + 1e-12, std::abs(a.trace()));
  }
}

TEST(MatrixExp, Examples) {
  EXPECT_LT(max_abs(matrix_exp(ComplexMatrix::Zero(3, 3)) - identity(3)), 1e-15);
  EXPECT_LT(max_abs(matrix_exp(diag({std::log(2.0), std::log(3.0)})) - diag({2, 3})), 1e-14);

  const double theta = 0.3;
  ComplexMatrix rot(2, 2);
  rot << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  EXPECT_LT(max_abs(matrix_exp(Complex(0, theta) * pauli_y()) - rot), 1e-14);
}

TEST(MatrixExp, InverseProperty) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    ComplexMatrix a = fixtures::random_matrix(5, 5, rng);
    a *= 5.0 / a.norm();  // Frobenius norm 5 bounds the operator norm
    EXPECT_LT(max_abs(matrix_exp(a) * matrix_exp(-a) - identity(5)), 1e-10);
  }
}

TEST(SqrtmPsd, Examples) {
  EXPECT_LT(max_abs(sqrtm_psd(identity(3)) - identity(3)), 1e-14);
  EXPECT_LT(max_abs(sqrtm_psd(diag({4, 9})) - diag({2, 3})), 1e-14);
}

TEST(SqrtmPsd, Reconstructs) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix x = fixtures::random_matrix(5, 3, rng);
    const ComplexMatrix a = x * x.adjoint();  // rank deficient
    const ComplexMatrix b = sqrtm_psd(a);
    EXPECT_LT(hermiticity_defect(b), 1e-12);
    EXPECT_LT(max_abs(b * b - a), 1e-10);
  }
}

TEST(SqrtmPsd, RejectsNegativeSpectrum) {
  try {
    sqrtm_psd(diag({1.0, -1e-3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeSpectrum);
  }
  // clamped
  const ComplexMatrix r = sqrtm_psd(diag({1.0, -1e-12}));
  EXPECT_NEAR(r(1, 1).real(), 0.0, 1e-15);
}

TEST(Complex, RejectsNonFinite) {
  EXPECT_THROW(make_complex(std::nan(""), 0.0), Error);
  EXPECT_NO_THROW(make_complex(1.0, -2.0));
}

}  // namespace
