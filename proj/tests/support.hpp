#pragma once

// Random generators and small reference states shared by the test suites.

#include <cmath>
#include <random>

#include "decolab/fock.hpp"
#include "decolab/numerics.hpp"

namespace decolab::fixtures {

using Rng = std::mt19937_64;

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const double re = n(rng);
    const double im = n(rng);
    m.data()[k] = Complex(re, im);
  }
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index d, Rng& rng) {
  const ComplexMatrix x = random_matrix(d, d, rng);
  return (x + x.adjoint()) * 0.5;
}

/// Full-rank (generically) mixed state from a Ginibre matrix: X X^dagger / tr.
inline ComplexMatrix random_density(Eigen::Index d, Rng& rng, Eigen::Index rank = -1) {
  const ComplexMatrix x = random_matrix(d, rank < 0 ? d : rank, rng);
  const ComplexMatrix g = x * x.adjoint();
  return g / g.trace().real();
}

inline BipartiteState random_state(const ModeDims& dims, Rng& rng, Eigen::Index rank = -1) {
  return BipartiteState(random_density(static_cast<Eigen::Index>(dims.total()), rng, rank), dims);
}

inline ComplexVector random_unit_vector(Eigen::Index d, Rng& rng) {
  ComplexVector v = random_matrix(d, 1, rng);
  return v / v.norm();
}

inline QubitPure random_qubit_pure(Rng& rng) {
  const ComplexVector v = random_unit_vector(4, rng);
  return QubitPure(v(0), v(1), v(2), v(3));
}

inline BipartiteState bell_state() {
  const double s = 1.0 / std::sqrt(2.0);
  return pure_to_state(QubitPure(s, 0.0, 0.0, s));
}

/// (|00> + 2|11>)/sqrt(5)
inline QubitPure sde_example() {
  const double s = 1.0 / std::sqrt(5.0);
  return QubitPure(s, 0.0, 0.0, 2.0 * s);
}

/// Fock-basis ket |i_a, i_b>
inline ComplexVector ket(std::size_t ia, std::size_t ib, const ModeDims& dims) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dims.total()));
  v(static_cast<Eigen::Index>(ia * dims.b + ib)) = 1.0;
  return v;
}

}  // namespace decolab::fixtures
