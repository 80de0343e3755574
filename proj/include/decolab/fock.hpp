#pragma once

// Truncated Fock spaces for two bosonic modes a and b.
//
// Basis convention: mode a is the slow (leftmost) tensor factor, so the
// two-mode basis state |i_a, i_b> has index i_a * d_b + i_b.

#include <cmath>
#include <cstddef>
#include <string>

#include "decolab/numerics.hpp"

namespace decolab {

enum class Mode { A, B };

inline const char* to_string(Mode m) { return m == Mode::A ? "a" : "b"; }

struct ModeDims {
  std::size_t a = 1;
  std::size_t b = 1;

  ModeDims() = default;
  ModeDims(std::size_t da, std::size_t db) : a(da), b(db) {
    if (da < 1 || db < 1) {
      throw Error(ErrorKind::DimensionMismatch, "Fock truncation must be at least 1 per mode");
    }
  }

  std::size_t of(Mode m) const { return m == Mode::A ? a : b; }
  std::size_t total() const { return a * b; }
  friend bool operator==(const ModeDims&, const ModeDims&) = default;
};

/// Two-mode density matrix. Hermitian and unit trace are enforced on
/// construction; positivity is not (inverse decoherence may break it).
class BipartiteState {
 public:
  /// Tolerance is relative to max(1, |rho|_max) so that large-entry
  /// outputs of the inverse map are not rejected for rounding alone.
  static constexpr double kTol = 1e-10;

  BipartiteState(ComplexMatrix rho, ModeDims dims) : dims_(dims) {
    const auto n = static_cast<Eigen::Index>(dims.total());
    if (rho.rows() != n || rho.cols() != n) {
      throw Error(ErrorKind::DimensionMismatch,
                  "density matrix is " + std::to_string(rho.rows()) + "x" +
                      std::to_string(rho.cols()) + ", dims require " + std::to_string(n));
    }
    if (!all_finite(rho)) throw Error(ErrorKind::NonFinite, "density matrix has NaN/Inf entries");
    const double scale = std::max(1.0, max_abs(rho));
    rho_ = hermitian_part_checked(rho, "BipartiteState", kTol * scale);
    const Complex tr = rho_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTol * scale) {
      throw Error(ErrorKind::NormError, "trace is " + std::to_string(tr.real()) + " + " +
                                            std::to_string(tr.imag()) + "i");
    }
  }

  const ComplexMatrix& rho() const { return rho_; }
  const ModeDims& dims() const { return dims_; }

 private:
  ComplexMatrix rho_;
  ModeDims dims_;
};

/// |psi> = alpha|00> + beta|01> + gamma|10> + delta|11>
struct QubitPure {
  Complex alpha, beta, gamma, delta;

  QubitPure(Complex a, Complex b, Complex g, Complex d) : alpha(a), beta(b), gamma(g), delta(d) {
    const double norm2 = std::norm(a) + std::norm(b) + std::norm(g) + std::norm(d);
    if (!std::isfinite(norm2)) throw Error(ErrorKind::NonFinite, "QubitPure amplitude");
    if (std::abs(norm2 - 1.0) > 1e-12) {
      throw Error(ErrorKind::NormError, "QubitPure norm^2 = " + std::to_string(norm2));
    }
  }

  /// |alpha delta - beta gamma|; the initial concurrence is twice this.
  double det_magnitude() const { return std::abs(alpha * delta - beta * gamma); }

  ComplexVector to_vector() const {
    ComplexVector v(4);
    v << alpha, beta, gamma, delta;
    return v;
  }
};

/// a|n> = sqrt(n)|n-1>, truncated to n < d.
inline ComplexMatrix annihilation_op(std::size_t d) {
  if (d < 1) throw Error(ErrorKind::DimensionMismatch, "annihilation_op: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

inline ComplexMatrix creation_op(std::size_t d) { return annihilation_op(d).adjoint(); }

inline ComplexMatrix number_op(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = static_cast<double>(k);
  return m;
}

/// op (x) I for mode a, I (x) op for mode b.
inline ComplexMatrix embed_op(const ComplexMatrix& op, Mode mode, const ModeDims& dims) {
  const auto da = static_cast<Eigen::Index>(dims.a);
  const auto db = static_cast<Eigen::Index>(dims.b);
  const Eigen::Index want = mode == Mode::A ? da : db;
  if (op.rows() != want || op.cols() != want) {
    throw Error(ErrorKind::DimensionMismatch, std::string("embed_op: operator for mode ") +
                                                  to_string(mode) + " must be " +
                                                  std::to_string(want) + "x" + std::to_string(want));
  }
  return mode == Mode::A ? kron(op, identity(db)) : kron(identity(da), op);
}

/// Truncated coherent state, renormalized after truncation. Throws
/// TruncationTooLossy when the kept weight is below 99.9%.
inline ComplexVector coherent_state(Complex alpha, std::size_t d) {
  if (d < 1) throw Error(ErrorKind::DimensionMismatch, "coherent_state: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexVector c(n);
  const double prefactor = std::exp(-0.5 * std::norm(alpha));
  Complex term = prefactor;  // alpha^k / sqrt(k!) accumulated
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k > 0) term *= alpha / std::sqrt(static_cast<double>(k));
    c(k) = term;
  }
  const double kept = c.squaredNorm();
  if (kept < 0.999) {
    throw Error(ErrorKind::TruncationTooLossy,
                "coherent_state: truncation at d=" + std::to_string(d) + " keeps only " +
                    std::to_string(kept) + " of the norm");
  }
  return c / std::sqrt(kept);
}

inline BipartiteState pure_to_state(const ComplexVector& psi, const ModeDims& dims) {
  if (psi.size() != static_cast<Eigen::Index>(dims.total())) {
    throw Error(ErrorKind::DimensionMismatch, "pure_to_state: vector length " +
                                                  std::to_string(psi.size()) + " vs " +
                                                  std::to_string(dims.total()));
  }
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw Error(ErrorKind::NormError, "pure_to_state: |psi| = " + std::to_string(norm));
  }
  return BipartiteState(psi * psi.adjoint(), dims);
}

inline BipartiteState pure_to_state(const QubitPure& psi) {
  return pure_to_state(psi.to_vector(), ModeDims(2, 2));
}

inline BipartiteState product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
  require_square(rho_a, "product_state");
  require_square(rho_b, "product_state");
  return BipartiteState(kron(rho_a, rho_b), ModeDims(static_cast<std::size_t>(rho_a.rows()),
                                                     static_cast<std::size_t>(rho_b.rows())));
}

/// Reduced density matrix of the kept mode.
inline ComplexMatrix partial_trace(const BipartiteState& state, Mode keep) {
  const auto da = static_cast<Eigen::Index>(state.dims().a);
  const auto db = static_cast<Eigen::Index>(state.dims().b);
  const ComplexMatrix& rho = state.rho();
  if (keep == Mode::A) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k) out(i, j) += rho(k * db + i, k * db + j);
  return out;
}

/// Zero-pads a state into larger truncations; Fock labels are preserved.
inline BipartiteState embed_state(const BipartiteState& state, const ModeDims& bigger) {
  const ModeDims& d = state.dims();
  if (bigger.a < d.a || bigger.b < d.b) {
    throw Error(ErrorKind::DimensionMismatch, "embed_state: target truncation is smaller");
  }
  const auto n = static_cast<Eigen::Index>(bigger.total());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  const auto idx_old = [&](std::size_t ia, std::size_t ib) {
    return static_cast<Eigen::Index>(ia * d.b + ib);
  };
  const auto idx_new = [&](std::size_t ia, std::size_t ib) {
    return static_cast<Eigen::Index>(ia * bigger.b + ib);
  };
  for (std::size_t ia = 0; ia < d.a; ++ia)
    for (std::size_t ib = 0; ib < d.b; ++ib)
      for (std::size_t ja = 0; ja < d.a; ++ja)
        for (std::size_t jb = 0; jb < d.b; ++jb)
          out(idx_new(ia, ib), idx_new(ja, jb)) = state.rho()(idx_old(ia, ib), idx_old(ja, jb));
  return BipartiteState(std::move(out), bigger);
}

/// Largest Fock population outside the top-left `smaller` truncation; zero when
/// the state is supported there.
inline double weight_outside(const BipartiteState& state, const ModeDims& smaller) {
  double w = 0.0;
  const ModeDims& d = state.dims();
  for (std::size_t ia = 0; ia < d.a; ++ia)
    for (std::size_t ib = 0; ib < d.b; ++ib)
      if (ia >= smaller.a || ib >= smaller.b) {
        const auto k = static_cast<Eigen::Index>(ia * d.b + ib);
        w += std::abs(state.rho()(k, k));
      }
  return w;
}

/// Inverse of embed_state: takes the top-left block of the given truncation.
inline BipartiteState restrict_state(const BipartiteState& state, const ModeDims& smaller) {
  const ModeDims& d = state.dims();
  if (smaller.a > d.a || smaller.b > d.b) {
    throw Error(ErrorKind::DimensionMismatch, "restrict_state: target truncation is larger");
  }
  const auto n = static_cast<Eigen::Index>(smaller.total());
  ComplexMatrix out(n, n);
  for (std::size_t ia = 0; ia < smaller.a; ++ia)
    for (std::size_t ib = 0; ib < smaller.b; ++ib)
      for (std::size_t ja = 0; ja < smaller.a; ++ja)
        for (std::size_t jb = 0; jb < smaller.b; ++jb)
          out(static_cast<Eigen::Index>(ia * smaller.b + ib),
              static_cast<Eigen::Index>(ja * smaller.b + jb)) =
              state.rho()(static_cast<Eigen::Index>(ia * d.b + ib),
                          static_cast<Eigen::Index>(ja * d.b + jb));
  return BipartiteState(std::move(out), smaller);
}

}  // namespace decolab
