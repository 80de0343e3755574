#pragma once

// Spectrum-based entanglement quantifiers and the closed-form two-qubit
// concurrences under vacuum damping.

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "decolab/channels.hpp"
#include "decolab/fock.hpp"
#include "decolab/numerics.hpp"

namespace decolab {

/// Transposes the indices of `mode` only.
inline ComplexMatrix partial_transpose(const BipartiteState& state, Mode mode) {
  const auto da = static_cast<Eigen::Index>(state.dims().a);
  const auto db = static_cast<Eigen::Index>(state.dims().b);
  const ComplexMatrix& rho = state.rho();
  ComplexMatrix out(rho.rows(), rho.cols());
  for (Eigen::Index ia = 0; ia < da; ++ia)
    for (Eigen::Index ib = 0; ib < db; ++ib)
      for (Eigen::Index ja = 0; ja < da; ++ja)
        for (Eigen::Index jb = 0; jb < db; ++jb) {
          out(ia * db + ib, ja * db + jb) = mode == Mode::B ? rho(ia * db + jb, ja * db + ib)
                                                            : rho(ja * db + ib, ia * db + jb);
        }
  return out;
}

struct NegativityResult {
  double log_negativity = 0.0;
  double min_pt_eig = 0.0;
};

/// E_N = log2 ||rho^{T_b}||_1, clamped at zero. Rejects states that are
/// not positive within `eps`.
inline NegativityResult log_negativity(const BipartiteState& state,
                                       double eps = kDefaultPhysicalEps) {
  const Physicality phys = is_physical(state, eps);
  if (!phys.physical) {
    throw Error(ErrorKind::Unphysical,
                "log_negativity: minimum eigenvalue " + std::to_string(phys.min_eig));
  }
  const auto ev = herm_eigvals(partial_transpose(state, Mode::B));
  double norm1 = 0.0;
  for (double v : ev) norm1 += std::abs(v);
  return {std::max(0.0, std::log2(norm1)), ev.front()};
}

inline ComplexMatrix sigma_y() {
  ComplexMatrix s(2, 2);
  s << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return s;
}

struct ConcurrenceResult {
  double raw = 0.0;            // sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)
  double value = 0.0;          // max(0, raw)
  std::array<double, 4> lambdas{};  // descending
};

namespace detail {
inline void require_two_qubit(const BipartiteState& state) {
  if (!(state.dims() == ModeDims(2, 2))) {
    throw Error(ErrorKind::NotTwoQubit, "concurrence needs a 2x2 state, got " +
                                            std::to_string(state.dims().a) + "x" +
                                            std::to_string(state.dims().b));
  }
}
}  // namespace detail

/// sqrt(rho) (sy (x) sy) rho^* (sy (x) sy) sqrt(rho)
inline ComplexMatrix wootters_matrix(const BipartiteState& state) {
  detail::require_two_qubit(state);
  const ComplexMatrix yy = kron(sigma_y(), sigma_y());
  const ComplexMatrix root = sqrtm_psd(state.rho());
  return root * yy * state.rho().conjugate() * yy * root;
}

/// Eigenvalues of rho below this fraction of the largest are treated as zero.
/// At rank-deficient states the concurrence moves like sqrt(perturbation), so
/// rounding-level eigenvalues (~1e-17) would otherwise cost ~1e-9 in C.
inline constexpr double kConcurrenceRankTol = 1e-15;

/// Wootters concurrence. The square roots of the lambdas are obtained as the
/// singular values of tau = W^T (sy (x) sy) W, where rho = W W^dagger with
/// W = V diag(sqrt(p)); this avoids square-rooting a non-Hermitian spectrum.
inline ConcurrenceResult wootters_concurrence(const BipartiteState& state) {
  detail::require_two_qubit(state);
  const HermitianEigen eig = herm_eig(state.rho());
  if (eig.values.minCoeff() < -kPsdTol) {
    throw Error(ErrorKind::NegativeSpectrum,
                "concurrence: eigenvalue " + std::to_string(eig.values.minCoeff()));
  }
  const double cut = kConcurrenceRankTol * eig.values.maxCoeff();
  const RealVector p = (eig.values.array() > cut).select(eig.values, 0.0);
  const ComplexMatrix w = eig.vectors * p.cwiseSqrt().cast<Complex>().asDiagonal();
  const ComplexMatrix tau = w.transpose() * kron(sigma_y(), sigma_y()) * w;
  const RealVector s = singular_values(tau);  // descending
  ConcurrenceResult out;
  for (int k = 0; k < 4; ++k) out.lambdas[static_cast<std::size_t>(k)] = s(k) * s(k);
  out.raw = s(0) - s(1) - s(2) - s(3);
  out.value = std::max(0.0, out.raw);
  return out;
}

namespace detail {
inline void check_eta(double eta, const char* where) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorKind::EtaOutOfRange,
                std::string(where) + ": eta = " + std::to_string(eta) + " not in [0, 1]");
  }
}
}  // namespace detail

// The closed forms return the raw value, which goes negative past the
// disentanglement point; clamp with std::max(0.0, .) for the concurrence.

/// Both qubits damped with the same eta: 2 eta (|ad - bc| - (1 - eta) |d|^2).
inline double c2_closed(const QubitPure& psi, double eta) {
  detail::check_eta(eta, "c2_closed");
  return 2.0 * eta * (psi.det_magnitude() - (1.0 - eta) * std::norm(psi.delta));
}

/// One qubit damped: 2 sqrt(eta) |ad - bc|.
inline double c1_closed(const QubitPure& psi, double eta) {
  detail::check_eta(eta, "c1_closed");
  return 2.0 * std::sqrt(eta) * psi.det_magnitude();
}

inline double c2_unbalanced(const QubitPure& psi, double eta_a, double eta_b) {
  detail::check_eta(eta_a, "c2_unbalanced");
  detail::check_eta(eta_b, "c2_unbalanced");
  return 2.0 * std::sqrt(eta_a * eta_b) *
         (psi.det_magnitude() - std::sqrt((1.0 - eta_a) * (1.0 - eta_b)) * std::norm(psi.delta));
}

/// Coupling below which symmetric two-sided damping leaves the state
/// separable, or nullopt when entanglement survives for every eta > 0.
inline std::optional<double> sde_threshold(const QubitPure& psi) {
  const double x = psi.det_magnitude();
  if (x <= 1e-12) throw Error(ErrorKind::SeparableInput, "sde_threshold: |ad - bc| = 0");
  const double d2 = std::norm(psi.delta);
  if (x >= d2 * (1.0 - 1e-12)) return std::nullopt;
  return 1.0 - x / d2;
}

}  // namespace decolab
