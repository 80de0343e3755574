#pragma once

// Passive (beam-splitter) decoherence of one bosonic mode: the Kraus form
// of the vacuum-bath channel, its unitary dilation, the coherent-bath
// variant and the formal (non-positive) inverse.
//
// The coupling eta runs from 1 (untouched) to 0 (fully damped). Kraus
// sums are cut at n = d - 1 of the damped mode: a^n vanishes on the
// truncated space beyond that, so the sums are exact there.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "decolab/fock.hpp"
#include "decolab/numerics.hpp"

namespace decolab {

struct DampingChannel {
  double eta = 1.0;
  double phi = 0.0;
  Mode mode = Mode::A;
  /// Kraus cutoff; defaults to d - 1 of the target mode.
  std::optional<std::size_t> n_max;
};

struct KrausSet {
  std::vector<ComplexMatrix> ops;

  /// max |sum K^dagger K - I|
  double completeness_defect() const {
    if (ops.empty()) return 0.0;
    ComplexMatrix sum = ComplexMatrix::Zero(ops.front().cols(), ops.front().cols());
    for (const auto& k : ops) sum += k.adjoint() * k;
    return max_abs(sum - identity(sum.rows()));
  }
};

struct Physicality {
  bool physical = true;
  double min_eig = 0.0;
};

inline constexpr double kDefaultPhysicalEps = 1e-10;

namespace detail {

inline void check_eta_closed(double eta, const char* where) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorKind::EtaOutOfRange,
                std::string(where) + ": eta = " + std::to_string(eta) + " not in [0, 1]");
  }
}

inline void check_eta_positive(double eta, const char* where) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw Error(ErrorKind::EtaOutOfRange,
                std::string(where) + ": eta = " + std::to_string(eta) + " not in (0, 1]");
  }
}

inline double binomial(std::size_t m, std::size_t n) {
  double b = 1.0;
  for (std::size_t k = 1; k <= n; ++k) b *= static_cast<double>(m - n + k) / static_cast<double>(k);
  return b;
}

/// eta^(p/2) with the convention 0^0 = 1.
inline double sqrt_pow(double eta, std::size_t p) {
  return p == 0 ? 1.0 : std::pow(eta, 0.5 * static_cast<double>(p));
}

inline ComplexMatrix sandwich_sum(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& ops,
                                  const std::vector<double>& signs) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (std::size_t n = 0; n < ops.size(); ++n) {
    out.noalias() += signs[n] * (ops[n] * rho * ops[n].adjoint());
  }
  return out;
}

inline void check_mode_dim(const BipartiteState& state, Mode mode, std::size_t d,
                           const char* where) {
  if (state.dims().of(mode) != d) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(where) + ": operator dimension " + std::to_string(d) +
                    " does not match mode " + to_string(mode) + " truncation " +
                    std::to_string(state.dims().of(mode)));
  }
}

}  // namespace detail

/// K_n = sqrt(eta)^{a^dagger a} (sqrt(1-eta) e^{i phi} a)^n / sqrt(n!), n = 0..d-1.
/// <m-n| K_n |m> = sqrt(C(m,n)) eta^{(m-n)/2} (1-eta)^{n/2} e^{i n phi}.
inline KrausSet damping_kraus(double eta, double phi, std::size_t d,
                              std::optional<std::size_t> n_max = std::nullopt) {
  detail::check_eta_closed(eta, "damping_kraus");
  if (d < 1) throw Error(ErrorKind::DimensionMismatch, "damping_kraus: d must be >= 1");
  const std::size_t count = std::min(d, n_max.value_or(d - 1) + 1);
  const auto dim = static_cast<Eigen::Index>(d);
  KrausSet set;
  set.ops.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    ComplexMatrix k = ComplexMatrix::Zero(dim, dim);
    const Complex phase = std::polar(1.0, static_cast<double>(n) * phi);
    for (std::size_t m = n; m < d; ++m) {
      const double mag = std::sqrt(detail::binomial(m, n)) * detail::sqrt_pow(eta, m - n) *
                         detail::sqrt_pow(1.0 - eta, n);
      k(static_cast<Eigen::Index>(m - n), static_cast<Eigen::Index>(m)) = mag * phase;
    }
    set.ops.push_back(std::move(k));
  }
  return set;
}

/// rho -> sum_n K_n rho K_n^dagger with every K_n acting on `mode`.
inline BipartiteState apply_kraus(const BipartiteState& state, const KrausSet& kraus, Mode mode) {
  std::vector<ComplexMatrix> embedded;
  embedded.reserve(kraus.ops.size());
  for (const auto& k : kraus.ops) {
    detail::check_mode_dim(state, mode, static_cast<std::size_t>(k.rows()), "apply_kraus");
    embedded.push_back(embed_op(k, mode, state.dims()));
  }
  return BipartiteState(
      detail::sandwich_sum(state.rho(), embedded, std::vector<double>(embedded.size(), 1.0)),
      state.dims());
}

inline BipartiteState apply_channel(const BipartiteState& state, const DampingChannel& ch) {
  const std::size_t d = state.dims().of(ch.mode);
  return apply_kraus(state, damping_kraus(ch.eta, ch.phi, d, ch.n_max), ch.mode);
}

/// Independent damping of both modes (eta_a on a, eta_b on b).
inline BipartiteState apply_two_sided(const BipartiteState& state, double eta_a, double eta_b,
                                      double phi = 0.0) {
  return apply_channel(apply_channel(state, {eta_a, phi, Mode::A, std::nullopt}),
                       {eta_b, phi, Mode::B, std::nullopt});
}

/// Beam-splitter coupling of a system mode (slow factor) to an environment
/// mode r (fast factor): U = exp(theta (e^{i phi} a^dagger r - e^{-i phi} a r^dagger)),
/// cos(theta) = sqrt(eta). In the Heisenberg picture this gives
/// U^dagger a U = sqrt(eta) a + sqrt(1-eta) e^{i phi} r, exactly on every
/// total-photon-number sector that fits in both truncations.
inline ComplexMatrix beam_splitter_unitary(double eta, double phi, std::size_t d_sys,
                                           std::size_t d_env) {
  detail::check_eta_positive(eta, "beam_splitter_unitary");
  const double theta = std::acos(std::sqrt(eta));
  const ComplexMatrix a = annihilation_op(d_sys);
  const ComplexMatrix r = annihilation_op(d_env);
  const Complex phase = std::polar(1.0, phi);
  const ComplexMatrix gen =
      theta * (phase * kron(a.adjoint(), r) - std::conj(phase) * kron(a, r.adjoint()));
  return matrix_exp(gen);
}

/// Effective Kraus operators E_k = <k|_r U |env>_r of a dilation with a pure
/// environment state.
inline KrausSet environment_kraus(const ComplexMatrix& u, const ComplexVector& env,
                                  std::size_t d_sys, std::size_t d_env) {
  const auto ds = static_cast<Eigen::Index>(d_sys);
  const auto de = static_cast<Eigen::Index>(d_env);
  if (u.rows() != ds * de || u.cols() != ds * de || env.size() != de) {
    throw Error(ErrorKind::DimensionMismatch, "environment_kraus: inconsistent dimensions");
  }
  KrausSet set;
  for (Eigen::Index k = 0; k < de; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(ds, ds);
    for (Eigen::Index i = 0; i < ds; ++i)
      for (Eigen::Index j = 0; j < ds; ++j)
        for (Eigen::Index l = 0; l < de; ++l) e(i, j) += u(i * de + k, j * de + l) * env(l);
    set.ops.push_back(std::move(e));
  }
  return set;
}

/// Tr_env[U (rho (x) |env><env|) U^dagger] for a single-mode rho, by explicit
/// construction of the joint state.
inline ComplexMatrix dilate_and_trace(const ComplexMatrix& rho_sys, const ComplexMatrix& u,
                                      const ComplexVector& env) {
  require_square(rho_sys, "dilate_and_trace");
  const Eigen::Index ds = rho_sys.rows();
  const Eigen::Index de = env.size();
  if (u.rows() != ds * de) {
    throw Error(ErrorKind::DimensionMismatch, "dilate_and_trace: inconsistent dimensions");
  }
  const ComplexMatrix joint = u * kron(rho_sys, env * env.adjoint()) * u.adjoint();
  ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
  for (Eigen::Index i = 0; i < ds; ++i)
    for (Eigen::Index j = 0; j < ds; ++j)
      for (Eigen::Index k = 0; k < de; ++k) out(i, j) += joint(i * de + k, j * de + k);
  return out;
}

inline ComplexVector vacuum(std::size_t d) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
  v(0) = 1.0;
  return v;
}

/// D(alpha) = exp(alpha a^dagger - alpha^* a) on a d-level truncation.
inline ComplexMatrix displacement_op(Complex alpha, std::size_t d) {
  const ComplexMatrix a = annihilation_op(d);
  return matrix_exp(alpha * a.adjoint() - std::conj(alpha) * a);
}

/// Required headroom of the environment truncation over the coherent amplitude.
inline constexpr double kCoherentHeadroom = 1.5;

/// Damping of `mode` through a beam splitter whose environment port holds the
/// coherent state |alpha>.
inline BipartiteState coherent_bath_evolve(const BipartiteState& state, double eta, double phi,
                                           Complex alpha, std::size_t d_env, Mode mode) {
  detail::check_eta_positive(eta, "coherent_bath_evolve");
  (void)coherent_state(alpha * kCoherentHeadroom, d_env);  // throws when too lossy
  const ComplexVector env = coherent_state(alpha, d_env);
  const std::size_t d_sys = state.dims().of(mode);
  const ComplexMatrix u = beam_splitter_unitary(eta, phi, d_sys, d_env);
  return apply_kraus(state, environment_kraus(u, env, d_sys, d_env), mode);
}

/// L_n = sqrt(eta)^{-a^dagger a} (a sqrt(1-eta) e^{i phi} / sqrt(eta))^n / sqrt(n!).
inline std::vector<ComplexMatrix> inverse_damping_ops(double eta, double phi, std::size_t d) {
  if (!(eta > 0.0)) {
    throw Error(ErrorKind::EtaZero, "inverse_damping: eta = " + std::to_string(eta) +
                                        " (the inverse is singular at eta = 0)");
  }
  detail::check_eta_closed(eta, "inverse_damping");
  const auto dim = static_cast<Eigen::Index>(d);
  std::vector<ComplexMatrix> ops;
  for (std::size_t n = 0; n < d; ++n) {
    ComplexMatrix l = ComplexMatrix::Zero(dim, dim);
    const Complex phase = std::polar(1.0, static_cast<double>(n) * phi);
    for (std::size_t m = n; m < d; ++m) {
      const double mag = std::sqrt(detail::binomial(m, n)) *
                         std::pow(eta, -0.5 * static_cast<double>(m - n)) *
                         detail::sqrt_pow((1.0 - eta) / eta, n);
      l(static_cast<Eigen::Index>(m - n), static_cast<Eigen::Index>(m)) = mag * phase;
    }
    ops.push_back(std::move(l));
  }
  return ops;
}

/// rho_in = sum_n (-1)^n L_n rho_out L_n^dagger. Hermitian and trace
/// preserving but not positive.
inline BipartiteState inverse_damping(const BipartiteState& state, double eta, double phi,
                                      Mode mode) {
  const std::size_t d = state.dims().of(mode);
  const auto ops = inverse_damping_ops(eta, phi, d);
  std::vector<ComplexMatrix> embedded;
  std::vector<double> signs;
  for (std::size_t n = 0; n < ops.size(); ++n) {
    embedded.push_back(embed_op(ops[n], mode, state.dims()));
    signs.push_back(n % 2 == 0 ? 1.0 : -1.0);
  }
  return BipartiteState(detail::sandwich_sum(state.rho(), embedded, signs), state.dims());
}

inline BipartiteState inverse_two_sided(const BipartiteState& state, double eta, double phi) {
  return inverse_damping(inverse_damping(state, eta, phi, Mode::A), eta, phi, Mode::B);
}

inline Physicality is_physical(const BipartiteState& state, double eps = kDefaultPhysicalEps) {
  if (!(eps >= 0.0)) throw Error(ErrorKind::InvalidSpec, "is_physical: eps must be >= 0");
  const double m = min_herm_eigval(state.rho());
  return {m >= -eps, m};
}

}  // namespace decolab
