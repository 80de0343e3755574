#pragma once

// Experiment drivers: forward and inverse eta-sweeps, random separable
// states, and the search for separable states whose inverse-decohered
// preimage is physical and NPT (finite-time disentanglement beyond qubits).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "decolab/channels.hpp"
#include "decolab/entanglement.hpp"
#include "decolab/fock.hpp"
#include "decolab/moments.hpp"

namespace decolab {

struct SeparableSpec {
  std::size_t num_terms = 20;
  std::size_t local_dim = 3;
  std::uint64_t seed = 0;
};

/// Haar-random pure state: normalized vector of complex normals.
template <typename Rng>
ComplexVector random_pure(std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(static_cast<Eigen::Index>(d));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = Complex(re, im);
  }
  return v / v.norm();
}

/// sum_k p_k |a_k><a_k| (x) |b_k><b_k| with Dirichlet(1,...,1) weights.
inline BipartiteState random_separable(const SeparableSpec& spec) {
  if (spec.num_terms < 1) throw Error(ErrorKind::InvalidSpec, "num_terms must be >= 1");
  if (spec.local_dim < 2) throw Error(ErrorKind::InvalidSpec, "local_dim must be >= 2");
  std::mt19937_64 rng(spec.seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> weights(spec.num_terms);
  double total = 0.0;
  for (auto& w : weights) total += (w = expo(rng));
  const auto d = static_cast<Eigen::Index>(spec.local_dim);
  ComplexMatrix rho = ComplexMatrix::Zero(d * d, d * d);
  for (double w : weights) {
    const ComplexVector a = random_pure(spec.local_dim, rng);
    const ComplexVector b = random_pure(spec.local_dim, rng);
    rho += (w / total) * kron(a * a.adjoint(), b * b.adjoint());
  }
  return BipartiteState(std::move(rho), ModeDims(spec.local_dim, spec.local_dim));
}

/// n points from lo to hi inclusive.
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {hi};
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) {
    g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  g.back() = hi;
  return g;
}

inline std::vector<double> default_inverse_grid() { return uniform_grid(0.5, 1.0, 101); }

struct NamedSpec {
  std::string name;
  MomentMatrixSpec spec;
};

struct SweepRecord {
  double eta = 1.0;
  double min_eig = 0.0;
  std::optional<double> log_negativity;  // absent when unphysical
  std::vector<std::pair<std::string, double>> det_values;
  std::optional<double> concurrence;     // 2x2 physical states only
};

namespace detail {

inline SweepRecord make_record(double eta, const BipartiteState& s,
                               const std::vector<NamedSpec>& witnesses, double eps) {
  SweepRecord rec;
  rec.eta = eta;
  const Physicality phys = is_physical(s, eps);
  rec.min_eig = phys.min_eig;
  if (phys.physical) {
    rec.log_negativity = log_negativity(s, eps).log_negativity;
    if (s.dims() == ModeDims(2, 2)) rec.concurrence = wootters_concurrence(s).value;
  }
  for (const auto& w : witnesses) {
    rec.det_values.emplace_back(w.name, witness_from_det(s, w.spec).value);
  }
  return rec;
}

}  // namespace detail

/// Inverse decoherence at each grid point (mode a, or both modes).
inline std::vector<SweepRecord> inverse_sweep(const BipartiteState& state,
                                              const std::vector<double>& eta_grid, double phi,
                                              bool two_sided,
                                              const std::vector<NamedSpec>& witnesses = {},
                                              double eps = kDefaultPhysicalEps) {
  std::vector<SweepRecord> out;
  out.reserve(eta_grid.size());
  for (double eta : eta_grid) {
    const BipartiteState pre = two_sided ? inverse_two_sided(state, eta, phi)
                                         : inverse_damping(state, eta, phi, Mode::A);
    out.push_back(detail::make_record(eta, pre, witnesses, eps));
  }
  return out;
}

struct ModePlan {
  enum class Kind { AOnly, BOnly, Both, Unbalanced };
  Kind kind = Kind::Both;
  double eta_b_fixed = 1.0;  // Unbalanced: grid eta on a, this on b

  static ModePlan a_only() { return {Kind::AOnly, 1.0}; }
  static ModePlan b_only() { return {Kind::BOnly, 1.0}; }
  static ModePlan both() { return {Kind::Both, 1.0}; }
  static ModePlan unbalanced(double eta_b) { return {Kind::Unbalanced, eta_b}; }
};

inline BipartiteState evolve_by_plan(const BipartiteState& state, double eta, const ModePlan& plan,
                                     double phi = 0.0) {
  switch (plan.kind) {
    case ModePlan::Kind::AOnly: return apply_channel(state, {eta, phi, Mode::A, std::nullopt});
    case ModePlan::Kind::BOnly: return apply_channel(state, {eta, phi, Mode::B, std::nullopt});
    case ModePlan::Kind::Both: return apply_two_sided(state, eta, eta, phi);
    case ModePlan::Kind::Unbalanced: return apply_two_sided(state, eta, plan.eta_b_fixed, phi);
  }
  return state;
}

inline std::vector<SweepRecord> forward_sweep(const BipartiteState& state,
                                              const std::vector<double>& eta_grid,
                                              const ModePlan& plan,
                                              const std::vector<NamedSpec>& witnesses = {},
                                              double eps = kDefaultPhysicalEps) {
  std::vector<SweepRecord> out;
  out.reserve(eta_grid.size());
  for (double eta : eta_grid) {
    out.push_back(detail::make_record(eta, evolve_by_plan(state, eta, plan), witnesses, eps));
  }
  return out;
}

struct SdeHit {
  BipartiteState state;  // separable seed
  std::uint64_t seed = 0;
  double eta = 1.0;
  double preimage_min_eig = 0.0;
  double preimage_log_neg = 0.0;
};

struct SdeSearchOptions {
  bool two_sided = true;
  double phi = 0.0;
  double eps = kDefaultPhysicalEps;
  double min_log_negativity = 0.01;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Seeds trial t with spec.seed + t. Trials run in parallel; hits come back
/// ordered by trial, then by grid position, independent of scheduling.
inline std::vector<SdeHit> sde_search(const SeparableSpec& spec, const std::vector<double>& eta_grid,
                                      std::size_t trials, const SdeSearchOptions& opt = {}) {
  if (trials < 1) throw Error(ErrorKind::InvalidSpec, "sde_search: trials must be >= 1");
  std::vector<std::vector<SdeHit>> per_trial(trials);
  const auto run = [&](std::size_t t) {
    SeparableSpec s = spec;
    s.seed = spec.seed + t;
    const BipartiteState seed_state = random_separable(s);
    for (double eta : eta_grid) {
      const BipartiteState pre = opt.two_sided ? inverse_two_sided(seed_state, eta, opt.phi)
                                               : inverse_damping(seed_state, eta, opt.phi, Mode::A);
      const Physicality phys = is_physical(pre, opt.eps);
      if (!phys.physical) continue;
      const double en = log_negativity(pre, opt.eps).log_negativity;
      if (en > opt.min_log_negativity) {
        per_trial[t].push_back({seed_state, s.seed, eta, phys.min_eig, en});
      }
    }
  };
  unsigned n_threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, trials));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t t = w; t < trials; t += n_threads) run(t);
    });
  }
  for (auto& th : pool) th.join();
  std::vector<SdeHit> hits;
  for (auto& v : per_trial)
    for (auto& h : v) hits.push_back(std::move(h));
  return hits;
}

/// Summary of an inverse sweep scanned downward from the top of the grid.
struct SdeWindow {
  double physical_down_to = 1.0;       // lowest eta of the contiguous physical run
  std::optional<double> npt_from;      // highest physical eta with E_N > npt_tol
  double max_log_negativity = 0.0;     // over the physical run
  double eta_at_max = 1.0;
};

/// `npt_tol` absorbs the rounding-level E_N (~1e-15) of PPT states.
inline SdeWindow summarize_window(std::vector<SweepRecord> records, double npt_tol = 1e-12) {
  std::sort(records.begin(), records.end(),
            [](const SweepRecord& x, const SweepRecord& y) { return x.eta > y.eta; });
  SdeWindow w;
  for (const auto& r : records) {
    if (!r.log_negativity) break;
    w.physical_down_to = r.eta;
    if (*r.log_negativity > npt_tol && !w.npt_from) w.npt_from = r.eta;
    if (*r.log_negativity > w.max_log_negativity) {
      w.max_log_negativity = *r.log_negativity;
      w.eta_at_max = r.eta;
    }
  }
  return w;
}

}  // namespace decolab
