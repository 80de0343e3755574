#pragma once

// Matrices of two-mode operator moments and the determinant test built on
// them: a state is entangled when some Hermitian moment matrix with the
// partial-transposition ordering has a negative determinant.
//
// Moments are exact for the truncated state viewed as a state of the
// untruncated modes. Each single-mode operator word is multiplied out in a
// space padded by its total creation power, so anti-normally ordered
// factors such as b b^dagger are not clipped at the truncation edge.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "decolab/fock.hpp"
#include "decolab/numerics.hpp"

namespace decolab {

struct MultiIndex4 {
  std::size_t i1 = 0, i2 = 0, i3 = 0, i4 = 0;
  auto operator<=>(const MultiIndex4&) const = default;
};

struct MultiIndex3 {
  std::size_t i1 = 0, i2 = 0, i3 = 0;
  auto operator<=>(const MultiIndex3&) const = default;
};

/// GeneralSV: a^{dag i2} a^{i1} a^{dag j1} a^{j2} b^{dag j4} b^{j3} b^{dag i3} b^{i4}
/// NomA:      a^{dag i1} a^{j1} b^{dag j3} b^{j2} b^{dag i2} b^{i3}
/// NomB:      the same with the roles of a and b exchanged
/// NomAB:     a^{dag i1} a^{j1} b^{dag j3} b^{i3}   (i2 must be 0)
enum class Ordering { GeneralSV, NomA, NomB, NomAB };

inline const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::GeneralSV: return "GENERAL_SV";
    case Ordering::NomA: return "NOM_A";
    case Ordering::NomB: return "NOM_B";
    case Ordering::NomAB: return "NOM_AB";
  }
  return "?";
}

class MomentMatrixSpec {
 public:
  static MomentMatrixSpec general(std::vector<MultiIndex4> indices) {
    require_distinct(indices);
    MomentMatrixSpec s;
    s.ordering_ = Ordering::GeneralSV;
    s.sv_ = std::move(indices);
    return s;
  }

  static MomentMatrixSpec nom(Ordering ordering, std::vector<MultiIndex3> indices) {
    if (ordering == Ordering::GeneralSV) {
      throw Error(ErrorKind::InvalidSpec, "GENERAL_SV specs take four-component indices");
    }
    require_distinct(indices);
    if (ordering == Ordering::NomAB) {
      for (const auto& i : indices) {
        if (i.i2 != 0) {
          throw Error(ErrorKind::InvalidSpec, "NOM_AB indices must have a zero middle component");
        }
      }
    }
    MomentMatrixSpec s;
    s.ordering_ = ordering;
    s.nom_ = std::move(indices);
    return s;
  }

  Ordering ordering() const { return ordering_; }
  bool is_nom() const { return ordering_ != Ordering::GeneralSV; }
  std::size_t size() const { return is_nom() ? nom_.size() : sv_.size(); }
  const std::vector<MultiIndex4>& sv_indices() const { return sv_; }
  const std::vector<MultiIndex3>& nom_indices() const { return nom_; }

 private:
  MomentMatrixSpec() = default;

  template <typename T>
  static void require_distinct(const std::vector<T>& indices) {
    if (indices.empty()) throw Error(ErrorKind::InvalidSpec, "moment spec has no indices");
    if (std::set<T>(indices.begin(), indices.end()).size() != indices.size()) {
      throw Error(ErrorKind::InvalidSpec, "moment spec indices must be pairwise distinct");
    }
  }

  Ordering ordering_ = Ordering::GeneralSV;
  std::vector<MultiIndex4> sv_;
  std::vector<MultiIndex3> nom_;
};

/// All three-component indices of total order <= max_order, graded then
/// lexicographic.
inline std::vector<MultiIndex3> graded_indices3(std::size_t max_order) {
  std::vector<MultiIndex3> out;
  for (std::size_t order = 0; order <= max_order; ++order)
    for (std::size_t a = order + 1; a-- > 0;)
      for (std::size_t b = order - a + 1; b-- > 0;) out.push_back({a, b, order - a - b});
  std::stable_sort(out.begin(), out.end(), [](const MultiIndex3& x, const MultiIndex3& y) {
    const auto gx = x.i1 + x.i2 + x.i3, gy = y.i1 + y.i2 + y.i3;
    if (gx != gy) return gx < gy;
    return x < y;
  });
  return out;
}

/// A single-mode operator product, read left to right.
struct Factor {
  bool creation;
  std::size_t power;
};
using OperatorWord = std::vector<Factor>;

inline Factor cre(std::size_t p) { return {true, p}; }
inline Factor ann(std::size_t p) { return {false, p}; }

/// Top-left d x d block of the word multiplied out in a padded space.
inline ComplexMatrix word_matrix(const OperatorWord& word, std::size_t d) {
  std::size_t pad = 0;
  for (const auto& f : word)
    if (f.creation) pad += f.power;
  const std::size_t dim = d + pad;
  const ComplexMatrix a = annihilation_op(dim);
  const ComplexMatrix ad = a.adjoint();
  ComplexMatrix m = identity(static_cast<Eigen::Index>(dim));
  for (const auto& f : word)
    for (std::size_t k = 0; k < f.power; ++k) m = m * (f.creation ? ad : a);
  const auto n = static_cast<Eigen::Index>(d);
  return m.topLeftCorner(n, n);
}

/// Tr[(A (x) B) rho] for single-mode words A on mode a and B on mode b.
inline Complex expectation(const BipartiteState& state, const OperatorWord& a_word,
                           const OperatorWord& b_word) {
  const auto da = static_cast<Eigen::Index>(state.dims().a);
  const auto db = static_cast<Eigen::Index>(state.dims().b);
  const ComplexMatrix a_op = word_matrix(a_word, state.dims().a);
  const ComplexMatrix b_op = word_matrix(b_word, state.dims().b);
  const ComplexMatrix& rho = state.rho();
  Complex sum = 0.0;
  for (Eigen::Index xa = 0; xa < da; ++xa)
    for (Eigen::Index ya = 0; ya < da; ++ya) {
      const Complex av = a_op(xa, ya);
      if (av == Complex(0.0)) continue;
      for (Eigen::Index xb = 0; xb < db; ++xb)
        for (Eigen::Index yb = 0; yb < db; ++yb) {
          const Complex bv = b_op(xb, yb);
          if (bv == Complex(0.0)) continue;
          sum += av * bv * rho(ya * db + yb, xa * db + xb);
        }
    }
  return sum;
}

inline Complex sv_element(const BipartiteState& state, const MultiIndex4& i, const MultiIndex4& j) {
  return expectation(state, {cre(i.i2), ann(i.i1), cre(j.i1), ann(j.i2)},
                     {cre(j.i4), ann(j.i3), cre(i.i3), ann(i.i4)});
}

inline Complex nom_element(const BipartiteState& state, const MultiIndex3& i, const MultiIndex3& j,
                           Ordering which) {
  const OperatorWord normal = {cre(i.i1), ann(j.i1)};
  const OperatorWord transposed = {cre(j.i3), ann(j.i2), cre(i.i2), ann(i.i3)};
  switch (which) {
    case Ordering::NomA: return expectation(state, normal, transposed);
    case Ordering::NomB: return expectation(state, transposed, normal);
    case Ordering::NomAB:
      if (i.i2 != 0 || j.i2 != 0) {
        throw Error(ErrorKind::InvalidSpec, "NOM_AB indices must have a zero middle component");
      }
      return expectation(state, normal, {cre(j.i3), ann(i.i3)});
    case Ordering::GeneralSV: break;
  }
  throw Error(ErrorKind::WrongOrdering, "nom_element needs a NOM ordering");
}

inline ComplexMatrix build_matrix(const BipartiteState& state, const MomentMatrixSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto ur = static_cast<std::size_t>(r), uc = static_cast<std::size_t>(c);
      m(r, c) = spec.is_nom()
                    ? nom_element(state, spec.nom_indices()[ur], spec.nom_indices()[uc],
                                  spec.ordering())
                    : sv_element(state, spec.sv_indices()[ur], spec.sv_indices()[uc]);
    }
  const double defect = hermiticity_defect(m);
  if (defect > 1e-10 * std::max(1.0, max_abs(m))) {
    throw Error(ErrorKind::NotHermitianResult,
                "moment matrix off Hermitian by " + std::to_string(defect));
  }
  return (m + m.adjoint()) * 0.5;
}

/// Diagonal H with M(eta) = H M(1) H under vacuum damping of the normally
/// ordered mode(s): H[r,r] = eta_a^{p_a(r)/2} eta_b^{p_b(r)/2}.
inline ComplexMatrix scaling_matrix(const MomentMatrixSpec& spec, double eta_a, double eta_b) {
  if (!spec.is_nom()) {
    throw Error(ErrorKind::WrongOrdering, "scaling_matrix is defined for NOM orderings only");
  }
  for (double e : {eta_a, eta_b}) {
    if (!(e >= 0.0 && e <= 1.0)) {
      throw Error(ErrorKind::EtaOutOfRange, "scaling_matrix: eta = " + std::to_string(e));
    }
  }
  const auto pw = [](double eta, std::size_t p) {
    return p == 0 ? 1.0 : std::pow(eta, 0.5 * static_cast<double>(p));
  };
  const auto n = static_cast<Eigen::Index>(spec.size());
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const MultiIndex3& i = spec.nom_indices()[static_cast<std::size_t>(r)];
    switch (spec.ordering()) {
      case Ordering::NomA: h(r, r) = pw(eta_a, i.i1); break;
      case Ordering::NomB: h(r, r) = pw(eta_b, i.i1); break;
      case Ordering::NomAB: h(r, r) = pw(eta_a, i.i1) * pw(eta_b, i.i3); break;
      case Ordering::GeneralSV: break;
    }
  }
  return h;
}

struct HzWitnesses {
  double w1 = 0.0;  // |<a b^dag>|^2 - <a^dag a b^dag b>
  double w2 = 0.0;  // |<a b>|^2 - <a^dag a><b^dag b>
};

/// First-order Hillery-Zubairy quantities; a positive value certifies entanglement.
inline HzWitnesses hz_first_order(const BipartiteState& state) {
  const Complex ab_dag = expectation(state, {ann(1)}, {cre(1)});
  const Complex ab = expectation(state, {ann(1)}, {ann(1)});
  const double nn = expectation(state, {cre(1), ann(1)}, {cre(1), ann(1)}).real();
  const double na = expectation(state, {cre(1), ann(1)}, {}).real();
  const double nb = expectation(state, {}, {cre(1), ann(1)}).real();
  return {std::norm(ab_dag) - nn, std::norm(ab) - na * nb};
}

enum class Verdict { Entangled, Inconclusive };

inline const char* to_string(Verdict v) {
  return v == Verdict::Entangled ? "ENTANGLED" : "INCONCLUSIVE";
}

struct WitnessReport {
  double value = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double tolerance = 0.0;
};

inline double default_det_tolerance(const MomentMatrixSpec& spec) {
  return 1e-12 * static_cast<double>(spec.size());
}

inline WitnessReport witness_from_det(const BipartiteState& state, const MomentMatrixSpec& spec,
                                      double tol) {
  const Complex d = det(build_matrix(state, spec));
  if (std::abs(d.imag()) > tol * std::max(1.0, std::abs(d))) {
    throw Error(ErrorKind::NotHermitianResult,
                "moment determinant has imaginary part " + std::to_string(d.imag()));
  }
  return {d.real(), d.real() < -tol ? Verdict::Entangled : Verdict::Inconclusive, tol};
}

inline WitnessReport witness_from_det(const BipartiteState& state, const MomentMatrixSpec& spec) {
  return witness_from_det(state, spec, default_det_tolerance(spec));
}

/// Index sets used for pure two-qubit states. D1 and D3 are symmetric under
/// exchanging the modes; D2 is not: with NOM_A it evaluates to
/// -|beta|^2 |gamma|^4 and with NOM_B to -|beta|^4 |gamma|^2.
namespace qubit_specs {
inline MomentMatrixSpec d1(Ordering o = Ordering::NomA) {
  return MomentMatrixSpec::nom(o, {{1, 0, 0}, {0, 0, 1}, {1, 0, 1}});
}
inline MomentMatrixSpec d2(Ordering o = Ordering::NomA) {
  return MomentMatrixSpec::nom(o, {{0, 0, 0}, {1, 0, 0}, {1, 0, 1}});
}
inline MomentMatrixSpec d3(Ordering o = Ordering::NomA) {
  return MomentMatrixSpec::nom(o, {{1, 0, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}});
}
}  // namespace qubit_specs

}  // namespace decolab
