#include <gtest/gtest.h>

#include <cmath>

#include "decolab/channels.hpp"
#include "decolab/moments.hpp"
#include "support.hpp"

namespace {

using namespace decolab;
using decolab::fixtures::Rng;

// Brute-force moment: the operator is built in a large truncation where the
// state is zero-padded, so no truncation artifacts can reach it.
Complex brute_moment(const BipartiteState& s, const ComplexMatrix& op_a_big,
                     const ComplexMatrix& op_b_big, std::size_t big) {
  const BipartiteState e = embed_state(s, ModeDims(big, big));
  return (e.rho() * kron(op_a_big, op_b_big)).trace();
}

ComplexMatrix power(const ComplexMatrix& m, std::size_t p) {
  ComplexMatrix out = identity(m.rows());
  for (std::size_t k = 0; k < p; ++k) out = out * m;
  return out;
}

ComplexMatrix qubit_state_matrix(const QubitPure& psi, const MomentMatrixSpec& spec) {
  return build_matrix(pure_to_state(psi), spec);
}

TEST(Spec, Validation) {
  EXPECT_THROW(MomentMatrixSpec::nom(Ordering::NomA, {}), Error);
  EXPECT_THROW(MomentMatrixSpec::nom(Ordering::NomA, {{1, 0, 0}, {1, 0, 0}}), Error);
  EXPECT_THROW(MomentMatrixSpec::nom(Ordering::NomAB, {{1, 1, 0}}), Error);
  EXPECT_THROW(MomentMatrixSpec::nom(Ordering::GeneralSV, {{1, 0, 0}}), Error);
  EXPECT_THROW(MomentMatrixSpec::general({}), Error);
  EXPECT_NO_THROW(MomentMatrixSpec::general({{0, 0, 0, 0}, {1, 0, 0, 0}}));
}

TEST(Spec, GradedIndices) {
  const auto g = graded_indices3(2);
  ASSERT_EQ(g.size(), 10u);
  EXPECT_EQ(g.front(), (MultiIndex3{0, 0, 0}));
  for (std::size_t k = 1; k < 4; ++k) EXPECT_EQ(g[k].i1 + g[k].i2 + g[k].i3, 1u);
  for (std::size_t k = 4; k < 10; ++k) EXPECT_EQ(g[k].i1 + g[k].i2 + g[k].i3, 2u);
}

TEST(WordMatrix, PaddingIsExact) {
  // a a^dag on a qubit truncation: diag(1, 2), not the clipped diag(1, 0)
  const ComplexMatrix m = word_matrix({ann(1), cre(1)}, 2);
  EXPECT_NEAR(m(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(m(1, 1).real(), 2.0, 1e-15);
  // normally ordered words need no padding
  EXPECT_LT(max_abs(word_matrix({cre(1), ann(1)}, 5) - number_op(5)), 1e-15);
}

TEST(Expectation, AgainstBruteForce) {
  Rng rng(40);
  const std::size_t big = 12;
  const ComplexMatrix a = annihilation_op(big);
  const ComplexMatrix ad = a.adjoint();
  for (int t = 0; t < 5; ++t) {
    const BipartiteState s = fixtures::random_state(ModeDims(3, 4), rng);
    // a^dag^2 a b b^dag^2 b
    const Complex x = expectation(s, {cre(2), ann(1)}, {ann(1), cre(2), ann(1)});
    const Complex y = brute_moment(s, power(ad, 2) * a, a * power(ad, 2) * a, big);
    EXPECT_LT(std::abs(x - y), 1e-12);
  }
}

TEST(BuildMatrix, SvAgainstBruteForce) {
  Rng rng(41);
  const std::size_t big = 12;
  const ComplexMatrix a = annihilation_op(big);
  const ComplexMatrix ad = a.adjoint();
  const BipartiteState s = fixtures::random_state(ModeDims(3, 3), rng);
  const MultiIndex4 i{1, 0, 1, 0}, j{0, 1, 0, 1};
  // a^dag^{i2} a^{i1} a^dag^{j1} a^{j2} (x) b^dag^{j4} b^{j3} b^dag^{i3} b^{i4}
  const ComplexMatrix opa = power(ad, i.i2) * power(a, i.i1) * power(ad, j.i1) * power(a, j.i2);
  const ComplexMatrix opb = power(ad, j.i4) * power(a, j.i3) * power(ad, i.i3) * power(a, i.i4);
  EXPECT_LT(std::abs(sv_element(s, i, j) - brute_moment(s, opa, opb, big)), 1e-12);
}

TEST(BuildMatrix, HermitianAndPsdForNom) {
  // NOM matrices are Gram matrices of physical states: PSD for separable input
  Rng rng(42);
  for (Ordering o : {Ordering::NomA, Ordering::NomB}) {
    const auto spec = MomentMatrixSpec::nom(o, graded_indices3(1));
    const BipartiteState s = product_state(fixtures::random_density(3, rng),
                                           fixtures::random_density(3, rng));
    const ComplexMatrix m = build_matrix(s, spec);
    EXPECT_LT(hermiticity_defect(m), 1e-15);
    EXPECT_GE(min_herm_eigval(m), -1e-12);
  }
  // NOM_AB is PSD for every state
  const auto ab = MomentMatrixSpec::nom(Ordering::NomAB, {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {1, 0, 1}});
  for (int t = 0; t < 10; ++t) {
    EXPECT_GE(min_herm_eigval(build_matrix(fixtures::random_state(ModeDims(3, 3), rng), ab)), -1e-12);
  }
}

TEST(BuildMatrix, BellIsDetectedByNomA) {
  // D1 vanishes for the Bell state; D3 = -1/16
  EXPECT_NEAR(witness_from_det(fixtures::bell_state(), qubit_specs::d1()).value, 0.0, 1e-15);
  const WitnessReport r = witness_from_det(fixtures::bell_state(), qubit_specs::d3());
  EXPECT_EQ(r.verdict, Verdict::Entangled);
  EXPECT_NEAR(r.value, -1.0 / 16.0, 1e-15);
}

TEST(BuildMatrix, ProductStateIsInconclusive) {
  Rng rng(43);
  const BipartiteState s = pure_to_state(kron(fixtures::random_unit_vector(2, rng),
                                              fixtures::random_unit_vector(2, rng)),
                                         ModeDims(2, 2));
  for (const auto& spec : {qubit_specs::d1(), qubit_specs::d2(), qubit_specs::d3()}) {
    EXPECT_EQ(witness_from_det(s, spec).verdict, Verdict::Inconclusive);
  }
}

// Independent expansions of the 3x3 and 4x4 determinants for pure two-qubit
// states, written out from the moment definitions.
TEST(QubitDeterminants, D1) {
  Rng rng(44);
  for (int t = 0; t < 100; ++t) {
    const QubitPure p = fixtures::random_qubit_pure(rng);
    const double dd = std::norm(p.delta);
    const double x2 = std::norm(p.alpha * p.delta - p.beta * p.gamma);
    const double expected = dd * (dd * dd - x2);
    const Complex got = det(qubit_state_matrix(p, qubit_specs::d1()));
    EXPECT_NEAR(got.real(), expected, 1e-12);
    EXPECT_NEAR(got.imag(), 0.0, 1e-12);
  }
}

// D2 is the fallback for delta = 0, where D1 and D3 vanish.
TEST(QubitDeterminants, D2DependsOnOrdering) {
  Rng rng(45);
  for (int t = 0; t < 100; ++t) {
    ComplexVector v = fixtures::random_unit_vector(4, rng);
    v(3) = 0.0;
    v.normalize();
    const QubitPure p(v(0), v(1), v(2), 0.0);
    const double b2 = std::norm(p.beta), g2 = std::norm(p.gamma);
    EXPECT_NEAR(det(qubit_state_matrix(p, qubit_specs::d2(Ordering::NomA))).real(), -b2 * g2 * g2,
                1e-12);
    EXPECT_NEAR(det(qubit_state_matrix(p, qubit_specs::d2(Ordering::NomB))).real(), -b2 * b2 * g2,
                1e-12);
  }
}

TEST(QubitDeterminants, D3) {
  Rng rng(46);
  for (int t = 0; t < 100; ++t) {
    const QubitPure p = fixtures::random_qubit_pure(rng);
    const double dd = std::norm(p.delta);
    const double x2 = std::norm(p.alpha * p.delta - p.beta * p.gamma);
    for (Ordering o : {Ordering::NomA, Ordering::NomB}) {
      EXPECT_NEAR(det(qubit_state_matrix(p, qubit_specs::d3(o))).real(), -dd * dd * x2, 1e-12);
    }
  }
}

TEST(Scaling, NomAUnderDampingOfA) {
  Rng rng(47);
  const auto spec = MomentMatrixSpec::nom(Ordering::NomA, graded_indices3(2));
  for (int t = 0; t < 5; ++t) {
    const BipartiteState s = fixtures::random_state(ModeDims(3, 3), rng);
    const ComplexMatrix m0 = build_matrix(s, spec);
    for (double eta : {0.2, 0.5, 0.8}) {
      const ComplexMatrix h = scaling_matrix(spec, eta, 1.0);
      const ComplexMatrix m = build_matrix(apply_channel(s, {eta, 0.9, Mode::A, std::nullopt}), spec);
      EXPECT_LT(max_abs(m - h * m0 * h), 1e-12);
    }
  }
}

TEST(Scaling, NomBUnderDampingOfB) {
  Rng rng(48);
  const auto spec = MomentMatrixSpec::nom(Ordering::NomB, graded_indices3(1));
  const BipartiteState s = fixtures::random_state(ModeDims(3, 3), rng);
  const ComplexMatrix m0 = build_matrix(s, spec);
  const ComplexMatrix h = scaling_matrix(spec, 1.0, 0.4);
  const ComplexMatrix m = build_matrix(apply_channel(s, {0.4, 0.0, Mode::B, std::nullopt}), spec);
  EXPECT_LT(max_abs(m - h * m0 * h), 1e-12);
}

TEST(Scaling, NomABUnderTwoSidedDamping) {
  Rng rng(49);
  const auto spec =
      MomentMatrixSpec::nom(Ordering::NomAB, {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {1, 0, 1}, {2, 0, 1}});
  const BipartiteState s = fixtures::random_state(ModeDims(3, 3), rng);
  const ComplexMatrix m0 = build_matrix(s, spec);
  const ComplexMatrix h = scaling_matrix(spec, 0.3, 0.7);
  const ComplexMatrix m = build_matrix(apply_two_sided(s, 0.3, 0.7), spec);
  EXPECT_LT(max_abs(m - h * m0 * h), 1e-12);
}

TEST(Scaling, AntiNormalFactorsBreakTheLawOnTheOtherMode) {
  // NOM_A holds b b^dag factors; damping b mixes orders, so H(eta) fails there
  Rng rng(50);
  const auto spec = qubit_specs::d3();
  const BipartiteState s = fixtures::random_state(ModeDims(3, 3), rng);
  const ComplexMatrix m0 = build_matrix(s, spec);
  const ComplexMatrix h = scaling_matrix(spec, 1.0, 0.5);
  const ComplexMatrix m = build_matrix(apply_channel(s, {0.5, 0.0, Mode::B, std::nullopt}), spec);
  EXPECT_GT(max_abs(m - h * m0 * h), 1e-3);
}

TEST(Scaling, Validation) {
  EXPECT_THROW(scaling_matrix(MomentMatrixSpec::general({{0, 0, 0, 0}}), 0.5, 0.5), Error);
  EXPECT_THROW(scaling_matrix(qubit_specs::d1(), 1.5, 0.5), Error);
}

TEST(HillerZubairy, BellAndProduct) {
  // (|00> + |11>)/sqrt2: <ab> = 1/2, <n_a> = <n_b> = 1/2, <ab^dag> = 0, <n_a n_b> = 1/2
  const HzWitnesses w = hz_first_order(fixtures::bell_state());
  EXPECT_NEAR(w.w2, 0.25 - 0.25, 1e-15);
  EXPECT_NEAR(w.w1, -0.5, 1e-15);
  // (|01> + |10>)/sqrt2 violates the first inequality
  const double r = 1.0 / std::sqrt(2.0);
  const HzWitnesses v = hz_first_order(pure_to_state(QubitPure(0.0, r, r, 0.0)));
  EXPECT_NEAR(v.w1, 0.25, 1e-15);
}

TEST(HillerZubairy, ScalesWithEtaUnderOneSidedDamping) {
  Rng rng(51);
  for (int t = 0; t < 5; ++t) {
    const BipartiteState s = fixtures::random_state(ModeDims(4, 4), rng);
    const HzWitnesses w0 = hz_first_order(s);
    for (double eta : {0.25, 0.6}) {
      for (Mode m : {Mode::A, Mode::B}) {
        const HzWitnesses w = hz_first_order(apply_channel(s, {eta, 0.3, m, std::nullopt}));
        EXPECT_NEAR(w.w1, eta * w0.w1, 1e-12);
        EXPECT_NEAR(w.w2, eta * w0.w2, 1e-12);
      }
    }
  }
}

TEST(HillerZubairy, OddCatIsFlaggedByW1) {
  const std::size_t d = 16;
  const ComplexVector p = coherent_state(1.0, d), m = coherent_state(-1.0, d);
  const ComplexVector v = kron(p, p) - kron(m, m);
  const BipartiteState s = pure_to_state(v / v.norm(), ModeDims(d, d));
  const HzWitnesses w0 = hz_first_order(s);
  EXPECT_GT(w0.w1, 0.05);
  EXPECT_LT(w0.w2, -0.05);
  const HzWitnesses w = hz_first_order(apply_channel(s, {0.4, 0.0, Mode::B, std::nullopt}));
  EXPECT_NEAR(w.w1, 0.4 * w0.w1, 1e-8);
  EXPECT_NEAR(w.w2, 0.4 * w0.w2, 1e-8);
}

TEST(Witness, ToleranceAndImaginaryResidue) {
  const auto spec = qubit_specs::d1();
  EXPECT_DOUBLE_EQ(default_det_tolerance(spec), 3e-12);
  const WitnessReport r = witness_from_det(fixtures::bell_state(), spec, 10.0);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);  // below a huge threshold
}

}  // namespace
