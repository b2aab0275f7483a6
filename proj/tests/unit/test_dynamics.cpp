#include <cmath>

#include "qberry/dynamics.hpp"
#include "qberry/error.hpp"
#include "qberry/majorana.hpp"
#include "qberry/operators.hpp"
#include "support.hpp"

namespace qberry {
namespace {

using testing::phase_gap;
using testing::RayEqual;
using testing::stream;

SpinFieldReal random_field(Rng& rng) { return {rng.normal(), rng.normal(), rng.normal()}; }

RealState3 random_real(Rng& rng) {
  const RVec3 v = random_unit_vector(rng);
  return {v[0], v[1], v[2]};
}

// Unit vector satisfying the geodesic condition: orthogonal to (b, -c, a).
RealState3 geodesic_start(const SpinFieldReal& f, Rng& rng) {
  const RVec3 k{f.b(), -f.c(), f.a()};
  const RVec3 v = normalized(cross(k, random_unit_vector(rng)));
  return {v[0], v[1], v[2]};
}

double dist(const RealState3& x, const RealState3& y) { return norm(x.vec() - y.vec()); }

// exp(-i H' t) is a real rotation: -i H' = A is antisymmetric with A v = w x v.
RealState3 rotation_oracle(const SpinFieldReal& f, const RealState3& p, double t) {
  const CMat3 a = real_basis_hamiltonian(f).matrix() * Complex(0.0, -1.0);
  const RVec3 w{a(2, 1).real(), a(0, 2).real(), a(1, 0).real()};
  const RVec3 n = normalized(w);
  const double chi = norm(w) * t, c = std::cos(chi), s = std::sin(chi);
  const RVec3 v = p.vec();
  const RVec3 out = c * v + s * cross(n, v) + ((1.0 - c) * dot(n, v)) * n;
  return RealState3::normalized(out[0], out[1], out[2]);
}

QutritState to_quadrupolar(const RealState3& p) {
  return apply(global_unitary().matrix().adjoint(), QutritState(p.amps()));
}

TEST(Types, Validation) {
  EXPECT_THROW(SpinFieldReal(0.0, 0.0, 0.0), Error);
  EXPECT_THROW(SpinFieldReal(NAN, 1.0, 0.0), Error);
  EXPECT_NEAR(SpinFieldReal(1.0, 2.0, 2.0).omega(), 3.0, 1e-15);
  try {
    RealState3(1.0, 1.0, 0.0);
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNormalized);
  }
}

TEST(RealBasisHamiltonian, SpectrumAndImaginaryEntries) {
  Rng rng = stream(80);
  for (int trial = 0; trial < 50; ++trial) {
    const SpinFieldReal f = random_field(rng);
    const Operator3 h = real_basis_hamiltonian(f);
    for (const Complex& z : h.matrix().entries()) EXPECT_EQ(z.real(), 0.0);
    const EigenSystem es = eig_hermitian3(h.matrix());
    EXPECT_NEAR(es.values[0], -f.omega(), 1e-12);
    EXPECT_NEAR(es.values[1], 0.0, 1e-12);
    EXPECT_NEAR(es.values[2], f.omega(), 1e-12);
    // The stationary direction (b, -c, a).
    const RVec3 k = normalized(RVec3{f.b(), -f.c(), f.a()});
    EXPECT_LT(norm(h.matrix() * CVec3{k[0], k[1], k[2]}), 1e-12);
  }
}

TEST(EvolveClosedForm, FixedTimes) {
  Rng rng = stream(81);
  for (int trial = 0; trial < 100; ++trial) {
    const SpinFieldReal f = random_field(rng);
    const RealState3 p = random_real(rng);
    EXPECT_LT(dist(evolve_closed_form(f, p, 0.0), p), 1e-14);
    EXPECT_LT(dist(evolve_closed_form(f, p, f.period()), p), 1e-10);
    const RealState3 g = geodesic_start(f, rng);
    const RealState3 half = evolve_closed_form(f, g, 0.5 * f.period());
    EXPECT_LT(norm(half.vec() + g.vec()), 1e-10);
  }
}

TEST(EvolveClosedForm, MatchesNumericAndRotation) {
  Rng rng = stream(82);
  for (int trial = 0; trial < 200; ++trial) {
    const SpinFieldReal f = random_field(rng);
    const RealState3 p = random_real(rng);
    const double tau = rng.uniform(0.0, 4.0 * f.period());
    const RealState3 closed = evolve_closed_form(f, p, tau);
    EXPECT_LT(dist(closed, evolve_numeric(f, p, tau)), 1e-8);
    EXPECT_LT(dist(closed, rotation_oracle(f, p, tau)), 1e-10);
    for (const Complex& z : evolve_numeric_amplitudes(f, p, tau)) EXPECT_LT(std::abs(z.imag()), 1e-12);
  }
  const SpinFieldReal f(0.3, -1.2, 0.7);
  const RealState3 p = RealState3::normalized(0.2, 0.5, -0.9);
  EXPECT_LT(dist(evolve_closed_form(f, p, 1.7), evolve_numeric(f, p, 1.7)), 1e-12);
}

TEST(GeodesicCondition, Examples) {
  const SpinFieldReal x(1.0, 0.0, 0.0);
  EXPECT_TRUE(geodesic_condition(x, RealState3(0.6, 0.8, 0.0), 1e-12));
  EXPECT_FALSE(geodesic_condition(x, RealState3(0.0, 0.0, 1.0), 1e-12));
}

TEST(GeodesicCondition, SolutionsFormAGreatCircle) {
  Rng rng = stream(83);
  for (int trial = 0; trial < 50; ++trial) {
    const SpinFieldReal f = random_field(rng);
    const RVec3 k = normalized(RVec3{f.b(), -f.c(), f.a()});
    for (int j = 0; j < 10; ++j) {
      const RealState3 g = geodesic_start(f, rng);
      EXPECT_TRUE(geodesic_condition(f, g, 1e-9));
      EXPECT_NEAR(dot(g.vec(), k), 0.0, 1e-12);
    }
    const RealState3 p = random_real(rng);
    EXPECT_EQ(geodesic_condition(f, p, 1e-9), std::abs(dot(p.vec(), k)) * f.omega() <= 1e-9);
  }
}

TEST(GeodesicTrajectory, AgreesWithClosedForm) {
  Rng rng = stream(84);
  for (int trial = 0; trial < 100; ++trial) {
    const SpinFieldReal f = random_field(rng);
    const RealState3 g = geodesic_start(f, rng);
    EXPECT_LT(dist(geodesic_trajectory(f, g, 0.0), g), 1e-14);
    EXPECT_LT(norm(geodesic_trajectory(f, g, kPi / f.omega()).vec() + g.vec()), 1e-9);
    for (double tau : {kPi / (2.0 * f.omega()), rng.uniform(0.0, f.period())})
      EXPECT_LT(dist(geodesic_trajectory(f, g, tau), evolve_closed_form(f, g, tau)), 1e-9);
  }
}

TEST(GeodesicTrajectory, Errors) {
  try {
    geodesic_trajectory(SpinFieldReal(0.0, 1.0, 0.0), RealState3(0.0, 0.0, 1.0), 0.3);
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominator);
  }
  try {
    geodesic_trajectory(SpinFieldReal(1.0, 0.0, 0.0), RealState3(0.0, 0.0, 1.0), 0.3);
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConditionViolated);
  }
}

TEST(AAPhase, GeodesicStateGivesPi) {
  const SpinFieldReal f(1.0, 0.0, 0.0);
  const AAPhase r = aa_phase(f, to_quadrupolar(RealState3(0.6, 0.8, 0.0)), 512);
  EXPECT_NEAR(phase_gap(r.geometric, kPi), 0.0, 1e-6);
  EXPECT_NEAR(phase_gap(r.total, kPi), 0.0, 1e-6);
  EXPECT_LT(std::abs(r.dynamical), 1e-10);
  EXPECT_LT(r.max_magnetization, 1e-8);
  EXPECT_NEAR(phase_gap(r.discrete, r.geometric), 0.0, 5e-3);
  ASSERT_TRUE(r.quantized.has_value());
  EXPECT_DOUBLE_EQ(*r.quantized, kPi);
}

TEST(AAPhase, RandomFieldsQuantized) {
  Rng rng = stream(85);
  for (int trial = 0; trial < 30; ++trial) {
    const SpinFieldReal f = random_field(rng);
    const bool geo = trial % 2 == 0;
    const RealState3 p = geo ? geodesic_start(f, rng) : random_real(rng);
    const AAPhase r = aa_phase(f, to_quadrupolar(p));
    ASSERT_TRUE(r.quantized.has_value());
    EXPECT_DOUBLE_EQ(*r.quantized, geo ? kPi : 0.0);
    EXPECT_LT(std::abs(r.dynamical), 1e-10);
    EXPECT_NEAR(phase_gap(r.discrete, r.geometric), 0.0, 5e-3);
  }
}

TEST(AAPhase, StationaryRay) {
  const SpinFieldReal f(0.4, 1.0, -0.3);
  const RealState3 k = RealState3::normalized(f.b(), -f.c(), f.a());
  const AAPhase r = aa_phase(f, to_quadrupolar(k), 64);
  ASSERT_TRUE(r.quantized.has_value());
  EXPECT_EQ(*r.quantized, 0.0);
}

TEST(AAPhase, RejectsMagnetizedStates) {
  try {
    aa_phase(SpinFieldReal(1.0, 0.0, 0.0), QutritState({1.0, 0.0, 0.0}));
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotQuadrupolar);
  }
}

TEST(Preservation, SpinAndQuadrupoleHamiltonians) {
  const QutritState q = quadrupolar_from_angles({1.1, 0.4});
  EXPECT_LT(quadrupolar_preservation_check(spin_operators().x, q, 10.0, 500).max_violation, 1e-8);
  const Operator3 qxy = quadrupole_op(QuadrupoleComponent::XY);
  const PreservationReport bad = quadrupolar_preservation_check(qxy, q, 10.0, 500);
  EXPECT_FALSE(bad.preserved);
  EXPECT_GT(bad.max_violation, 1e-3);
  const EigenSystem es = quadrupolar_eigenbasis(qxy);
  for (const CVec3& v : es.vectors) {
    EXPECT_TRUE(quadrupolar_preservation_check(qxy, QutritState(v), 10.0, 500).preserved);
  }
}

TEST(Preservation, RandomSpinHamiltonians) {
  Rng rng = stream(86);
  const auto sp = spin_operators();
  for (int trial = 0; trial < 30; ++trial) {
    const RVec3 n{rng.normal(), rng.normal(), rng.normal()};
    const Operator3 h(sp.x.matrix() * Complex(n[0]) + sp.y.matrix() * Complex(n[1]) + sp.z.matrix() * Complex(n[2]));
    const QutritState q = quadrupolar_from_angles({rng.uniform(0.0, kPi), rng.uniform(0.0, 2.0 * kPi)});
    EXPECT_TRUE(quadrupolar_preservation_check(h, q, 10.0, 200).preserved);
  }
}

TEST(Invariants, Periodicity) {
  Rng rng = stream(87);
  for (int trial = 0; trial < 200; ++trial) {
    const SpinFieldReal f = random_field(rng);
    const RealState3 p = random_real(rng);
    EXPECT_LT(dist(evolve_closed_form(f, p, f.period()), p), 1e-10);
    EXPECT_LT(dist(evolve_numeric(f, p, f.period()), p), 1e-10);
  }
}

TEST(Invariants, AntipodeDistanceIsCosine) {
  Rng rng = stream(88);
  for (int trial = 0; trial < 100; ++trial) {
    const SpinFieldReal f = random_field(rng);
    const bool geo = trial % 2 == 0;
    const RealState3 p = geo ? geodesic_start(f, rng) : random_real(rng);
    const CosineFit fit = antipode_distance_fit(f, p, 256);
    EXPECT_LT(fit.max_residual, 1e-9);
    EXPECT_NEAR(fit.argmin_tau, 0.5 * f.period(), 1e-12 * f.period() + 1e-12);
    EXPECT_EQ(fit.min_value < 1e-9, geo);
  }
}

TEST(Invariants, BasisTransport) {
  Rng rng = stream(89);
  const CMat3 ud = global_unitary().matrix().adjoint();
  for (int trial = 0; trial < 100; ++trial) {
    const SpinFieldReal f = random_field(rng);
    const RealState3 p = random_real(rng);
    const double tau = rng.uniform(0.0, f.period());
    const CVec3 via_q = propagator(quadrupolar_basis_hamiltonian(f).matrix(), tau) * (ud * p.amps());
    const CVec3 via_r = ud * evolve_closed_form(f, p, tau).amps();
    EXPECT_LT(max_abs_diff(via_q, via_r), 1e-10);
  }
}

TEST(Invariants, StarsStayAntipodal) {
  Rng rng = stream(90);
  for (int trial = 0; trial < 20; ++trial) {
    const SpinFieldReal f = random_field(rng);
    const QutritState q0 = to_quadrupolar(random_real(rng));
    const CMat3 h = quadrupolar_basis_hamiltonian(f).matrix();
    for (int k = 0; k <= 50; ++k) {
      const QutritState q = apply(propagator(h, f.period() * k / 50.0), q0);
      EXPECT_TRUE(are_antipodal(stars_from_state(q), 1e-9));
    }
  }
}

}  // namespace
}  // namespace qberry
