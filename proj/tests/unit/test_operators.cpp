#include <cmath>

#include "qberry/error.hpp"
#include "qberry/operators.hpp"
#include "qberry/states.hpp"
#include "support.hpp"

namespace qberry {
namespace {

using testing::mat;
using testing::RayEqual;
using testing::stream;

const double kS2 = std::sqrt(2.0);
const double kS3 = std::sqrt(3.0);

CMat3 q_ij(const CMat3& a, const CMat3& b, bool diagonal) {
  CMat3 q = (a * b + b * a) * Complex(0.5);
  if (diagonal) q -= CMat3::identity() * Complex(2.0 / 3.0);
  return q;
}

CMat3 eq7() {
  return mat({{Complex(0, 1), 0, Complex(0, 1)}, {0, kS2, 0}, {1, 0, -1}}) * Complex(1.0 / kS2);
}

TEST(SpinOperators, SzDiagonalAndCasimir) {
  const auto s = spin_operators();
  EXPECT_LT(max_abs_diff(s.z.matrix(), CMat3::diagonal({1.0, 0.0, -1.0})), 1e-15);
  const CMat3 casimir = s.x.matrix() * s.x.matrix() + s.y.matrix() * s.y.matrix() + s.z.matrix() * s.z.matrix();
  EXPECT_LT(max_abs_diff(casimir, CMat3::identity() * Complex(2.0)), 1e-15);
  EXPECT_TRUE(s.x.hermitian() && s.y.hermitian() && s.z.hermitian());
}

TEST(SpinOperators, Commutators) {
  for (const auto& s : {spin_operators(), spin_operators_real_basis()}) {
    const CMat3 &x = s.x.matrix(), &y = s.y.matrix(), &z = s.z.matrix();
    EXPECT_LT(max_abs_diff(commutator(x, y), z * kI), 1e-15);
    EXPECT_LT(max_abs_diff(commutator(y, z), x * kI), 1e-15);
    EXPECT_LT(max_abs_diff(commutator(z, x), y * kI), 1e-15);
  }
}

TEST(SpinOperatorsReal, EntriesAndBasisChange) {
  const auto sr = spin_operators_real_basis();
  EXPECT_LT(std::abs(sr.z.matrix()(0, 2) - Complex(0, -1)), 1e-15);
  for (const Complex& z : sr.x.matrix().entries()) EXPECT_EQ(z.real(), 0.0);
  for (const Complex& z : sr.y.matrix().entries()) EXPECT_EQ(z.real(), 0.0);
  for (const Complex& z : sr.z.matrix().entries()) EXPECT_EQ(z.real(), 0.0);
  const auto s = spin_operators();
  const CMat3 u = eq7();
  EXPECT_LT(max_abs_diff(u * s.x.matrix() * u.adjoint(), sr.x.matrix()), 1e-12);
  // The y and z real-basis matrices come with the opposite sign.
  EXPECT_LT(max_abs_diff(u * s.y.matrix() * u.adjoint(), sr.y.matrix() * Complex(-1.0)), 1e-12);
  EXPECT_LT(max_abs_diff(u * s.z.matrix() * u.adjoint(), sr.z.matrix() * Complex(-1.0)), 1e-12);
}

TEST(Quadrupoles, DefinitionsMatchSpinProducts) {
  const auto s = spin_operators();
  const CMat3 &x = s.x.matrix(), &y = s.y.matrix(), &z = s.z.matrix();
  const CMat3 qxx = q_ij(x, x, true), qyy = q_ij(y, y, true), qzz = q_ij(z, z, true);
  EXPECT_LT(max_abs_diff(qxx + qyy + qzz, CMat3{}), 1e-15);
  const auto q = quadrupole_ops();
  ASSERT_EQ(q.size(), 5u);
  EXPECT_LT(max_abs_diff(q.at(QuadrupoleComponent::ZZ).matrix(), qzz), 1e-15);
  EXPECT_LT(max_abs_diff(q.at(QuadrupoleComponent::X2MinusY2).matrix(), qxx - qyy), 1e-15);
  EXPECT_LT(max_abs_diff(q.at(QuadrupoleComponent::XY).matrix(), q_ij(x, y, false)), 1e-15);
  EXPECT_LT(max_abs_diff(q.at(QuadrupoleComponent::YZ).matrix(), q_ij(y, z, false)), 1e-15);
  EXPECT_LT(max_abs_diff(q.at(QuadrupoleComponent::ZX).matrix(), q_ij(z, x, false)), 1e-15);
  for (const auto& [c, op] : q) {
    EXPECT_TRUE(op.hermitian()) << name(c);
    EXPECT_LT(std::abs(op.matrix().trace()), 1e-15) << name(c);
  }
  EXPECT_LT(max_abs_diff(q_ij(x, y, false), q_ij(y, x, false)), 1e-15);
}

TEST(Quadrupoles, ComponentNamesRoundTrip) {
  for (auto c : {QuadrupoleComponent::XY, QuadrupoleComponent::YZ, QuadrupoleComponent::ZX, QuadrupoleComponent::ZZ,
                 QuadrupoleComponent::X2MinusY2}) {
    EXPECT_EQ(parse_quadrupole_component(name(c)), c);
  }
  EXPECT_FALSE(parse_quadrupole_component("xx").has_value());
}

TEST(Quadrupoles, PlanarEigenvalueLaw) {
  for (int k = 0; k < 64; ++k) {
    const double th = 2.0 * kPi * k / 64.0;
    const EigenSystem es = eig_hermitian3(planar_quadrupole_hamiltonian(th).matrix());
    const double top = std::sqrt(5.0 + 3.0 * std::cos(2.0 * th)) / (2.0 * kS2);
    EXPECT_NEAR(es.values[2], top, 1e-13);
    EXPECT_NEAR(es.values[0], -top, 1e-13);
    EXPECT_NEAR(es.values[1], 0.0, 1e-13);
  }
}

TEST(QuadrupolarHamiltonian, Examples) {
  const EigenSystem x2 = eig_hermitian3(quadrupolar_hamiltonian({{QuadrupoleComponent::X2MinusY2, 1.0}}).matrix());
  EXPECT_NEAR(x2.values[0], -1.0, 1e-14);
  EXPECT_NEAR(x2.values[1], 0.0, 1e-14);
  EXPECT_NEAR(x2.values[2], 1.0, 1e-14);

  const EigenSystem zz = quadrupolar_eigenbasis(quadrupolar_hamiltonian({{QuadrupoleComponent::ZZ, 1.0}}));
  for (const CVec3& v : zz.vectors) EXPECT_TRUE(is_quadrupolar(QutritState(v), 1e-12));

  try {
    quadrupolar_hamiltonian({{QuadrupoleComponent::XY, 0.0}});
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllZero);
  }
}

TEST(QuadrupolarHamiltonian, EigenstatesQuadrupolar) {
  Rng rng = stream(30);
  for (int trial = 0; trial < 200; ++trial) {
    const Operator3 h = random_quadrupolar_hamiltonian(rng);
    EXPECT_TRUE(h.hermitian());
    EXPECT_LT(std::abs(h.matrix().trace()), 1e-14);
    const EigenSystem plain = eig_hermitian3(h.matrix());
    const EigenSystem fixed = quadrupolar_eigenbasis(h);
    for (int k = 0; k < 3; ++k) {
      EXPECT_TRUE(is_quadrupolar(QutritState::normalized(plain.vectors[k]), 1e-9));
      EXPECT_TRUE(is_quadrupolar(QutritState(fixed.vectors[k]), 1e-9));
      EXPECT_NEAR(fixed.values[k], plain.values[k], 1e-12);
    }
  }
}

TEST(GlobalUnitary, MatrixAndAction) {
  const Operator3 u = global_unitary();
  EXPECT_TRUE(u.unitary());
  EXPECT_LT(max_abs_diff(u.matrix(), eq7()), 1e-15);
  EXPECT_LT(max_abs_diff(u.matrix() * CVec3{0.0, 1.0, 0.0}, CVec3{0.0, 1.0, 0.0}), 1e-15);
  EXPECT_LT(max_abs_diff(u.matrix() * CVec3{1.0 / kS2, 0.0, -1.0 / kS2}, CVec3{0.0, 0.0, 1.0}), 1e-15);
}

TEST(GlobalUnitary, QuadrupolarStatesBecomeReal) {
  Rng rng = stream(31);
  for (int trial = 0; trial < 200; ++trial) {
    const QutritState q = gauge_fix_quadrupolar(
        quadrupolar_from_angles({rng.uniform(0.0, kPi), rng.uniform(0.0, 2.0 * kPi)}));
    for (const Complex& z : global_unitary().matrix() * q.amps()) EXPECT_LT(std::abs(z.imag()), 1e-12);
  }
}

TEST(InterpolatingUnitary, Endpoints) {
  EXPECT_LT(max_abs_diff(interpolating_unitary(0.0).matrix(), CMat3::identity()), 1e-15);
  EXPECT_LT(max_abs_diff(interpolating_unitary(1.0).matrix(), eq7()), 1e-12);
  for (double a : {0.1, 0.5, 0.75, 0.999, 1.3}) EXPECT_LT(unitarity_residual(interpolating_unitary(a).matrix()), 1e-12);
}

TEST(InterpolatingUnitary, ProjectorAlgebra) {
  const auto p = interpolation_projectors();
  CMat3 sum;
  for (int i = 0; i < 3; ++i) {
    sum += p[i].projector;
    EXPECT_LT(max_abs_diff(p[i].projector * p[i].projector, p[i].projector), 1e-15);
    EXPECT_LT(hermiticity_residual(p[i].projector), 1e-15);
    for (int j = 0; j < 3; ++j)
      if (i != j) EXPECT_LT(max_abs_diff(p[i].projector * p[j].projector, CMat3{}), 1e-15);
  }
  EXPECT_LT(max_abs_diff(sum, CMat3::identity()), 1e-15);
}

TEST(InterpolatingUnitary, ProjectorsMatchEigendecomposition) {
  // The Hermitian part of U shares its eigenprojectors, with eigenvalues cos(theta).
  const CMat3 u = eq7();
  const CMat3 herm = (u + u.adjoint()) * Complex(0.5);
  const EigenSystem es = eig_hermitian3(herm);
  for (const auto& p : interpolation_projectors()) {
    int best = 0;
    for (int k = 1; k < 3; ++k)
      if (std::abs(es.values[k] - std::cos(p.phase)) < std::abs(es.values[best] - std::cos(p.phase))) best = k;
    EXPECT_NEAR(es.values[best], std::cos(p.phase), 1e-12);
    const CMat3 proj = CMat3::outer(es.vectors[best], es.vectors[best]);
    EXPECT_LT(max_abs_diff(proj, p.projector), 1e-10);
    EXPECT_LT(max_abs_diff(u * p.projector, p.projector * std::polar(1.0, p.phase)), 1e-12);
  }
}

TEST(InterpolatingUnitary, PrintedProjectorsAreConjugates) {
  const double dp = (3.0 + kS3) / 6.0, dm = (3.0 - kS3) / 6.0;
  const Complex o = Complex(1.0, -1.0) / (2.0 * kS3);
  const CMat3 printed1 = mat({{dp, 0, o}, {0, 0, 0}, {std::conj(o), 0, dm}});
  const CMat3 printed2 = mat({{dm, 0, -o}, {0, 0, 0}, {-std::conj(o), 0, dp}});
  const auto p = interpolation_projectors();
  EXPECT_LT(max_abs_diff(printed1.conj(), p[0].projector), 1e-15);
  EXPECT_LT(max_abs_diff(printed2.conj(), p[1].projector), 1e-15);
  // As printed they resolve U^T rather than U.
  const CMat3 ut = eq7().transpose();
  EXPECT_LT(max_abs_diff(ut * printed1, printed1 * std::polar(1.0, p[0].phase)), 1e-12);
  EXPECT_GT(max_abs_diff(eq7() * printed1, printed1 * std::polar(1.0, p[0].phase)), 0.1);
}

TEST(Theta, MatrixSquareAndSymmetry) {
  const AntiUnitary th = anti_unitary_theta();
  EXPECT_LT(max_abs_diff(th.effective(), mat({{0, 0, -1}, {0, 1, 0}, {-1, 0, 0}})), 1e-15);
  EXPECT_LT(max_abs_diff(th.squared(), CMat3::identity()), 1e-15);
  // With U_q = U^dagger, U_q^* U_q^dagger = U^T U is symmetric and equals the matrix above.
  const CMat3 m = eq7().transpose() * eq7();
  EXPECT_LT(max_abs_diff(m, m.transpose()), 1e-12);
  EXPECT_LT(max_abs_diff(m, th.effective()), 1e-12);
  EXPECT_LT(max_abs_diff(th.apply(CVec3{0.0, 1.0, 0.0}), CVec3{0.0, 1.0, 0.0}), 1e-15);
}

TEST(Theta, FixesQuadrupolarStatesAndSquaresToOne) {
  Rng rng = stream(32);
  const AntiUnitary th = anti_unitary_theta();
  for (int trial = 0; trial < 100; ++trial) {
    const Complex a(rng.normal(), rng.normal());
    const CVec3 q = QutritState::normalized({a, rng.normal(), -std::conj(a)}).amps();
    EXPECT_LT(max_abs_diff(th.apply(q), q), 1e-15);
    const CVec3 psi = random_state(rng).amps();
    EXPECT_LT(max_abs_diff(th.apply(th.apply(psi)), psi), 1e-15);
  }
}

TEST(AntiUnitary, TransportFromRealSubspace) {
  Rng rng = stream(33);
  for (int trial = 0; trial < 100; ++trial) {
    const CMat3 v = random_unitary(rng).matrix();
    const AntiUnitary k = anti_unitary_from_unitary(v);
    // V V^T is symmetric, the K(V^* V^dagger) action written as psi -> M psi^*.
    EXPECT_LT(max_abs_diff(k.effective(), k.effective().transpose()), 1e-12);
    const QutritState image = apply(v, random_real_state(rng));
    EXPECT_TRUE(RayEqual(k.apply(image), image, 1e-12));
  }
  EXPECT_THROW(anti_unitary_from_unitary(CMat3::identity() * Complex(2.0)), Error);
}

TEST(TripletTimeReversal, NegativeOfTheta) {
  const AntiUnitary t = triplet_time_reversal();
  EXPECT_LT(max_abs_diff(t.effective(), mat({{0, 0, 1}, {0, -1, 0}, {1, 0, 0}})), 1e-15);
  EXPECT_LT(max_abs_diff(t.effective(), anti_unitary_theta().effective() * Complex(-1.0)), 1e-15);
}

TEST(TripletTimeReversal, ActionOnStates) {
  Rng rng = stream(34);
  const AntiUnitary t = triplet_time_reversal();
  for (int trial = 0; trial < 100; ++trial) {
    const Complex a(rng.normal(), rng.normal());
    const CVec3 q = QutritState::normalized({a, rng.normal(), -std::conj(a)}).amps();
    EXPECT_LT(max_abs_diff(t.apply(q), scaled(q, -1.0)), 1e-15);
    // The general action (a, b, g) -> (-g*, b*, -a*) holds up to a global sign.
    const QutritState psi = random_state(rng);
    const QutritState displayed({-std::conj(psi[2]), std::conj(psi[1]), -std::conj(psi[0])});
    EXPECT_TRUE(RayEqual(t.apply(psi), displayed, 1e-14));
  }
}

TEST(TransformOperator, IdentitySpinAndSpectrum) {
  Rng rng = stream(35);
  const Operator3 a = random_hermitian(rng);
  EXPECT_LT(max_abs_diff(transform_operator(Operator3(CMat3::identity()), a).matrix(), a.matrix()), 1e-15);
  EXPECT_LT(max_abs_diff(transform_operator(global_unitary(), spin_operators().x).matrix(),
                         spin_operators_real_basis().x.matrix()),
            1e-12);
  for (int trial = 0; trial < 100; ++trial) {
    const Operator3 h = random_hermitian(rng);
    const Operator3 out = transform_operator(random_unitary(rng), h);
    EXPECT_TRUE(out.hermitian());
    const EigenSystem e1 = eig_hermitian3(h.matrix()), e2 = eig_hermitian3(out.matrix());
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(e1.values[k], e2.values[k], 1e-10);
  }
  try {
    transform_operator(Operator3(CMat3::identity() * Complex(2.0)), a);
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
  }
}

TEST(Operator3, FlagsCertified) {
  EXPECT_TRUE(Operator3(CMat3::identity()).hermitian());
  EXPECT_TRUE(Operator3(CMat3::identity()).unitary());
  const Operator3 m(mat({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_FALSE(m.hermitian());
  EXPECT_FALSE(m.unitary());
  EXPECT_FALSE(Operator3(eq7()).hermitian());
}

}  // namespace
}  // namespace qberry
