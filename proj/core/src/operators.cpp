#include "qberry/operators.hpp"

#include <cmath>

#include "qberry/error.hpp"

namespace qberry {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kSqrt3 = 1.73205080756887729353;

CMat3 mat(std::initializer_list<Complex> v) {
  std::array<Complex, 9> a{};
  std::size_t k = 0;
  for (const auto& z : v) a[k++] = z;
  return CMat3(a);
}

CMat3 anticommutator_half(const CMat3& a, const CMat3& b) { return (a * b + b * a) * Complex(0.5); }

}  // namespace

Operator3::Operator3(const CMat3& m) : m_(m) {
  const double scale = std::max(1.0, m.frobenius_norm());
  hermitian_ = hermiticity_residual(m) <= kCertifyTolerance * scale;
  unitary_ = unitarity_residual(m) <= kCertifyTolerance * scale;
}

SpinTriple spin_operators() {
  const double r = 1.0 / kSqrt2;
  const Complex i = kI;
  return {Operator3(mat({0, r, 0, r, 0, r, 0, r, 0})), Operator3(mat({0, -i * r, 0, i * r, 0, -i * r, 0, i * r, 0})),
          Operator3(mat({1, 0, 0, 0, 0, 0, 0, 0, -1}))};
}

SpinTriple spin_operators_real_basis() {
  const Complex i = kI;
  return {Operator3(mat({0, i, 0, -i, 0, 0, 0, 0, 0})), Operator3(mat({0, 0, 0, 0, 0, -i, 0, i, 0})),
          Operator3(mat({0, 0, -i, 0, 0, 0, i, 0, 0}))};
}

std::string_view name(QuadrupoleComponent c) noexcept {
  switch (c) {
    case QuadrupoleComponent::XY: return "xy";
    case QuadrupoleComponent::YZ: return "yz";
    case QuadrupoleComponent::ZX: return "zx";
    case QuadrupoleComponent::ZZ: return "zz";
    case QuadrupoleComponent::X2MinusY2: return "x2-y2";
  }
  return "";
}

std::optional<QuadrupoleComponent> parse_quadrupole_component(std::string_view s) noexcept {
  for (auto c : {QuadrupoleComponent::XY, QuadrupoleComponent::YZ, QuadrupoleComponent::ZX, QuadrupoleComponent::ZZ,
                 QuadrupoleComponent::X2MinusY2})
    if (name(c) == s) return c;
  return std::nullopt;
}

std::map<QuadrupoleComponent, Operator3> quadrupole_ops() {
  const auto s = spin_operators();
  const CMat3 &x = s.x.matrix(), &y = s.y.matrix(), &z = s.z.matrix();
  const CMat3 third = CMat3::identity() * Complex(2.0 / 3.0);
  const CMat3 qxx = anticommutator_half(x, x) - third;
  const CMat3 qyy = anticommutator_half(y, y) - third;
  return {
      {QuadrupoleComponent::XY, Operator3(anticommutator_half(x, y))},
      {QuadrupoleComponent::YZ, Operator3(anticommutator_half(y, z))},
      {QuadrupoleComponent::ZX, Operator3(anticommutator_half(z, x))},
      {QuadrupoleComponent::ZZ, Operator3(anticommutator_half(z, z) - third)},
      {QuadrupoleComponent::X2MinusY2, Operator3(qxx - qyy)},
  };
}

Operator3 quadrupole_op(QuadrupoleComponent c) { return quadrupole_ops().at(c); }

Operator3 quadrupolar_hamiltonian(const std::map<QuadrupoleComponent, double>& coeffs) {
  const auto q = quadrupole_ops();
  CMat3 h;
  bool any = false;
  for (const auto& [c, w] : coeffs) {
    if (w != 0.0) any = true;
    h += q.at(c).matrix() * Complex(w);
  }
  if (!any) throw Error(ErrorCode::AllZero, "no nonzero quadrupole coefficient");
  return Operator3(h);
}

Operator3 planar_quadrupole_hamiltonian(double theta) {
  return quadrupolar_hamiltonian(
      {{QuadrupoleComponent::X2MinusY2, std::cos(theta)}, {QuadrupoleComponent::XY, std::sin(theta)}});
}

EigenSystem quadrupolar_eigenbasis(const Operator3& h) {
  const CMat3 u = global_unitary().matrix();
  const CMat3 hr = u * h.matrix() * u.adjoint();
  double imag = 0.0;
  CMat3 re;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      imag = std::max(imag, std::abs(hr(r, c).imag()));
      re(r, c) = hr(r, c).real();
    }
  if (imag > 1e-12 * std::max(1.0, hr.frobenius_norm())) return eig_hermitian3(h.matrix());

  EigenSystem es = eig_hermitian3(re);
  for (auto& v : es.vectors) v = gauge_fix_quadrupolar(apply(u.adjoint(), QutritState::normalized(v))).amps();
  return es;
}

Operator3 global_unitary() {
  const double r = 1.0 / kSqrt2;
  const Complex i = kI;
  return Operator3(mat({i * r, 0, i * r, 0, 1, 0, r, 0, -r}));
}

std::array<PhasedProjector, 3> interpolation_projectors() {
  const double d_plus = (3.0 + kSqrt3) / 6.0, d_minus = (3.0 - kSqrt3) / 6.0;
  const Complex off = Complex(1.0, 1.0) / (2.0 * kSqrt3);
  return {
      PhasedProjector{mat({d_plus, 0, off, 0, 0, 0, std::conj(off), 0, d_minus}), 5.0 * kPi / 12.0},
      PhasedProjector{mat({d_minus, 0, -off, 0, 0, 0, -std::conj(off), 0, d_plus}), 13.0 * kPi / 12.0},
      PhasedProjector{mat({0, 0, 0, 0, 1, 0, 0, 0, 0}), 0.0},
  };
}

Operator3 interpolating_unitary(double alpha) {
  CMat3 u;
  for (const auto& p : interpolation_projectors()) u += p.projector * std::polar(1.0, p.phase * alpha);
  return Operator3(u);
}

AntiUnitary::AntiUnitary(const CMat3& m, bool conjugates_first) : m_(m), conjugates_first_(conjugates_first) {
  if (!m_.unitary()) throw Error(ErrorCode::NotUnitary, "anti-unitary needs a unitary matrix");
}

CMat3 AntiUnitary::effective() const noexcept { return conjugates_first_ ? m_.matrix() : m_.matrix().conj(); }

CVec3 AntiUnitary::apply(const CVec3& psi) const noexcept { return effective() * conj(psi); }

QutritState AntiUnitary::apply(const QutritState& psi) const { return QutritState::normalized(apply(psi.amps())); }

CMat3 AntiUnitary::compose(const AntiUnitary& other) const noexcept {
  // A (B psi*)* = A B* psi.
  return effective() * other.effective().conj();
}

AntiUnitary anti_unitary_theta() { return AntiUnitary(mat({0, 0, -1, 0, 1, 0, -1, 0, 0})); }

AntiUnitary anti_unitary_from_unitary(const CMat3& v) {
  if (unitarity_residual(v) > 1e-10) throw Error(ErrorCode::NotUnitary, "V is not unitary");
  return AntiUnitary(v * v.transpose());
}

AntiUnitary triplet_time_reversal() {
  // Qubit order (up, down); two-qubit index 2*q1 + q2.
  const double r = 1.0 / kSqrt2;
  const std::array<std::array<double, 4>, 3> triplet{{{1, 0, 0, 0}, {0, r, r, 0}, {0, 0, 0, 1}}};
  const std::array<std::array<double, 2>, 2> isy{{{0, 1}, {-1, 0}}};
  std::array<std::array<double, 4>, 4> t{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d) t[2 * a + b][2 * c + d] = isy[a][c] * isy[b][d];
  // K acts on real projector rows trivially, so the projected action is P T P^T psi*.
  CMat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = 0; q < 4; ++q) s += triplet[i][p] * t[p][q] * triplet[j][q];
      m(i, j) = s;
    }
  return AntiUnitary(m);
}

Operator3 transform_operator(const Operator3& u, const Operator3& a) {
  if (unitarity_residual(u.matrix()) > 1e-10) throw Error(ErrorCode::NotUnitary, "U is not unitary");
  return Operator3(u.matrix() * a.matrix() * u.matrix().adjoint());
}

}  // namespace qberry
