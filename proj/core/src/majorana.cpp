#include "qberry/majorana.hpp"

#include <algorithm>
#include <cmath>

namespace qberry {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double wrap_2pi(double phi) noexcept {
  double p = std::fmod(phi, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  if (p >= 2.0 * kPi) p = 0.0;
  return p;
}

std::array<Complex, 4> symmetric_product(const std::array<Complex, 2>& s, const std::array<Complex, 2>& t) noexcept {
  return {2.0 * s[0] * t[0], s[0] * t[1] + t[0] * s[1], s[1] * t[0] + t[1] * s[0], 2.0 * s[1] * t[1]};
}

}  // namespace

Star Star::from_root(Complex x) noexcept {
  const double r = std::abs(x);
  if (r == 0.0) return {0.0, 0.0};
  return {2.0 * std::atan(r), wrap_2pi(std::arg(x))};
}

Star Star::from_vector(const RVec3& v) noexcept {
  const double rho = std::hypot(v[0], v[1]);
  const double theta = std::atan2(rho, v[2]);
  if (rho == 0.0) return {theta, 0.0};
  return {theta, wrap_2pi(std::atan2(v[1], v[0]))};
}

RVec3 Star::unit_vector() const noexcept {
  const double s = std::sin(theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

double great_circle_distance(const RVec3& u, const RVec3& v) noexcept { return std::atan2(norm(cross(u, v)), dot(u, v)); }

std::array<RVec3, 2> StarSet::unit_vectors() const noexcept {
  return {stars_[0].unit_vector(), stars_[1].unit_vector()};
}

double matching_distance(const StarSet& a, const StarSet& b) noexcept {
  const auto u = a.unit_vectors(), v = b.unit_vectors();
  const double direct = std::max(great_circle_distance(u[0], v[0]), great_circle_distance(u[1], v[1]));
  const double crossed = std::max(great_circle_distance(u[0], v[1]), great_circle_distance(u[1], v[0]));
  return std::min(direct, crossed);
}

bool approx_equal(const StarSet& a, const StarSet& b, double tol) noexcept { return matching_distance(a, b) <= tol; }

MajoranaPolynomial majorana_polynomial(const QutritState& psi) noexcept {
  return {psi[0] * kInvSqrt2, -psi[1], psi[2] * kInvSqrt2};
}

StarSet stars_from_state(const QutritState& psi) {
  const auto p = majorana_polynomial(psi);
  const RootSet roots = solve_quadratic(p.a0, p.a1, p.a2);
  std::array<Star, 2> s{Star::at_infinity(), Star::at_infinity()};
  for (std::size_t k = 0; k < roots.finite_roots.size(); ++k) s[k] = Star::from_root(roots.finite_roots[k]);
  return {s[0], s[1]};
}

std::array<Complex, 2> spinor(const Star& s) noexcept {
  return {std::cos(0.5 * s.theta), std::polar(std::sin(0.5 * s.theta), s.phi)};
}

QutritState state_from_stars(const StarSet& stars) {
  const auto a = spinor(stars.stars()[0]), b = spinor(stars.stars()[1]);
  const QutritState psi =
      QutritState::normalized({a[0] * b[0], (a[0] * b[1] + b[0] * a[1]) * kInvSqrt2, a[1] * b[1]});
  if (is_quadrupolar(psi)) return gauge_fix_quadrupolar(psi);
  for (std::size_t k = 0; k < 3; ++k) {
    const double m = std::abs(psi[k]);
    if (m > 1e-13) return QutritState::normalized(scaled(psi.amps(), std::conj(psi[k]) / m));
  }
  return psi;
}

bool are_antipodal(const StarSet& stars, double tol) noexcept {
  const auto u = stars.unit_vectors();
  return dot(u[0], u[1]) <= -1.0 + tol;
}

bool mirror_pair_check(const StarSet& stars, double tol) noexcept {
  // Either the stars reflect into each other or each lies on the x-z circle.
  const auto u = stars.unit_vectors();
  const StarSet reflected(Star::from_vector({u[0][0], -u[0][1], u[0][2]}),
                          Star::from_vector({u[1][0], -u[1][1], u[1][2]}));
  return matching_distance(reflected, stars) <= tol;
}

TwoQubitLift symmetrized_two_qubit(const StarSet& stars) noexcept {
  const auto a = spinor(stars.stars()[0]), b = spinor(stars.stars()[1]);
  TwoQubitLift out;
  out.amps = symmetric_product(a, b);
  double n = 0.0;
  for (const auto& z : out.amps) n += std::norm(z);
  n = std::sqrt(n);
  for (auto& z : out.amps) z /= n;

  // rho_A[i][j] = sum_k psi_{ik} psi_{jk}^*.
  const auto& s = out.amps;
  const double r00 = std::norm(s[0]) + std::norm(s[1]);
  const double r11 = std::norm(s[2]) + std::norm(s[3]);
  const Complex r01 = s[0] * std::conj(s[2]) + s[1] * std::conj(s[3]);
  out.purity = r00 * r00 + r11 * r11 + 2.0 * std::norm(r01);
  return out;
}

double symmetrized_norm_squared(const RVec3& u1, const RVec3& u2) noexcept {
  const auto v = symmetric_product(spinor(Star::from_vector(u1)), spinor(Star::from_vector(u2)));
  double n = 0.0;
  for (const auto& z : v) n += std::norm(z);
  return n;
}

}  // namespace qberry
