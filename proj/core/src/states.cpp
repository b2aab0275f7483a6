#include "qberry/states.hpp"

#include <algorithm>
#include <cmath>

#include "qberry/error.hpp"

namespace qberry {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

QutritState::QutritState(const CVec3& amps) : amps_(amps) {
  const double n = norm(amps);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance)
    throw Error(ErrorCode::NotNormalized, "state norm is " + std::to_string(n));
}

QutritState QutritState::normalized(const CVec3& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::AllZero, "cannot normalize a zero or non-finite vector");
  return QutritState(scaled(v, 1.0 / n));
}

QutritState QutritState::with_phase(double phase) const { return QutritState(scaled(amps_, std::polar(1.0, phase))); }

QutritState apply(const CMat3& m, const QutritState& psi) { return QutritState::normalized(m * psi.amps()); }

RVec3 spin_expectation(const QutritState& psi) noexcept {
  const auto& c = psi.amps();
  const Complex s_plus = std::sqrt(2.0) * (std::conj(c[0]) * c[1] + std::conj(c[1]) * c[2]);
  return {s_plus.real(), s_plus.imag(), std::norm(c[0]) - std::norm(c[2])};
}

bool is_quadrupolar(const QutritState& psi, double tol) noexcept { return norm(spin_expectation(psi)) <= tol; }

QutritState quadrupolar_from_angles(QuadrupolarAngles angles) {
  const double th = angles.theta, ph = angles.phi;
  if (!(th >= 0.0 && th <= kPi) || !(ph >= 0.0 && ph < 2.0 * kPi))
    throw Error(ErrorCode::OutOfRange, "angles outside [0, pi] x [0, 2 pi)");
  const double s = std::sin(0.5 * th) * kInvSqrt2;
  return QutritState::normalized({std::polar(s, ph), std::cos(0.5 * th), -std::polar(s, -ph)});
}

QutritState quadrupolar_from_axis(const RVec3& n) {
  const Complex m{n[0], -n[1]};
  return QutritState::normalized({-m * kInvSqrt2, n[2], std::conj(m) * kInvSqrt2});
}

QutritState gauge_fix_quadrupolar(const QutritState& psi) {
  if (!is_quadrupolar(psi))
    throw Error(ErrorCode::NotQuadrupolar, "|<S>| = " + std::to_string(norm(spin_expectation(psi))));
  const auto& c = psi.amps();
  Complex mu;
  if (std::abs(c[1]) >= 1e-13) {
    mu = std::conj(c[1]) / std::abs(c[1]);
  } else {
    // mu c_- = -(mu c_+)^* fixes mu^2 up to the sign of mu.
    const Complex mu2 = -std::conj(c[0]) / c[2];
    mu = std::sqrt(mu2 / std::abs(mu2));
    const double arg = std::arg(mu * c[0]);
    if (!(arg >= 0.0 && arg < kPi)) mu = -mu;
  }
  const Complex plus = mu * c[0], minus = mu * c[2];
  const Complex alpha = 0.5 * (plus - std::conj(minus));
  return QutritState::normalized({alpha, std::abs(c[1]), -std::conj(alpha)});
}

QuadrupolarForm quadrupolar_form(const QutritState& psi) {
  const QutritState g = gauge_fix_quadrupolar(psi);
  return {g[0], g[1].real()};
}

QutritState from_form(const QuadrupolarForm& form) {
  return QutritState::normalized({form.alpha, form.beta, -std::conj(form.alpha)});
}

Complex overlap(const QutritState& psi1, const QutritState& psi2) noexcept { return inner(psi1.amps(), psi2.amps()); }

namespace {

// min over chi of ||psi1 - e^{i chi} psi2||, evaluated on the aligned
// representatives; sqrt(2 - 2|<a|b>|) loses all digits below ~1e-8.
double aligned_chord(const QutritState& psi1, const QutritState& psi2) noexcept {
  const Complex ov = overlap(psi1, psi2);
  const double mag = std::abs(ov);
  const Complex w = mag == 0.0 ? Complex(1.0) : std::conj(ov) / mag;
  double sq = 0.0;
  for (std::size_t k = 0; k < 3; ++k) sq += std::norm(w * psi2[k] - psi1[k]);
  return std::sqrt(sq);
}

}  // namespace

double ray_distance(const QutritState& psi1, const QutritState& psi2) noexcept {
  return 2.0 * std::asin(std::min(1.0, 0.5 * aligned_chord(psi1, psi2)));
}

bool ray_equal(const QutritState& psi1, const QutritState& psi2, double tol) noexcept {
  return aligned_chord(psi1, psi2) <= tol;
}

bool is_real_ray(const QutritState& psi, double tol) noexcept {
  const auto& c = psi.amps();
  return std::abs(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]) >= 1.0 - tol;
}

QutritState geodesic_point(const QutritState& a, const QutritState& b, double s) {
  const Complex ov = overlap(a, b);
  const double mag = std::abs(ov);
  if (mag < 1e-15) throw Error(ErrorCode::OrthogonalNeighbors, "geodesic between orthogonal rays is not unique");
  const CVec3 bb = scaled(b.amps(), std::conj(ov) / mag);
  // Unit vector along the geodesic, orthogonal to a.
  CVec3 perp{};
  for (std::size_t k = 0; k < 3; ++k) perp[k] = bb[k] - mag * a[k];
  const double pn = norm(perp);
  const double total = std::atan2(pn, mag);
  if (pn < 1e-300) return a;
  perp = scaled(perp, 1.0 / pn);
  const double ca = std::cos(s * total), sa = std::sin(s * total);
  CVec3 out{};
  for (std::size_t k = 0; k < 3; ++k) out[k] = ca * a[k] + sa * perp[k];
  return QutritState::normalized(out);
}

}  // namespace qberry
