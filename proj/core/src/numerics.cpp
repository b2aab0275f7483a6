#include "qberry/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qberry/error.hpp"

namespace qberry {

Complex inner(const CVec3& a, const CVec3& b) noexcept {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

double norm(const CVec3& v) noexcept {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

CVec3 scaled(const CVec3& v, Complex s) noexcept { return {v[0] * s, v[1] * s, v[2] * s}; }

CVec3 conj(const CVec3& v) noexcept { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }

double max_abs_diff(const CVec3& a, const CVec3& b) noexcept {
  double m = 0.0;
  for (std::size_t k = 0; k < 3; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double dot(const RVec3& a, const RVec3& b) noexcept { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

RVec3 cross(const RVec3& a, const RVec3& b) noexcept {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const RVec3& v) noexcept { return std::sqrt(dot(v, v)); }

RVec3 normalized(const RVec3& v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidInput, "cannot normalize a zero vector");
  return {v[0] / n, v[1] / n, v[2] / n};
}

RVec3 operator+(const RVec3& a, const RVec3& b) noexcept { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
RVec3 operator-(const RVec3& a, const RVec3& b) noexcept { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
RVec3 operator*(double s, const RVec3& v) noexcept { return {s * v[0], s * v[1], s * v[2]}; }

// ---------------------------------------------------------------------------

CMat3 CMat3::identity() noexcept { return diagonal({1.0, 1.0, 1.0}); }

CMat3 CMat3::diagonal(const std::array<Complex, 3>& d) noexcept {
  CMat3 m;
  for (std::size_t k = 0; k < 3; ++k) m(k, k) = d[k];
  return m;
}

CMat3 CMat3::outer(const CVec3& a, const CVec3& b) noexcept {
  CMat3 m;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = a[r] * std::conj(b[c]);
  return m;
}

CMat3 CMat3::spectral(const std::array<Complex, 3>& d, const std::array<CVec3, 3>& v) noexcept {
  CMat3 m;
  for (std::size_t k = 0; k < 3; ++k) m += outer(v[k], v[k]) * d[k];
  return m;
}

CMat3 CMat3::adjoint() const noexcept {
  CMat3 m;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = std::conj((*this)(c, r));
  return m;
}

CMat3 CMat3::transpose() const noexcept {
  CMat3 m;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = (*this)(c, r);
  return m;
}

CMat3 CMat3::conj() const noexcept {
  CMat3 m;
  for (std::size_t k = 0; k < 9; ++k) m.a_[k] = std::conj(a_[k]);
  return m;
}

Complex CMat3::trace() const noexcept { return a_[0] + a_[4] + a_[8]; }

Complex CMat3::det() const noexcept {
  const auto& m = *this;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double CMat3::frobenius_norm() const noexcept {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

CMat3& CMat3::operator+=(const CMat3& o) noexcept {
  for (std::size_t k = 0; k < 9; ++k) a_[k] += o.a_[k];
  return *this;
}

CMat3& CMat3::operator-=(const CMat3& o) noexcept {
  for (std::size_t k = 0; k < 9; ++k) a_[k] -= o.a_[k];
  return *this;
}

CMat3& CMat3::operator*=(Complex s) noexcept {
  for (auto& z : a_) z *= s;
  return *this;
}

CMat3 operator*(const CMat3& a, const CMat3& b) noexcept {
  CMat3 m;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
  return m;
}

CVec3 operator*(const CMat3& a, const CVec3& v) noexcept {
  return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2], a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
          a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

double max_abs_diff(const CMat3& a, const CMat3& b) noexcept {
  double m = 0.0;
  for (std::size_t k = 0; k < 9; ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

double hermiticity_residual(const CMat3& a) noexcept { return (a - a.adjoint()).frobenius_norm(); }

double unitarity_residual(const CMat3& a) noexcept { return (a * a.adjoint() - CMat3::identity()).frobenius_norm(); }

CMat3 commutator(const CMat3& a, const CMat3& b) noexcept { return a * b - b * a; }

// ---------------------------------------------------------------------------

RootSet solve_quadratic(Complex a2, Complex a1, Complex a0) {
  const double scale = std::max({std::abs(a2), std::abs(a1), std::abs(a0)});
  if (!(scale > 1e-300)) throw Error(ErrorCode::AllCoefficientsZero, "quadratic has no nonzero coefficient");

  RootSet out;
  const double cutoff = kLeadingEpsilon * scale;
  if (std::abs(a2) < cutoff) {
    if (std::abs(a1) < cutoff) {
      out.roots_at_infinity = 2;
    } else {
      out.finite_roots.push_back(-a0 / a1);
      out.roots_at_infinity = 1;
    }
    return out;
  }

  // Work on the scaled polynomial so the discriminant cannot overflow.
  const Complex b2 = a2 / scale, b1 = a1 / scale, b0 = a0 / scale;
  Complex sq = std::sqrt(b1 * b1 - 4.0 * b2 * b0);
  if ((std::conj(b1) * sq).real() < 0.0) sq = -sq;
  const Complex q = -0.5 * (b1 + sq);
  if (q == Complex{}) {
    out.finite_roots = {Complex{}, Complex{}};
  } else {
    out.finite_roots = {q / b2, b0 / q};
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Bilinear (non-conjugating) cross product: c . a = c . b = 0 without conjugation,
// which is exactly the kernel condition for rows of a singular matrix.
CVec3 bilinear_cross(const CVec3& a, const CVec3& b) noexcept {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

CVec3 unit(const CVec3& v) noexcept { return scaled(v, 1.0 / norm(v)); }

// Largest-magnitude component made real and positive.
CVec3 canonical_phase(const CVec3& v) noexcept {
  std::size_t k = 0;
  for (std::size_t j = 1; j < 3; ++j)
    if (std::abs(v[j]) > std::abs(v[k]) * (1.0 + 1e-12)) k = j;
  const double m = std::abs(v[k]);
  if (m == 0.0) return v;
  return scaled(v, std::conj(v[k]) / m);
}

CVec3 kernel_vector(const CMat3& m) noexcept {
  const CVec3 r0{m(0, 0), m(0, 1), m(0, 2)};
  const CVec3 r1{m(1, 0), m(1, 1), m(1, 2)};
  const CVec3 r2{m(2, 0), m(2, 1), m(2, 2)};
  const std::array<CVec3, 3> candidates{bilinear_cross(r0, r1), bilinear_cross(r0, r2), bilinear_cross(r1, r2)};
  std::size_t best = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (norm(candidates[k]) > norm(candidates[best])) best = k;
  return unit(candidates[best]);
}

// Orthonormal pair spanning the complement of unit vector v; real when v is real.
std::array<CVec3, 2> complement(const CVec3& v) noexcept {
  std::size_t k = 0;
  for (std::size_t j = 1; j < 3; ++j)
    if (std::abs(v[j]) < std::abs(v[k])) k = j;
  CVec3 e{};
  e[k] = 1.0;
  const Complex proj = inner(v, e);
  CVec3 w1{e[0] - proj * v[0], e[1] - proj * v[1], e[2] - proj * v[2]};
  w1 = unit(w1);
  const CVec3 w2 = unit(conj(bilinear_cross(v, w1)));
  return {w1, w2};
}

}  // namespace

EigenSystem eig_hermitian3(const CMat3& h, double tol_herm) {
  const double hnorm = h.frobenius_norm();
  const double residual = hermiticity_residual(h);
  if (residual > tol_herm * std::max(1.0, hnorm))
    throw Error(ErrorCode::NotHermitian, "||H - H^dagger|| = " + std::to_string(residual));

  EigenSystem out;
  double scale = 0.0;
  for (const auto& z : h.entries()) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) {
    out.vectors = {CVec3{1.0, 0.0, 0.0}, CVec3{0.0, 1.0, 0.0}, CVec3{0.0, 0.0, 1.0}};
    return out;
  }

  CMat3 a = (h + h.adjoint()) * Complex(0.5 / scale);
  for (std::size_t k = 0; k < 3; ++k) a(k, k) = a(k, k).real();

  const double q = a.trace().real() / 3.0;
  const double off = std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2));
  const double d0 = a(0, 0).real() - q, d1 = a(1, 1).real() - q, d2 = a(2, 2).real() - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off;
  if (p2 == 0.0) {
    out.values = {q * scale, q * scale, q * scale};
    out.vectors = {CVec3{1.0, 0.0, 0.0}, CVec3{0.0, 1.0, 0.0}, CVec3{0.0, 0.0, 1.0}};
    return out;
  }

  const double p = std::sqrt(p2 / 6.0);
  const CMat3 b = (a - CMat3::identity() * Complex(q)) * Complex(1.0 / p);
  const double r = std::clamp(0.5 * b.det().real(), -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  const double lo = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  const double mid = 3.0 * q - hi - lo;

  // Deflate on whichever end of the spectrum is better separated; the remaining
  // pair is resolved exactly by a 2x2 Rayleigh-Ritz step, so near-degenerate
  // pairs never go through an ill-conditioned kernel computation.
  const double isolated = (hi - mid >= mid - lo) ? hi : lo;
  const CVec3 v = kernel_vector(a - CMat3::identity() * Complex(isolated));
  const auto w = complement(v);

  const Complex alpha = inner(w[0], a * w[0]);
  const Complex beta = inner(w[1], a * w[1]);
  const Complex gamma = inner(w[0], a * w[1]);
  const double dd = 0.5 * (alpha.real() - beta.real());
  const double rr = std::hypot(dd, std::abs(gamma));
  std::array<Complex, 2> x{1.0, 0.0};
  if (rr > 0.0) {
    if (dd >= 0.0)
      x = {dd + rr, std::conj(gamma)};
    else
      x = {gamma, rr - dd};
    const double xn = std::sqrt(std::norm(x[0]) + std::norm(x[1]));
    x = {x[0] / xn, x[1] / xn};
  }
  const std::array<Complex, 2> y{-std::conj(x[1]), std::conj(x[0])};
  const CVec3 u_plus{x[0] * w[0][0] + x[1] * w[1][0], x[0] * w[0][1] + x[1] * w[1][1],
                     x[0] * w[0][2] + x[1] * w[1][2]};
  const CVec3 u_minus{y[0] * w[0][0] + y[1] * w[1][0], y[0] * w[0][1] + y[1] * w[1][1],
                      y[0] * w[0][2] + y[1] * w[1][2]};

  std::array<CVec3, 3> vecs{canonical_phase(v), canonical_phase(unit(u_plus)), canonical_phase(unit(u_minus))};
  std::array<double, 3> vals{};
  for (std::size_t k = 0; k < 3; ++k) vals[k] = inner(vecs[k], a * vecs[k]).real();

  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return vals[i] < vals[j]; });
  for (std::size_t k = 0; k < 3; ++k) {
    out.values[k] = vals[order[k]] * scale;
    out.vectors[k] = vecs[order[k]];
  }
  return out;
}

CMat3 propagator(const CMat3& h, double t) {
  const EigenSystem es = eig_hermitian3(h);
  std::array<Complex, 3> phases{};
  for (std::size_t k = 0; k < 3; ++k) phases[k] = std::polar(1.0, -es.values[k] * t);
  return CMat3::spectral(phases, es.vectors);
}

}  // namespace qberry
