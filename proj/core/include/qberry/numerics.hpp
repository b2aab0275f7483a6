#pragma once

// Fixed-size complex linear algebra for a three-level system, plus the
// kernels the rest of the library is built on: a cancellation-free quadratic
// solver, a closed-form 3x3 Hermitian eigensolver and the unitary propagator.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace qberry {

using Complex = std::complex<double>;
using CVec3 = std::array<Complex, 3>;
using RVec3 = std::array<double, 3>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// Vector helpers

/// Hermitian inner product <a|b> (conjugate-linear in the first argument).
Complex inner(const CVec3& a, const CVec3& b) noexcept;
double norm(const CVec3& v) noexcept;
CVec3 scaled(const CVec3& v, Complex s) noexcept;
CVec3 conj(const CVec3& v) noexcept;
double max_abs_diff(const CVec3& a, const CVec3& b) noexcept;

double dot(const RVec3& a, const RVec3& b) noexcept;
RVec3 cross(const RVec3& a, const RVec3& b) noexcept;
double norm(const RVec3& v) noexcept;
RVec3 normalized(const RVec3& v);
RVec3 operator+(const RVec3& a, const RVec3& b) noexcept;
RVec3 operator-(const RVec3& a, const RVec3& b) noexcept;
RVec3 operator*(double s, const RVec3& v) noexcept;

// ---------------------------------------------------------------------------
// 3x3 complex matrix, row-major.

class CMat3 {
 public:
  constexpr CMat3() = default;
  explicit constexpr CMat3(const std::array<Complex, 9>& entries) : a_(entries) {}

  static CMat3 identity() noexcept;
  static CMat3 diagonal(const std::array<Complex, 3>& d) noexcept;
  /// Sum over k of d_k |v_k><v_k|.
  static CMat3 spectral(const std::array<Complex, 3>& d, const std::array<CVec3, 3>& v) noexcept;
  static CMat3 outer(const CVec3& a, const CVec3& b) noexcept;  // |a><b|

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return a_[3 * r + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return a_[3 * r + c]; }
  const std::array<Complex, 9>& entries() const noexcept { return a_; }

  CMat3 adjoint() const noexcept;
  CMat3 transpose() const noexcept;
  CMat3 conj() const noexcept;
  Complex trace() const noexcept;
  Complex det() const noexcept;
  double frobenius_norm() const noexcept;

  CMat3& operator+=(const CMat3& o) noexcept;
  CMat3& operator-=(const CMat3& o) noexcept;
  CMat3& operator*=(Complex s) noexcept;

  friend CMat3 operator+(CMat3 a, const CMat3& b) noexcept { return a += b; }
  friend CMat3 operator-(CMat3 a, const CMat3& b) noexcept { return a -= b; }
  friend CMat3 operator*(CMat3 a, Complex s) noexcept { return a *= s; }
  friend CMat3 operator*(Complex s, CMat3 a) noexcept { return a *= s; }
  friend CMat3 operator*(const CMat3& a, const CMat3& b) noexcept;
  friend CVec3 operator*(const CMat3& a, const CVec3& v) noexcept;

 private:
  std::array<Complex, 9> a_{};
};

double max_abs_diff(const CMat3& a, const CMat3& b) noexcept;
/// Frobenius norm of A - A^dagger.
double hermiticity_residual(const CMat3& a) noexcept;
/// Frobenius norm of A A^dagger - I.
double unitarity_residual(const CMat3& a) noexcept;
CMat3 commutator(const CMat3& a, const CMat3& b) noexcept;

// ---------------------------------------------------------------------------
// Quadratic roots

/// Roots of a2 x^2 + a1 x + a0. Roots lost to a vanishing leading
/// coefficient are counted as roots at infinity.
struct RootSet {
  std::vector<Complex> finite_roots;
  int roots_at_infinity = 0;
};

/// Relative size below which the leading coefficient counts as zero.
inline constexpr double kLeadingEpsilon = 1e-13;

RootSet solve_quadratic(Complex a2, Complex a1, Complex a0);

// ---------------------------------------------------------------------------
// Hermitian eigenproblem

struct EigenSystem {
  std::array<double, 3> values{};   // ascending
  std::array<CVec3, 3> vectors{};   // orthonormal, vectors[k] belongs to values[k]
};

/// Default Hermiticity tolerance, relative to max(1, ||H||_F).
inline constexpr double kHermitianTolerance = 1e-10;

/// Closed-form eigendecomposition of a 3x3 Hermitian matrix. Degenerate
/// eigenspaces come back as some orthonormal basis; real symmetric input
/// yields real eigenvectors. Throws Error(NotHermitian).
EigenSystem eig_hermitian3(const CMat3& h, double tol_herm = kHermitianTolerance);

/// exp(-i H t) for Hermitian H. Throws Error(NotHermitian).
CMat3 propagator(const CMat3& h, double t);

}  // namespace qberry
