#pragma once

// Pure qutrit states in the S_z basis, ordered (c_{+1}, c_0, c_{-1}).

#include "qberry/numerics.hpp"

namespace qberry {

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kQuadrupolarTolerance = 1e-9;

/// Normalized three-level state. Construction validates the norm.
class QutritState {
 public:
  /// Throws Error(NotNormalized) unless | ||amps|| - 1 | <= kNormTolerance.
  explicit QutritState(const CVec3& amps);
  /// Rescales v to unit norm. Throws Error(AllZero) for the zero vector.
  static QutritState normalized(const CVec3& v);

  const CVec3& amps() const noexcept { return amps_; }
  const Complex& operator[](std::size_t k) const noexcept { return amps_[k]; }
  QutritState with_phase(double phase) const;

 private:
  CVec3 amps_;
};

/// M psi, renormalized (M is expected to be unitary up to rounding).
QutritState apply(const CMat3& m, const QutritState& psi);

struct QuadrupolarAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

/// (alpha, beta, -alpha*) with beta real and non-negative.
struct QuadrupolarForm {
  Complex alpha;
  double beta = 0.0;
};

/// (<Sx>, <Sy>, <Sz>).
RVec3 spin_expectation(const QutritState& psi) noexcept;
bool is_quadrupolar(const QutritState& psi, double tol = kQuadrupolarTolerance) noexcept;

/// (e^{i phi} sin(theta/2)/sqrt2, cos(theta/2), -e^{-i phi} sin(theta/2)/sqrt2).
/// Throws Error(OutOfRange).
QutritState quadrupolar_from_angles(QuadrupolarAngles angles);

/// Quadrupolar state whose Majorana stars sit at +n and -n. Linear in n, so
/// the state for -n is the negative of the state for n. Throws Error(AllZero).
QutritState quadrupolar_from_axis(const RVec3& n);

/// Removes the global phase so that c_0 is real and non-negative. When
/// |c_0| < 1e-13 the state is (alpha, 0, -alpha*) up to one of two phases
/// and the one with arg(alpha) in [0, pi) is chosen. The result is snapped
/// onto the exact (alpha, beta, -alpha*) form. Throws Error(NotQuadrupolar).
QutritState gauge_fix_quadrupolar(const QutritState& psi);
QuadrupolarForm quadrupolar_form(const QutritState& psi);
QutritState from_form(const QuadrupolarForm& form);

/// <psi1|psi2>.
Complex overlap(const QutritState& psi1, const QutritState& psi2) noexcept;
/// Fubini-Study distance arccos |<psi1|psi2>|, in [0, pi/2].
double ray_distance(const QutritState& psi1, const QutritState& psi2) noexcept;
/// min over chi of || psi1 - e^{i chi} psi2 || <= tol.
bool ray_equal(const QutritState& psi1, const QutritState& psi2, double tol) noexcept;
/// True when some global phase makes every amplitude real.
bool is_real_ray(const QutritState& psi, double tol = kQuadrupolarTolerance) noexcept;

/// Point at fraction s of the shortest geodesic from the ray of a to the ray of
/// b. b is phase-aligned with a first, so s = 0 gives a and s = 1 gives b up to
/// that phase. Throws Error(OrthogonalNeighbors) for orthogonal rays.
QutritState geodesic_point(const QutritState& a, const QutritState& b, double s);

}  // namespace qberry
