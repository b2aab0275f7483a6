#pragma once

// Majorana stellar representation of a spin-1 state: two points on the unit
// sphere, the roots of a quadratic built from the amplitudes.

#include <array>

#include "qberry/numerics.hpp"
#include "qberry/states.hpp"

namespace qberry {

struct Star {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi); 0 at the poles

  /// Root x = tan(theta/2) e^{i phi}.
  static Star from_root(Complex x) noexcept;
  static Star at_infinity() noexcept { return {kPi, 0.0}; }
  /// Direction of a nonzero vector.
  static Star from_vector(const RVec3& v) noexcept;
  RVec3 unit_vector() const noexcept;
};

double great_circle_distance(const RVec3& u, const RVec3& v) noexcept;

/// Unordered pair of stars.
class StarSet {
 public:
  StarSet(const Star& a, const Star& b) noexcept : stars_{a, b} {}

  const std::array<Star, 2>& stars() const noexcept { return stars_; }
  std::array<RVec3, 2> unit_vectors() const noexcept;

 private:
  std::array<Star, 2> stars_;
};

/// Largest great-circle displacement under the better of the two pairings.
double matching_distance(const StarSet& a, const StarSet& b) noexcept;
bool approx_equal(const StarSet& a, const StarSet& b, double tol) noexcept;

/// a0 x^2 + a1 x + a2 = (c+/sqrt2) x^2 - c0 x + c-/sqrt2.
struct MajoranaPolynomial {
  Complex a0, a1, a2;
};

MajoranaPolynomial majorana_polynomial(const QutritState& psi) noexcept;
/// Roots at infinity become the south pole.
StarSet stars_from_state(const QutritState& psi);
/// Symmetrized product of the two spinors. Gauge: gauge_fix_quadrupolar for
/// quadrupolar results, otherwise the first nonzero amplitude real positive.
QutritState state_from_stars(const StarSet& stars);

/// Spinor (cos(theta/2), e^{i phi} sin(theta/2)) pointing along u.
std::array<Complex, 2> spinor(const Star& s) noexcept;

/// u1 . u2 <= -1 + tol.
bool are_antipodal(const StarSet& stars, double tol) noexcept;
/// The star set is unchanged by reflection through the x-z plane: the stars
/// mirror each other, or both lie on the x-z circle.
bool mirror_pair_check(const StarSet& stars, double tol) noexcept;

struct TwoQubitLift {
  std::array<Complex, 4> amps;  // |uu>, |ud>, |du>, |dd>
  double purity = 1.0;          // tr(rho_A^2) of one qubit
};

TwoQubitLift symmetrized_two_qubit(const StarSet& stars) noexcept;

/// || |u1 u2> + |u2 u1> ||^2 evaluated from the spinors.
double symmetrized_norm_squared(const RVec3& u1, const RVec3& u2) noexcept;

}  // namespace qberry
