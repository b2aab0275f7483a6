#pragma once

// Evolution under pure spin Hamiltonians. In the real basis the Hamiltonian
// H' = -a S'x + b S'y + c S'z is purely imaginary, so real states stay real;
// U^dagger maps that picture back onto quadrupolar states.

#include <optional>
#include <vector>

#include "qberry/berry.hpp"
#include "qberry/operators.hpp"
#include "qberry/states.hpp"

namespace qberry {

/// Field coefficients (a, b, c). Throws Error(InvalidInput) unless omega > 0
/// and all coefficients are finite.
class SpinFieldReal {
 public:
  SpinFieldReal(double a, double b, double c);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double omega() const noexcept { return omega_; }
  double period() const noexcept { return 2.0 * kPi / omega_; }

 private:
  double a_, b_, c_, omega_;
};

/// Unit real vector (r, s, t).
class RealState3 {
 public:
  /// Throws Error(NotNormalized) unless | ||v|| - 1 | <= 1e-12.
  RealState3(double r, double s, double t);
  static RealState3 normalized(double r, double s, double t);

  double r() const noexcept { return v_[0]; }
  double s() const noexcept { return v_[1]; }
  double t() const noexcept { return v_[2]; }
  const RVec3& vec() const noexcept { return v_; }
  CVec3 amps() const noexcept { return {v_[0], v_[1], v_[2]}; }

 private:
  RVec3 v_;
};

/// -a S'x + b S'y + c S'z; eigenvalues 0, +-omega.
Operator3 real_basis_hamiltonian(const SpinFieldReal& field);
/// U^dagger H' U, the same Hamiltonian acting on quadrupolar amplitudes.
Operator3 quadrupolar_basis_hamiltonian(const SpinFieldReal& field);

/// Closed-form solution in the real basis.
RealState3 evolve_closed_form(const SpinFieldReal& field, const RealState3& psi0, double tau);
/// exp(-i H' tau) psi0 through the eigensolver; complex amplitudes kept.
CVec3 evolve_numeric_amplitudes(const SpinFieldReal& field, const RealState3& psi0, double tau);
/// Real part of evolve_numeric_amplitudes.
RealState3 evolve_numeric(const SpinFieldReal& field, const RealState3& psi0, double tau);

/// |a t0 + b r0 - c s0| <= tol: psi0 is orthogonal to the stationary
/// direction (b, -c, a) and is carried through -psi0 at half period.
bool geodesic_condition(const SpinFieldReal& field, const RealState3& psi0, double tol);

/// cos(w tau) psi0 + sin(w tau)/(a w) v with v fixed by the field and psi0.
/// Throws Error(ConditionViolated) (tolerance 1e-9) or Error(ZeroDenominator)
/// when a = 0.
RealState3 geodesic_trajectory(const SpinFieldReal& field, const RealState3& psi0, double tau);

struct AAPhase {
  double period = 0.0;       // cyclic time in ray space
  double total = 0.0;        // arg <psi(0)|psi(period)>
  double dynamical = 0.0;    // -integral <H> dt
  double geometric = 0.0;    // total - dynamical, in (-pi, pi]
  double discrete = 0.0;     // Bargmann phase of the sampled orbit
  double max_magnetization = 0.0;
  std::size_t samples = 0;
  std::optional<double> quantized;  // 0 or pi when geometric is within 1e-6
};

inline constexpr std::size_t kDefaultAASamples = 1024;

/// Aharonov-Anandan phase of the orbit of a quadrupolar state under the field.
/// The cyclic time is half a period when the ray already returns there and a
/// full period otherwise. Throws Error(NotQuadrupolar) for the input or any
/// sample, Error(NonCyclic), Error(InconsistentPhases).
AAPhase aa_phase(const SpinFieldReal& field, const QutritState& psi_q0, std::size_t samples = kDefaultAASamples);

struct PreservationReport {
  double max_violation = 0.0;  // max |<S>| over samples
  std::size_t worst_sample = 0;
  bool preserved = true;       // max_violation <= 1e-8
};

/// Samples exp(-i H t) psi for t = k horizon / steps, k = 0..steps.
/// Throws Error(NotQuadrupolar) when psi_q0 is not quadrupolar.
PreservationReport quadrupolar_preservation_check(const Operator3& hamiltonian, const QutritState& psi_q0,
                                                  double horizon, std::size_t steps);

struct CosineFit {
  double a = 0.0, b = 0.0;
  double max_residual = 0.0;
  double argmin_tau = 0.0;  // sample time of the smallest distance
  double min_value = 0.0;
};

/// Least-squares fit of ||psi(tau) + psi0||^2 to A + B cos(omega tau) over one
/// period (samples + 1 points, closed form evolution).
CosineFit antipode_distance_fit(const SpinFieldReal& field, const RealState3& psi0, std::size_t samples);

}  // namespace qberry
