#pragma once

// Fixed operators of the spin-1 problem: spin matrices in the S_z and real
// bases, quadrupole tensor components, the quadrupolar-to-real unitary and its
// interpolation, and the anti-unitary symmetries.

#include <array>
#include <map>
#include <optional>
#include <string_view>

#include "qberry/numerics.hpp"
#include "qberry/states.hpp"

namespace qberry {

inline constexpr double kCertifyTolerance = 1e-12;

/// 3x3 operator with Hermitian/unitary flags certified at construction
/// (residual <= 1e-12 * max(1, ||A||)).
class Operator3 {
 public:
  Operator3() : Operator3(CMat3{}) {}
  explicit Operator3(const CMat3& m);

  const CMat3& matrix() const noexcept { return m_; }
  bool hermitian() const noexcept { return hermitian_; }
  bool unitary() const noexcept { return unitary_; }

 private:
  CMat3 m_;
  bool hermitian_ = false;
  bool unitary_ = false;
};

struct SpinTriple {
  Operator3 x, y, z;
};

SpinTriple spin_operators();
/// The real-basis spin matrices used by the real-basis field Hamiltonian
/// H' = -a S'x + b S'y + c S'z. U Sx U^dagger = S'x, while
/// U S_{y,z} U^dagger = -S'_{y,z}.
SpinTriple spin_operators_real_basis();

enum class QuadrupoleComponent { XY, YZ, ZX, ZZ, X2MinusY2 };

std::string_view name(QuadrupoleComponent c) noexcept;
std::optional<QuadrupoleComponent> parse_quadrupole_component(std::string_view s) noexcept;

/// Q_ij = (S_i S_j + S_j S_i)/2 - (2/3) delta_ij, and Q_{x2-y2} = Q_xx - Q_yy.
std::map<QuadrupoleComponent, Operator3> quadrupole_ops();
Operator3 quadrupole_op(QuadrupoleComponent c);

/// sum_c coeffs[c] Q_c. Throws Error(AllZero) if every coefficient is zero.
Operator3 quadrupolar_hamiltonian(const std::map<QuadrupoleComponent, double>& coeffs);

/// cos(theta) Q_{x2-y2} + sin(theta) Q_xy.
Operator3 planar_quadrupole_hamiltonian(double theta);

/// Eigenbasis of a quadrupolar Hamiltonian with every eigenvector quadrupolar
/// and gauge fixed, also inside degenerate eigenspaces. Falls back to the
/// plain eigensolver when h does not become real in the real basis.
EigenSystem quadrupolar_eigenbasis(const Operator3& h);

/// Maps quadrupolar states to real ones.
Operator3 global_unitary();

struct PhasedProjector {
  CMat3 projector;
  double phase = 0.0;  // eigenphase of global_unitary(), in [0, 2 pi)
};

/// Spectral resolution of global_unitary().
std::array<PhasedProjector, 3> interpolation_projectors();

/// sum_k exp(i theta_k alpha) P_k; identity at alpha = 0 and global_unitary()
/// at alpha = 1.
Operator3 interpolating_unitary(double alpha);

/// psi -> M psi* (conjugates_first) or psi -> (M psi)*.
class AntiUnitary {
 public:
  explicit AntiUnitary(const CMat3& m, bool conjugates_first = true);

  const Operator3& matrix() const noexcept { return m_; }
  bool conjugates_first() const noexcept { return conjugates_first_; }
  /// The matrix N with action psi -> N psi*.
  CMat3 effective() const noexcept;

  CVec3 apply(const CVec3& psi) const noexcept;
  QutritState apply(const QutritState& psi) const;
  /// The linear operator this(other(psi)).
  CMat3 compose(const AntiUnitary& other) const noexcept;
  CMat3 squared() const noexcept { return compose(*this); }

 private:
  Operator3 m_;
  bool conjugates_first_;
};

/// K (U_q^* U_q^dagger) with U_q = global_unitary()^dagger; leaves every
/// quadrupolar state invariant.
AntiUnitary anti_unitary_theta();
/// Anti-unitary psi -> V V^T psi*, which fixes V psi_R for every real psi_R.
/// Throws Error(NotUnitary).
AntiUnitary anti_unitary_from_unitary(const CMat3& v);
/// Two-spin-1/2 time reversal K (i sigma_y x i sigma_y) projected onto the
/// triplet sector.
AntiUnitary triplet_time_reversal();

/// U A U^dagger. Throws Error(NotUnitary).
Operator3 transform_operator(const Operator3& u, const Operator3& a);

}  // namespace qberry
