#pragma once

// Geometric phases of closed loops of qutrit states. Two independent routes:
// the discrete Bargmann product, and the Majorana-star decomposition into
// star solid angles (gamma0) plus a star-correlation term (gammaC).

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "qberry/majorana.hpp"
#include "qberry/operators.hpp"
#include "qberry/states.hpp"

namespace qberry {

inline constexpr double kOverlapEpsilon = 1e-6;
inline constexpr double kMaxRayStep = 0.1;
inline constexpr double kQuantTolerance = 1e-3;
inline constexpr double kConsistencyTolerance = 5e-3;
inline constexpr double kGapMin = 1e-6;
/// d12 = 1 - u1.u2 below which the star pair counts as collided.
inline constexpr double kCollisionThreshold = 1e-8;

/// Reduce to (-pi, pi].
double wrap_phase(double x) noexcept;

/// Closed loop of N >= 3 states; the state after the last one is the first.
class StateLoop {
 public:
  /// Throws Error(InvalidLoop) for N < 3 and Error(OrthogonalNeighbors) when a
  /// cyclic neighbour overlap is at most kOverlapEpsilon.
  explicit StateLoop(std::vector<QutritState> states);

  const std::vector<QutritState>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }
  const QutritState& operator[](std::size_t k) const noexcept { return states_[k]; }
  /// Largest Fubini-Study distance between cyclic neighbours.
  double max_ray_step() const noexcept;

 private:
  std::vector<QutritState> states_;
};

/// prod_k <psi_k|psi_{k+1 mod N}>. Throws Error(OrthogonalNeighbors).
Complex bargmann_invariant(const std::vector<QutritState>& states);

/// N equidistant states on the closed geodesic through the rays of a and b.
/// Throws Error(DegeneratePair) when the rays coincide or are orthogonal.
StateLoop geodesic_loop(const QutritState& a, const QutritState& b, std::size_t n);

/// -arg(bargmann_invariant) in (-pi, pi].
double discrete_geometric_phase(const StateLoop& loop);

enum class Closure { Identity, Swap };

struct StarTrajectory {
  /// Star sets along the (possibly refined) loop, closing sample included.
  std::vector<StarSet> sets;
  /// Continuity-matched star paths, each with sets.size() points.
  std::array<std::vector<RVec3>, 2> paths;
  /// False for samples inserted by refinement.
  std::vector<bool> original;
  Closure closure = Closure::Identity;
  /// Samples inserted by refinement.
  std::size_t inserted = 0;
  /// Steps whose pairing was decided by the tie rule.
  std::size_t ambiguous_steps = 0;
};

struct TrackOptions {
  /// Insert geodesic midpoints where stars move fast relative to the step or
  /// to their separation.
  bool refine = true;
  /// Largest accepted per-star displacement per step.
  double max_star_step = kPi / 4.0;
  std::size_t max_inserted = 200000;
};

/// Follows both stars around the loop by minimum total displacement.
/// Throws Error(StepTooCoarse) or Error(NotClosed).
StarTrajectory track_stars(const StateLoop& loop, const TrackOptions& options = {});

/// Signed solid angle enclosed by a closed path of unit vectors, reduced to
/// (-2 pi, 2 pi]. Positive for anticlockwise circulation about the enclosed
/// region's outward normal. Throws Error(NotClosed) or Error(StepTooCoarse).
double solid_angle(const std::vector<RVec3>& path);

/// beta12 = -(d/N^2) dN^2/dd with d = 1 - u1.u2 and N^2 the squared norm of the
/// symmetrized two-star state; N^2 = 4 - d, so beta12 = d/(4 - d).
double correlation_factor(const RVec3& u1, const RVec3& u2) noexcept;

enum class LoopClass { IndividualLoops, Exchange };

std::string_view name(LoopClass c) noexcept;

struct PhaseReport {
  /// Discrete phase from classify_and_verify; the star-route total
  /// wrap(gamma0 + gammaC) when produced by gamma_decomposition alone.
  double gamma = 0.0;
  double gamma0 = 0.0;
  double gammaC = 0.0;
  LoopClass classification = LoopClass::IndividualLoops;
  std::optional<double> quantized;
};

/// Throws Error(StarCollision) when a sample of the input loop (not one
/// inserted by refinement) has d12 < kCollisionThreshold.
PhaseReport gamma_decomposition(const StarTrajectory& traj);

/// Runs both routes, checks they agree within kConsistencyTolerance and
/// quantizes loops lying in the quadrupolar or the real subspace.
/// Throws Error(InvalidLoop) for neighbour steps above kMaxRayStep and
/// Error(InconsistentPhases).
PhaseReport classify_and_verify(const StateLoop& loop, const TrackOptions& options = {});

/// Discrete geometric phase of each eigenray (ascending eigenvalue order) of a
/// closed path of quadrupolar Hamiltonians. Throws Error(GapClosure).
std::array<double, 3> eigenfamily_topology(const std::vector<Operator3>& path, double gap_min = kGapMin);

/// Number of entries within kQuantTolerance of pi.
int count_pi(const std::array<double, 3>& phases) noexcept;

// ---------------------------------------------------------------------------
// Loop builders

/// exp(-i chi n.S) psi for chi = k * angle / N, k = 0..N-1.
StateLoop rotation_loop(const QutritState& psi, const RVec3& axis, double angle, std::size_t n);

/// Closed polygon of geodesic arcs through the vertex rays; each arc gets
/// samples_per_edge states. The last arc returns to the first vertex.
StateLoop piecewise_geodesic_loop(const std::vector<QutritState>& vertices, std::size_t samples_per_edge);

/// Stars start on the x axis and turn by pi about z, so they swap.
StateLoop exchange_loop(std::size_t n);
/// Stars at colatitudes pi/3 and 2pi/3 each circle the z axis once.
StateLoop individual_loop(std::size_t n);

/// Top eigenstates of U(alpha)^dagger (cos th Q_{x2-y2} + sin th Q_xy) U(alpha)
/// on the grid th_k = (k + 1/2) 2 pi / N.
StateLoop morph_eigenstate_loop(double alpha, std::size_t n);

}  // namespace qberry
