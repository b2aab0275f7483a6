#include "qberry/berry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qberry/error.hpp"

namespace qberry {

namespace {

struct Sample {
  QutritState psi;
  std::array<RVec3, 2> u;
};

Sample make_sample(const QutritState& psi) { return {psi, stars_from_state(psi).unit_vectors()}; }

double collision_measure(const RVec3& a, const RVec3& b) noexcept {
  // 1 - a.b written without cancellation.
  const RVec3 d = a - b;
  return 0.5 * dot(d, d);
}

// Smallest ray step that refinement still splits.
constexpr double kRefineFloor = 1e-10;
// Star separations below this are dominated by rounding in the roots of a
// near-double root (error ~ sqrt(machine epsilon)).
constexpr double kSeparationNoise = 1e-6;

struct Pairing {
  bool swap = false;
  bool ambiguous = false;
  double displacement = 0.0;
};

// Minimum-displacement pairing of (p1, p2) with (a, b). When both pairings cost
// about the same the stars are passing through a near-collision; the tie is
// broken by requiring the separation vector to turn anticlockwise about the
// pair's mean direction (sep is the current separation p1 - p2, or the last
// nonzero one).
Pairing choose_pairing(const RVec3& p1, const RVec3& p2, const RVec3& sep, const RVec3& a, const RVec3& b) noexcept {
  const double d1a = great_circle_distance(p1, a), d2b = great_circle_distance(p2, b);
  const double d1b = great_circle_distance(p1, b), d2a = great_circle_distance(p2, a);
  const double direct = d1a + d2b, crossed = d1b + d2a;
  const double hi = std::max(direct, crossed);
  Pairing out;
  out.ambiguous = hi > 1e-15 && std::abs(direct - crossed) <= 0.05 * hi;
  if (out.ambiguous)
    out.swap = dot(cross(sep, a - b), p1 + p2) < 0.0;
  else
    out.swap = crossed < direct;
  out.displacement = out.swap ? std::max(d1b, d2a) : std::max(d1a, d2b);
  return out;
}

RVec3 unit_midpoint(const RVec3& a, const RVec3& b) {
  const RVec3 s = a + b;
  const double n = norm(s);
  if (n < 1e-300) return a;
  return (1.0 / n) * s;
}

}  // namespace

double wrap_phase(double x) noexcept {
  double y = std::fmod(x, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  if (y > kPi) y -= 2.0 * kPi;
  return y == 0.0 ? 0.0 : y;
}

// ---------------------------------------------------------------------------

StateLoop::StateLoop(std::vector<QutritState> states) : states_(std::move(states)) {
  const std::size_t n = states_.size();
  if (n < 3) throw Error(ErrorCode::InvalidLoop, "a loop needs at least 3 states, got " + std::to_string(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double m = std::abs(overlap(states_[k], states_[(k + 1) % n]));
    if (m <= kOverlapEpsilon)
      throw Error(ErrorCode::OrthogonalNeighbors,
                  "states " + std::to_string(k) + " and " + std::to_string((k + 1) % n) + " are orthogonal");
  }
}

double StateLoop::max_ray_step() const noexcept {
  double m = 0.0;
  for (std::size_t k = 0; k < states_.size(); ++k)
    m = std::max(m, ray_distance(states_[k], states_[(k + 1) % states_.size()]));
  return m;
}

Complex bargmann_invariant(const std::vector<QutritState>& states) {
  Complex b{1.0, 0.0};
  const std::size_t n = states.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex ov = overlap(states[k], states[(k + 1) % n]);
    if (std::abs(ov) <= 1e-300)
      throw Error(ErrorCode::OrthogonalNeighbors, "zero overlap after state " + std::to_string(k));
    b *= ov;
  }
  return b;
}

StateLoop geodesic_loop(const QutritState& a, const QutritState& b, std::size_t n) {
  const Complex ov = overlap(a, b);
  const double mag = std::abs(ov);
  if (mag < 1e-12 || mag > 1.0 - 1e-12)
    throw Error(ErrorCode::DegeneratePair, "|<a|b>| = " + std::to_string(mag) + " does not fix a geodesic");
  if (n < 3) throw Error(ErrorCode::InvalidLoop, "a loop needs at least 3 states");
  // Orthonormal pair spanning the geodesic: a and the normalized part of b
  // orthogonal to a, phase-aligned so the combination stays real for real input.
  const CVec3 bb = scaled(b.amps(), std::conj(ov) / mag);
  CVec3 perp{};
  for (std::size_t k = 0; k < 3; ++k) perp[k] = bb[k] - mag * a[k];
  perp = scaled(perp, 1.0 / norm(perp));

  std::vector<QutritState> states;
  states.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = kPi * static_cast<double>(j) / static_cast<double>(n);
    CVec3 v{};
    for (std::size_t k = 0; k < 3; ++k) v[k] = std::cos(s) * a[k] + std::sin(s) * perp[k];
    states.push_back(QutritState::normalized(v));
  }
  return StateLoop(std::move(states));
}

double discrete_geometric_phase(const StateLoop& loop) {
  return wrap_phase(-std::arg(bargmann_invariant(loop.states())));
}

// ---------------------------------------------------------------------------

StarTrajectory track_stars(const StateLoop& loop, const TrackOptions& options) {
  const std::size_t n = loop.size();
  StarTrajectory traj;

  Sample current = make_sample(loop[0]);
  RVec3 p1 = current.u[0], p2 = current.u[1];
  // Separation direction used by the tie rule; kept from the last sample at
  // which the stars were apart, so an exact collision sample cannot erase it.
  RVec3 last_sep = p1 - p2;
  auto record = [&](const RVec3& a, const RVec3& b, bool original) {
    traj.paths[0].push_back(a);
    traj.paths[1].push_back(b);
    traj.sets.emplace_back(Star::from_vector(a), Star::from_vector(b));
    traj.original.push_back(original);
    if (norm(a - b) > kSeparationNoise) last_sep = a - b;
  };
  record(p1, p2, true);

  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Sample> pending{make_sample(loop[k % n])};
    while (!pending.empty()) {
      const Sample& target = pending.back();
      const Pairing pr = choose_pairing(p1, p2, last_sep, target.u[0], target.u[1]);
      const double separation = great_circle_distance(p1, p2);
      // Below kSeparationNoise the star directions near a double root are
      // rounding noise, so neither the separation nor a tie can guide refinement.
      const bool resolvable = std::max(separation, pr.displacement) > kSeparationNoise;
      const bool wants_refine =
          pr.displacement > kPi / 8.0 || (resolvable && (pr.ambiguous || pr.displacement > 0.25 * separation));
      if (options.refine && wants_refine && traj.inserted < options.max_inserted &&
          ray_distance(current.psi, target.psi) > kRefineFloor) {
        pending.push_back(make_sample(geodesic_point(current.psi, target.psi, 0.5)));
        ++traj.inserted;
        continue;
      }
      if (pr.displacement > options.max_star_step) {
        std::ostringstream msg;
        msg << "star displacement " << pr.displacement << " rad at loop step " << k - 1 << " -> " << k % n
            << "; sample the loop more finely";
        throw Error(ErrorCode::StepTooCoarse, msg.str());
      }
      if (pr.ambiguous) ++traj.ambiguous_steps;
      p1 = pr.swap ? target.u[1] : target.u[0];
      p2 = pr.swap ? target.u[0] : target.u[1];
      record(p1, p2, pending.size() == 1);
      current = target;
      pending.pop_back();
    }
  }

  const RVec3& s1 = traj.paths[0].front();
  const RVec3& s2 = traj.paths[1].front();
  const double same = great_circle_distance(p1, s1), other = great_circle_distance(p1, s2);
  if (same <= other && same <= 1e-6) {
    traj.closure = Closure::Identity;
  } else if (other <= 1e-6) {
    traj.closure = Closure::Swap;
  } else {
    throw Error(ErrorCode::NotClosed, "tracked stars do not return to the initial pair");
  }
  return traj;
}

double solid_angle(const std::vector<RVec3>& path) {
  if (path.size() < 2) return 0.0;
  if (great_circle_distance(path.front(), path.back()) > 1e-9)
    throw Error(ErrorCode::NotClosed, "path endpoints differ");

  static const std::array<RVec3, 6> axes{RVec3{1, 0, 0}, RVec3{-1, 0, 0}, RVec3{0, 1, 0},
                                         RVec3{0, -1, 0}, RVec3{0, 0, 1},  RVec3{0, 0, -1}};
  RVec3 ref = axes[0];
  double best = -1.0;
  for (const auto& r : axes) {
    double worst = 2.0;
    for (const auto& u : path) worst = std::min(worst, 1.0 + dot(r, u));
    if (worst > best) {
      best = worst;
      ref = r;
    }
  }

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const RVec3& u = path[k];
    const RVec3& v = path[k + 1];
    const double step = great_circle_distance(u, v);
    if (step > kPi / 4.0 + 1e-12)
      throw Error(ErrorCode::StepTooCoarse, "solid-angle step " + std::to_string(step) + " at " + std::to_string(k));
    // Signed area of the spherical triangle (ref, u, v).
    total += 2.0 * std::atan2(dot(ref, cross(u, v)), 1.0 + dot(ref, u) + dot(ref, v) + dot(u, v));
  }
  double y = std::fmod(total, 4.0 * kPi);
  if (y <= -2.0 * kPi) y += 4.0 * kPi;
  if (y > 2.0 * kPi) y -= 4.0 * kPi;
  return y;
}

double correlation_factor(const RVec3& u1, const RVec3& u2) noexcept {
  const double d = collision_measure(u1, u2);
  return d / (4.0 - d);
}

std::string_view name(LoopClass c) noexcept {
  return c == LoopClass::Exchange ? "Exchange" : "IndividualLoops";
}

PhaseReport gamma_decomposition(const StarTrajectory& traj) {
  const auto& a = traj.paths[0];
  const auto& b = traj.paths[1];
  for (std::size_t k = 0; k < a.size(); ++k)
    if ((k >= traj.original.size() || traj.original[k]) && collision_measure(a[k], b[k]) < kCollisionThreshold)
      throw Error(ErrorCode::StarCollision, "stars collide at trajectory sample " + std::to_string(k));

  // beta12 * Omega(du12) with the 1/d12 of Omega cancelled against the d12 in
  // beta12, evaluated at step midpoints.
  double gc = 0.0;
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    const RVec3 m1 = unit_midpoint(a[k], a[k + 1]);
    const RVec3 m2 = unit_midpoint(b[k], b[k + 1]);
    const RVec3 du = (b[k + 1] - a[k + 1]) - (b[k] - a[k]);
    gc += dot(cross(m1, m2), du) / (4.0 - collision_measure(m1, m2));
  }
  gc *= 0.5;

  double omega = 0.0;
  PhaseReport rep;
  if (traj.closure == Closure::Identity) {
    omega = solid_angle(a) + solid_angle(b);
    rep.classification = LoopClass::IndividualLoops;
  } else {
    std::vector<RVec3> joined(a);
    joined.insert(joined.end(), b.begin() + 1, b.end());
    omega = solid_angle(joined);
    rep.classification = LoopClass::Exchange;
  }
  rep.gamma0 = wrap_phase(-0.5 * omega);
  rep.gammaC = gc;
  rep.gamma = wrap_phase(rep.gamma0 + rep.gammaC);
  return rep;
}

PhaseReport classify_and_verify(const StateLoop& loop, const TrackOptions& options) {
  const double step = loop.max_ray_step();
  if (step > kMaxRayStep)
    throw Error(ErrorCode::InvalidLoop,
                "neighbour ray distance " + std::to_string(step) + " exceeds " + std::to_string(kMaxRayStep));
  PhaseReport rep = gamma_decomposition(track_stars(loop, options));
  const double discrete = discrete_geometric_phase(loop);
  const double gap = std::abs(wrap_phase(rep.gamma - discrete));
  if (gap > kConsistencyTolerance) {
    std::ostringstream msg;
    msg << "gamma0 + gammaC = " << rep.gamma << " but the Bargmann phase is " << discrete
        << "; increase the number of loop samples";
    throw Error(ErrorCode::InconsistentPhases, msg.str());
  }
  rep.gamma = discrete;

  const auto& st = loop.states();
  const bool quadrupolar = std::all_of(st.begin(), st.end(), [](const auto& s) { return is_quadrupolar(s); });
  const bool real = std::all_of(st.begin(), st.end(), [](const auto& s) { return is_real_ray(s); });
  if (quadrupolar || real) {
    const double q = std::abs(wrap_phase(discrete - kPi)) < std::abs(discrete) ? kPi : 0.0;
    if (std::abs(wrap_phase(discrete - q)) <= kQuantTolerance) rep.quantized = q;
  }
  return rep;
}

std::array<double, 3> eigenfamily_topology(const std::vector<Operator3>& path, double gap_min) {
  const std::size_t n = path.size();
  if (n < 3) throw Error(ErrorCode::InvalidLoop, "a Hamiltonian path needs at least 3 points");
  std::array<std::vector<QutritState>, 3> rays;
  for (std::size_t j = 0; j < n; ++j) {
    const EigenSystem es = eig_hermitian3(path[j].matrix());
    const double gap = std::min(es.values[1] - es.values[0], es.values[2] - es.values[1]);
    if (gap < gap_min)
      throw Error(ErrorCode::GapClosure, "spectral gap " + std::to_string(gap) + " at path point " + std::to_string(j));
    for (std::size_t k = 0; k < 3; ++k) {
      QutritState v = QutritState::normalized(es.vectors[k]);
      // Parallel-transport gauge: phase chosen to maximise overlap with the previous point.
      if (j > 0) {
        const Complex ov = overlap(rays[k].back(), v);
        if (std::abs(ov) < 0.5)
          throw Error(ErrorCode::StepTooCoarse, "eigenvector " + std::to_string(k) + " jumps at path point " +
                                                    std::to_string(j) + "; sample the path more finely");
        v = v.with_phase(-std::arg(ov));
      }
      rays[k].push_back(v);
    }
  }
  std::array<double, 3> phases{};
  for (std::size_t k = 0; k < 3; ++k) phases[k] = discrete_geometric_phase(StateLoop(rays[k]));
  return phases;
}

int count_pi(const std::array<double, 3>& phases) noexcept {
  int c = 0;
  for (double p : phases)
    if (std::abs(wrap_phase(p - kPi)) <= kQuantTolerance) ++c;
  return c;
}

// ---------------------------------------------------------------------------

StateLoop rotation_loop(const QutritState& psi, const RVec3& axis, double angle, std::size_t n) {
  const RVec3 a = normalized(axis);
  const auto s = spin_operators();
  const CMat3 gen = s.x.matrix() * Complex(a[0]) + s.y.matrix() * Complex(a[1]) + s.z.matrix() * Complex(a[2]);
  std::vector<QutritState> states;
  states.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    states.push_back(apply(propagator(gen, angle * static_cast<double>(k) / static_cast<double>(n)), psi));
  return StateLoop(std::move(states));
}

StateLoop piecewise_geodesic_loop(const std::vector<QutritState>& vertices, std::size_t samples_per_edge) {
  if (vertices.size() < 2 || samples_per_edge == 0)
    throw Error(ErrorCode::InvalidLoop, "need at least two vertices and one sample per edge");
  std::vector<QutritState> states;
  states.reserve(vertices.size() * samples_per_edge);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const QutritState& a = vertices[i];
    const QutritState& b = vertices[(i + 1) % vertices.size()];
    for (std::size_t s = 0; s < samples_per_edge; ++s)
      states.push_back(geodesic_point(a, b, static_cast<double>(s) / static_cast<double>(samples_per_edge)));
  }
  return StateLoop(std::move(states));
}

StateLoop exchange_loop(std::size_t n) {
  return rotation_loop(quadrupolar_from_axis({1.0, 0.0, 0.0}), {0.0, 0.0, 1.0}, kPi, n);
}

StateLoop individual_loop(std::size_t n) {
  const double th = kPi / 3.0;
  return rotation_loop(quadrupolar_from_axis({std::sin(th), 0.0, std::cos(th)}), {0.0, 0.0, 1.0}, 2.0 * kPi, n);
}

StateLoop morph_eigenstate_loop(double alpha, std::size_t n) {
  const CMat3 ud = interpolating_unitary(alpha).matrix().adjoint();
  std::vector<QutritState> states;
  states.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = (static_cast<double>(k) + 0.5) * 2.0 * kPi / static_cast<double>(n);
    const EigenSystem es = eig_hermitian3(planar_quadrupole_hamiltonian(th).matrix());
    states.push_back(apply(ud, QutritState::normalized(es.vectors[2])));
  }
  return StateLoop(std::move(states));
}

}  // namespace qberry
