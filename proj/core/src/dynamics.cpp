#include "qberry/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "qberry/error.hpp"

namespace qberry {

SpinFieldReal::SpinFieldReal(double a, double b, double c) : a_(a), b_(b), c_(c), omega_(std::sqrt(a * a + b * b + c * c)) {
  if (!std::isfinite(omega_) || !(omega_ > 0.0)) throw Error(ErrorCode::InvalidInput, "field must be finite and nonzero");
}

RealState3::RealState3(double r, double s, double t) : v_{r, s, t} {
  const double n = norm(v_);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance)
    throw Error(ErrorCode::NotNormalized, "real state norm is " + std::to_string(n));
}

RealState3 RealState3::normalized(double r, double s, double t) {
  const double n = std::sqrt(r * r + s * s + t * t);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::AllZero, "cannot normalize a zero real state");
  return {r / n, s / n, t / n};
}

Operator3 real_basis_hamiltonian(const SpinFieldReal& field) {
  const auto s = spin_operators_real_basis();
  return Operator3(s.x.matrix() * Complex(-field.a()) + s.y.matrix() * Complex(field.b()) +
                   s.z.matrix() * Complex(field.c()));
}

Operator3 quadrupolar_basis_hamiltonian(const SpinFieldReal& field) {
  return transform_operator(Operator3(global_unitary().matrix().adjoint()), real_basis_hamiltonian(field));
}

RealState3 evolve_closed_form(const SpinFieldReal& field, const RealState3& psi0, double tau) {
  const double a = field.a(), b = field.b(), c = field.c(), w = field.omega();
  const double r0 = psi0.r(), s0 = psi0.s(), t0 = psi0.t();
  const double sn = std::sin(w * tau), cs = std::cos(w * tau);
  const double w2 = w * w;
  const double r = (a * b * t0 + b * b * r0 - b * c * s0 - w * (a * s0 + c * t0) * sn +
                    (a * a * r0 - a * b * t0 + b * c * s0 + c * c * r0) * cs) / w2;
  const double s = (-a * c * t0 - b * c * r0 + c * c * s0 + w * (a * r0 - b * t0) * sn +
                    (a * a * s0 + a * c * t0 + b * b * s0 + b * c * r0) * cs) / w2;
  const double t = (a * a * t0 + a * b * r0 - a * c * s0 + w * (b * s0 + c * r0) * sn +
                    (-a * b * r0 + a * c * s0 + b * b * t0 + c * c * t0) * cs) / w2;
  return RealState3::normalized(r, s, t);
}

CVec3 evolve_numeric_amplitudes(const SpinFieldReal& field, const RealState3& psi0, double tau) {
  return propagator(real_basis_hamiltonian(field).matrix(), tau) * psi0.amps();
}

RealState3 evolve_numeric(const SpinFieldReal& field, const RealState3& psi0, double tau) {
  const CVec3 v = evolve_numeric_amplitudes(field, psi0, tau);
  return RealState3::normalized(v[0].real(), v[1].real(), v[2].real());
}

bool geodesic_condition(const SpinFieldReal& field, const RealState3& psi0, double tol) {
  return std::abs(field.a() * psi0.t() + field.b() * psi0.r() - field.c() * psi0.s()) <= tol;
}

RealState3 geodesic_trajectory(const SpinFieldReal& field, const RealState3& psi0, double tau) {
  const double a = field.a(), b = field.b(), c = field.c(), w = field.omega();
  if (std::abs(a) <= 1e-12 * w)
    throw Error(ErrorCode::ZeroDenominator, "the geodesic form divides by a; use evolve_closed_form for a = 0");
  if (!geodesic_condition(field, psi0, 1e-9))
    throw Error(ErrorCode::ConditionViolated, "psi0 is not orthogonal to the stationary direction");
  const double r0 = psi0.r(), s0 = psi0.s(), t0 = psi0.t();
  const double cs = std::cos(w * tau), k = std::sin(w * tau) / (a * w);
  return RealState3::normalized(cs * r0 + k * (-a * a * s0 + b * c * r0 - c * c * s0),
                                cs * s0 + k * (a * a * r0 + b * b * r0 - b * c * s0),
                                cs * t0 + k * (a * (b * s0 + c * r0)));
}

AAPhase aa_phase(const SpinFieldReal& field, const QutritState& psi_q0, std::size_t samples) {
  if (!is_quadrupolar(psi_q0)) throw Error(ErrorCode::NotQuadrupolar, "initial state carries magnetization");
  if (samples < 3) throw Error(ErrorCode::InvalidInput, "need at least 3 samples");
  const CMat3 h = quadrupolar_basis_hamiltonian(field).matrix();
  const double period = field.period();

  AAPhase out;
  out.samples = samples;
  const QutritState half = apply(propagator(h, 0.5 * period), psi_q0);
  out.period = ray_equal(half, psi_q0, 1e-9) ? 0.5 * period : period;
  const QutritState end = apply(propagator(h, out.period), psi_q0);
  if (!ray_equal(end, psi_q0, 1e-9)) throw Error(ErrorCode::NonCyclic, "orbit does not close");

  const double dt = out.period / static_cast<double>(samples);
  std::vector<QutritState> orbit;
  orbit.reserve(samples);
  double energy = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    // Fresh propagator per sample: no accumulated drift from repeated steps.
    const QutritState psi = j == 0 ? psi_q0 : apply(propagator(h, dt * static_cast<double>(j)), psi_q0);
    const double m = norm(spin_expectation(psi));
    out.max_magnetization = std::max(out.max_magnetization, m);
    if (m > 1e-8)
      throw Error(ErrorCode::NotQuadrupolar, "orbit leaves the quadrupolar subspace at sample " + std::to_string(j));
    energy += inner(psi.amps(), h * psi.amps()).real() * dt;
    orbit.push_back(psi);
  }
  out.total = wrap_phase(std::arg(overlap(psi_q0, end)));
  out.dynamical = -energy;
  out.geometric = wrap_phase(out.total - out.dynamical);
  out.discrete = discrete_geometric_phase(StateLoop(orbit));
  if (std::abs(wrap_phase(out.discrete - out.geometric)) > kConsistencyTolerance) {
    std::ostringstream msg;
    msg << "Bargmann phase " << out.discrete << " disagrees with the AA phase " << out.geometric;
    throw Error(ErrorCode::InconsistentPhases, msg.str());
  }
  for (double q : {0.0, kPi})
    if (std::abs(wrap_phase(out.geometric - q)) <= 1e-6) out.quantized = q;
  return out;
}

PreservationReport quadrupolar_preservation_check(const Operator3& hamiltonian, const QutritState& psi_q0,
                                                  double horizon, std::size_t steps) {
  if (!is_quadrupolar(psi_q0)) throw Error(ErrorCode::NotQuadrupolar, "initial state carries magnetization");
  PreservationReport rep;
  const std::size_t n = std::max<std::size_t>(steps, 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = horizon * static_cast<double>(k) / static_cast<double>(n);
    const double m = norm(spin_expectation(apply(propagator(hamiltonian.matrix(), t), psi_q0)));
    if (m > rep.max_violation) {
      rep.max_violation = m;
      rep.worst_sample = k;
    }
  }
  rep.preserved = rep.max_violation <= 1e-8;
  return rep;
}

CosineFit antipode_distance_fit(const SpinFieldReal& field, const RealState3& psi0, std::size_t samples) {
  const std::size_t n = std::max<std::size_t>(samples, 2);
  std::vector<double> taus(n + 1), ys(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    taus[k] = field.period() * static_cast<double>(k) / static_cast<double>(n);
    const RVec3 sum = evolve_closed_form(field, psi0, taus[k]).vec() + psi0.vec();
    ys[k] = dot(sum, sum);
  }
  // Normal equations for y = A + B x with x = cos(omega tau).
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double x = std::cos(field.omega() * taus[k]);
    sx += x;
    sxx += x * x;
    sy += ys[k];
    sxy += x * ys[k];
  }
  const double m = static_cast<double>(n + 1);
  CosineFit fit;
  fit.b = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.a = (sy - fit.b * sx) / m;
  fit.min_value = ys[0];
  for (std::size_t k = 0; k <= n; ++k) {
    const double r = ys[k] - (fit.a + fit.b * std::cos(field.omega() * taus[k]));
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
    if (ys[k] < fit.min_value) {
      fit.min_value = ys[k];
      fit.argmin_tau = taus[k];
    }
  }
  return fit;
}

}  // namespace qberry
