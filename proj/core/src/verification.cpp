#include "qberry/verification.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "qberry/berry.hpp"
#include "qberry/dynamics.hpp"
#include "qberry/error.hpp"
#include "qberry/majorana.hpp"
#include "qberry/operators.hpp"
#include "qberry/random.hpp"

namespace qberry {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvSqrt2 = 0.70710678118654752440;

class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}
  void add(std::string name, double measured, double tol) {
    r_.checks.push_back({std::move(name), measured, tol, measured <= tol});
  }

 private:
  CriterionResult& r_;
};

// Independent streams inside a criterion.
Rng stream(std::uint64_t seed, int id, int sub) {
  return Rng(derive_seed(derive_seed(seed, static_cast<std::uint64_t>(id)), static_cast<std::uint64_t>(sub)));
}

QutritState random_angle_quadrupolar(Rng& rng) {
  return quadrupolar_from_angles({std::acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2.0 * kPi)});
}

CMat3 spin_along(const RVec3& n) {
  const auto s = spin_operators();
  return s.x.matrix() * Complex(n[0]) + s.y.matrix() * Complex(n[1]) + s.z.matrix() * Complex(n[2]);
}

double quantization_deviation(double phase) {
  return std::min(std::abs(wrap_phase(phase)), std::abs(wrap_phase(phase - kPi)));
}

double min_gap(const Operator3& h) {
  const auto v = eig_hermitian3(h.matrix()).values;
  return std::min(v[1] - v[0], v[2] - v[1]);
}

// ---------------------------------------------------------------------------

void bargmann_geodesic(std::uint64_t seed, Recorder& rec) {
  Rng rng = stream(seed, 1, 0);
  std::vector<std::pair<QutritState, QutritState>> pairs{
      {QutritState({1.0, 0.0, 0.0}), QutritState::normalized({1.0, 1.0, 0.0})}};
  for (int i = 0; i < 10; ++i) pairs.emplace_back(random_real_state(rng), random_real_state(rng));

  double worst = 0.0, n3 = 0.0;
  for (std::size_t n = 3; n <= 12; ++n) {
    const double c = std::cos(kPi / static_cast<double>(n));
    const double expected = std::pow(c, static_cast<double>(n - 1)) * std::cos(kPi - kPi / static_cast<double>(n));
    for (const auto& [a, b] : pairs) {
      const Complex got = bargmann_invariant(geodesic_loop(a, b, n).states());
      worst = std::max(worst, std::abs(got - expected));
      if (n == 3) n3 = std::max(n3, std::abs(got + 0.125));
    }
  }
  rec.add("cyclic product vs closed form, N = 3..12", worst, 1e-12);
  rec.add("N = 3 product vs -1/8", n3, 1e-12);
}

void planar_eigenvalue_law(std::uint64_t, Recorder& rec) {
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double th = 2.0 * kPi * k / 100.0;
    const double top = eig_hermitian3(planar_quadrupole_hamiltonian(th).matrix()).values[2];
    worst = std::max(worst, std::abs(top - std::sqrt(5.0 + 3.0 * std::cos(2.0 * th)) / (2.0 * std::sqrt(2.0))));
  }
  rec.add("top eigenvalue vs sqrt(5 + 3 cos 2th) / (2 sqrt 2)", worst, 1e-10);
}

void quadrupolar_antipodality(std::uint64_t seed, Recorder& rec) {
  Rng rng = stream(seed, 3, 0);
  double antipodal = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto u = stars_from_state(random_angle_quadrupolar(rng)).unit_vectors();
    antipodal = std::max(antipodal, 1.0 + dot(u[0], u[1]));
  }
  rec.add("1 + u1.u2 over quadrupolar states", antipodal, 1e-9);

  const CMat3 udag = global_unitary().matrix().adjoint();
  double angles = 0.0, lock = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const RVec3 v = random_unit_vector(rng);
    const double r = v[0], s = v[1], t = v[2];
    const QutritState psi({Complex(-t, -r) * kInvSqrt2, s, Complex(t, -r) * kInvSqrt2});
    const double th1 = 2.0 * std::atan((s + 1.0) / std::hypot(r, t));
    const double ph1 = std::arg(Complex(-t, r));
    const StarSet expected(Star::from_vector(Star{th1, ph1}.unit_vector()),
                           Star::from_vector(Star{kPi - th1, ph1 + kPi}.unit_vector()));
    angles = std::max(angles, matching_distance(stars_from_state(psi), expected));
    lock = std::max(lock, max_abs_diff(psi.amps(), (udag * CVec3{r, s, -t})));
  }
  rec.add("closed-form star angles, great-circle error", angles, 1e-9);
  rec.add("closed-form state equals U^dagger (r, s, -t)", lock, 1e-12);
}

void real_mapping(std::uint64_t seed, Recorder& rec) {
  Rng rng = stream(seed, 4, 0);
  const CMat3 u = global_unitary().matrix();
  const AntiUnitary theta = anti_unitary_theta();
  const AntiUnitary ttr = triplet_time_reversal();

  double imag = 0.0, theta_fix = 0.0, ttr_flip = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const QutritState q = random_angle_quadrupolar(rng);
    for (const auto& z : u * q.amps()) imag = std::max(imag, std::abs(z.imag()));
    theta_fix = std::max(theta_fix, ray_distance(theta.apply(q), q));
    ttr_flip = std::max(ttr_flip, max_abs_diff(ttr.apply(q.amps()), scaled(q.amps(), -1.0)));
  }
  rec.add("max |Im(U psi_q)|", imag, 1e-12);
  rec.add("Theta^2 - I (exact)", max_abs_diff(theta.squared(), CMat3::identity()), 0.0);
  rec.add("ray distance Theta psi_q to psi_q", theta_fix, 1e-12);
  rec.add("T psi_q + psi_q", ttr_flip, 1e-12);

  // Converse: every solution of T psi = -psi is quadrupolar, and generic
  // states are not sign-flipped.
  double fixed_points = 0.0;
  int disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    const QutritState g = random_state(rng);
    const CVec3 tg = ttr.apply(g.amps());
    CVec3 f{};
    for (std::size_t k = 0; k < 3; ++k) f[k] = g[k] - tg[k];
    if (norm(f) > 1e-6) {
      const QutritState fp = QutritState::normalized(f);
      fixed_points = std::max(fixed_points, norm(spin_expectation(fp)));
    }
    const bool flipped = max_abs_diff(tg, scaled(g.amps(), -1.0)) <= 1e-9;
    if (flipped != is_quadrupolar(g)) ++disagreements;
  }
  rec.add("|<S>| of T-odd states", fixed_points, 1e-12);
  rec.add("generic states where T-odd and quadrupolar disagree", disagreements, 0.0);
}

// Random piecewise-geodesic loops, quadrupolar or real, with N >= 400.
struct EnsembleStats {
  double quantization = 0.0;
  double consistency = 0.0;
  double gamma_c = 0.0;
  int failures = 0;
  std::string first_error;
};

EnsembleStats loop_ensemble(bool quadrupolar, std::uint64_t seed, int count) {
  Rng rng(derive_seed(seed, quadrupolar ? 1001 : 1002));
  EnsembleStats st;
  for (int i = 0; i < count; ++i) {
    const std::size_t m = 3 + rng.index(4);
    std::vector<QutritState> v;
    for (std::size_t j = 0; j < m; ++j) v.push_back(quadrupolar ? random_angle_quadrupolar(rng) : random_real_state(rng));
    try {
      const StateLoop loop = piecewise_geodesic_loop(v, (400 + m - 1) / m);
      const double disc = discrete_geometric_phase(loop);
      st.quantization = std::max(st.quantization, quantization_deviation(disc));
      const PhaseReport rep = gamma_decomposition(track_stars(loop));
      st.consistency = std::max(st.consistency, std::abs(wrap_phase(rep.gamma - disc)));
      st.gamma_c = std::max(st.gamma_c, std::abs(rep.gammaC));
    } catch (const Error& e) {
      if (st.failures++ == 0) st.first_error = e.what();
    }
  }
  return st;
}

StateLoop rotated(const StateLoop& loop, const CMat3& r) {
  std::vector<QutritState> out;
  out.reserve(loop.size());
  for (const auto& s : loop.states()) out.push_back(apply(r, s));
  return StateLoop(std::move(out));
}

void phase_quantization(std::uint64_t seed, Recorder& rec, CriterionResult& res) {
  const EnsembleStats q = loop_ensemble(true, seed, 1000);
  const EnsembleStats r = loop_ensemble(false, seed, 1000);
  rec.add("quadrupolar loops: distance of phase to {0, pi}", q.quantization, 1e-3);
  rec.add("real loops: distance of phase to {0, pi}", r.quantization, 1e-3);
  rec.add("loops that raised an error", q.failures + r.failures, 0.0);
  if (!q.first_error.empty()) res.error = q.first_error;
  if (!r.first_error.empty()) res.error = r.first_error;

  Rng rng = stream(seed, 5, 0);
  const StateLoop ex = exchange_loop(400), ind = individual_loop(400);
  int wrong_class = 0;
  double ex_dev = 0.0, ind_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const CMat3 rot = propagator(spin_along(random_unit_vector(rng)), rng.uniform(0.0, 2.0 * kPi));
    const PhaseReport a = classify_and_verify(rotated(ex, rot));
    const PhaseReport b = classify_and_verify(rotated(ind, rot));
    wrong_class += (a.classification != LoopClass::Exchange) + (b.classification != LoopClass::IndividualLoops);
    ex_dev = std::max(ex_dev, std::abs(wrap_phase(a.gamma - kPi)));
    ind_dev = std::max(ind_dev, std::abs(wrap_phase(b.gamma)));
  }
  rec.add("constructed loops with the wrong class", wrong_class, 0.0);
  rec.add("exchange loops: |gamma - pi|", ex_dev, 1e-3);
  rec.add("individual loops: |gamma|", ind_dev, 1e-3);
}

void decomposition_consistency(std::uint64_t seed, Recorder& rec, CriterionResult& res) {
  const EnsembleStats q = loop_ensemble(true, seed, 1000);
  const EnsembleStats r = loop_ensemble(false, seed, 1000);
  rec.add("|gamma0 + gammaC - discrete|, quadrupolar loops", q.consistency, kConsistencyTolerance);
  rec.add("|gamma0 + gammaC - discrete|, real loops", r.consistency, kConsistencyTolerance);
  rec.add("|gammaC|, quadrupolar loops", q.gamma_c, 1e-10);
  rec.add("|gammaC|, real loops", r.gamma_c, 1e-6);
  rec.add("loops that raised an error", q.failures + r.failures, 0.0);
  if (!q.first_error.empty()) res.error = q.first_error;
  if (!r.first_error.empty()) res.error = r.first_error;

  // beta12 = -(d / N^2) dN^2/dd by central differences of the lifted norm.
  Rng rng = stream(seed, 6, 0);
  auto norm_sq = [](double d) {
    const double c = 1.0 - d, s = std::sqrt(std::max(0.0, 1.0 - c * c));
    return symmetrized_norm_squared({0.0, 0.0, 1.0}, {s, 0.0, c});
  };
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double d = rng.uniform(0.01, 1.99), h = 1e-5;
    const double fd = -(d / norm_sq(d)) * (norm_sq(d + h) - norm_sq(d - h)) / (2.0 * h);
    const double c = 1.0 - d, s = std::sqrt(1.0 - c * c);
    worst = std::max(worst, std::abs(fd - correlation_factor({0.0, 0.0, 1.0}, {s, 0.0, c})));
  }
  rec.add("beta12 analytic vs finite difference", worst, 1e-6);
}

void exchange_solid_angle(std::uint64_t seed, Recorder& rec) {
  Rng rng = stream(seed, 7, 0);
  std::vector<StateLoop> loops{exchange_loop(400)};
  for (int i = 0; i < 20; ++i) {
    const RVec3 n = random_unit_vector(rng);
    const RVec3 m = normalized(cross(n, random_unit_vector(rng)));
    loops.push_back(rotation_loop(quadrupolar_from_axis(n), m, kPi, 400));
  }
  double worst = 0.0;
  int not_swapped = 0;
  for (const auto& loop : loops) {
    const StarTrajectory t = track_stars(loop);
    if (t.closure != Closure::Swap) {
      ++not_swapped;
      continue;
    }
    std::vector<RVec3> joined(t.paths[0]);
    joined.insert(joined.end(), t.paths[1].begin() + 1, t.paths[1].end());
    worst = std::max(worst, std::abs(std::abs(solid_angle(joined)) - 2.0 * kPi));
  }
  rec.add("| |Omega| - 2 pi | over great-circle exchanges", worst, 1e-6);
  rec.add("exchanges whose stars did not swap", not_swapped, 0.0);
}

void eigen_axes_orthogonal(std::uint64_t seed, Recorder& rec) {
  Rng rng = stream(seed, 8, 0);
  double worst = 0.0;
  for (int accepted = 0; accepted < 200;) {
    const Operator3 h = random_quadrupolar_hamiltonian(rng);
    if (min_gap(h) < 1e-3) continue;
    ++accepted;
    const EigenSystem es = quadrupolar_eigenbasis(h);
    std::array<RVec3, 3> axis{};
    for (std::size_t k = 0; k < 3; ++k) axis[k] = stars_from_state(QutritState::normalized(es.vectors[k])).unit_vectors()[0];
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) worst = std::max(worst, std::abs(dot(axis[i], axis[j])));
  }
  rec.add("max |n_i . n_j| between eigen-axes", worst, 1e-8);
}

void eigenfamily(std::uint64_t seed, Recorder& rec) {
  Rng rng = stream(seed, 9, 0);
  constexpr std::size_t kSteps = 600;
  constexpr double kPathGap = 0.05;
  const auto q = quadrupole_ops();

  int bad_count = 0, rotation_not_two = 0;
  int fourier = 0, rotations = 0;
  while (fourier + rotations < 50) {
    std::vector<Operator3> path;
    const bool rotation = (fourier + rotations) % 2 == 1;
    if (!rotation) {
      // Closed Fourier path a + b cos t + c sin t in coefficient space.
      std::array<std::array<double, 3>, 5> w{};
      for (auto& c : w) c = {rng.normal(), rng.normal(), rng.normal()};
      for (std::size_t j = 0; j < kSteps; ++j) {
        const double t = 2.0 * kPi * static_cast<double>(j) / kSteps;
        CMat3 h;
        std::size_t k = 0;
        for (const auto& [comp, op] : q) {
          h += op.matrix() * Complex(w[k][0] + w[k][1] * std::cos(t) + w[k][2] * std::sin(t));
          ++k;
        }
        path.emplace_back(h);
      }
    } else {
      // Half turn about an eigen-axis brings the Hamiltonian back to itself.
      const Operator3 h0 = random_quadrupolar_hamiltonian(rng);
      if (min_gap(h0) < kPathGap) continue;
      const EigenSystem es = quadrupolar_eigenbasis(h0);
      const RVec3 n = stars_from_state(QutritState::normalized(es.vectors[rng.index(3)])).unit_vectors()[0];
      const CMat3 ns = spin_along(n);
      for (std::size_t j = 0; j < kSteps; ++j) {
        const CMat3 r = propagator(ns, kPi * static_cast<double>(j) / kSteps);
        path.emplace_back(r * h0.matrix() * r.adjoint());
      }
    }
    if (std::any_of(path.begin(), path.end(), [&](const Operator3& h) { return min_gap(h) < kPathGap; })) continue;
    const int count = count_pi(eigenfamily_topology(path));
    if (count != 0 && count != 2) ++bad_count;
    if (rotation) {
      ++rotations;
      if (count != 2) ++rotation_not_two;
    } else {
      ++fourier;
    }
  }
  rec.add("random paths with a pi count outside {0, 2}", bad_count, 0.0);
  rec.add("half-turn paths without exactly two pi phases", rotation_not_two, 0.0);

  std::vector<Operator3> planar;
  for (std::size_t j = 0; j < kSteps; ++j) planar.push_back(planar_quadrupole_hamiltonian(2.0 * kPi * j / kSteps));
  rec.add("planar path: |pi count - 2|", std::abs(count_pi(eigenfamily_topology(planar)) - 2), 0.0);
}

void spin_dynamics(std::uint64_t seed, Recorder& rec) {
  Rng rng = stream(seed, 10, 0);
  auto random_field = [&] { return SpinFieldReal(rng.normal(), rng.normal(), rng.normal()); };
  auto random_real = [&] {
    const RVec3 v = random_unit_vector(rng);
    return RealState3(v[0], v[1], v[2]);
  };
  auto geodesic_start = [&](const SpinFieldReal& f) {
    const RVec3 v = normalized(cross(random_unit_vector(rng), {f.b(), -f.c(), f.a()}));
    return RealState3(v[0], v[1], v[2]);
  };
  auto diff = [](const RVec3& a, const RVec3& b) { return norm(a - b); };

  double closed_vs_prop = 0.0, ret = 0.0;
  for (int i = 0; i < 500; ++i) {
    const SpinFieldReal f = random_field();
    const RealState3 p0 = random_real();
    for (int k = 0; k <= 64; ++k) {
      const double tau = 4.0 * f.period() * k / 64.0;
      const RealState3 cf = evolve_closed_form(f, p0, tau);
      closed_vs_prop = std::max(closed_vs_prop, max_abs_diff(cf.amps(), evolve_numeric_amplitudes(f, p0, tau)));
    }
    ret = std::max(ret, diff(evolve_closed_form(f, p0, f.period()).vec(), p0.vec()));
    ret = std::max(ret, max_abs_diff(evolve_numeric_amplitudes(f, p0, f.period()), p0.amps()));
  }
  rec.add("closed form vs propagator over 4 periods", closed_vs_prop, 1e-8);
  rec.add("return to psi0 at T", ret, 1e-10);

  double half = 0.0, fit = 0.0, fit_zero = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SpinFieldReal f = random_field();
    const RealState3 g = geodesic_start(f);
    const RVec3 minus{-g.r(), -g.s(), -g.t()};
    half = std::max(half, diff(evolve_closed_form(f, g, 0.5 * f.period()).vec(), minus));
    half = std::max(half, diff(geodesic_trajectory(f, g, 0.5 * f.period()).vec(), minus));
    const CosineFit cg = antipode_distance_fit(f, g, 256);
    const CosineFit cr = antipode_distance_fit(f, random_real(), 256);
    fit = std::max({fit, cg.max_residual, cr.max_residual});
    fit_zero = std::max(fit_zero, std::abs(cg.min_value));
  }
  rec.add("geodesic starts reach -psi0 at T/2", half, 1e-10);
  rec.add("A + B cos(w tau) fit residual", fit, 1e-9);
  rec.add("geodesic starts: min ||psi + psi0||^2", fit_zero, 1e-9);

  const CMat3 udag = global_unitary().matrix().adjoint();
  double aa_quant = 0.0, aa_dyn = 0.0;
  int wrong_value = 0;
  for (int i = 0; i < 100; ++i) {
    const SpinFieldReal f = random_field();
    const bool geo = i % 2 == 0;
    const RealState3 p0 = geo ? geodesic_start(f) : random_real();
    const AAPhase aa = aa_phase(f, apply(udag, QutritState(p0.amps())));
    aa_quant = std::max(aa_quant, quantization_deviation(aa.geometric));
    aa_dyn = std::max(aa_dyn, std::abs(aa.dynamical));
    const double expected = geo ? kPi : 0.0;
    if (std::abs(wrap_phase(aa.geometric - expected)) > 1e-6) ++wrong_value;
  }
  rec.add("AA phase distance to {0, pi}", aa_quant, 1e-6);
  rec.add("AA dynamical phase", aa_dyn, 1e-10);
  rec.add("AA phase not pi for geodesic starts or not 0 otherwise", wrong_value, 0.0);
}

void morph_sequence(std::uint64_t, Recorder& rec) {
  rec.add("U(0) - I", max_abs_diff(interpolating_unitary(0.0).matrix(), CMat3::identity()), 1e-12);
  rec.add("U(1) - U", max_abs_diff(interpolating_unitary(1.0).matrix(), global_unitary().matrix()), 1e-12);

  const auto p = interpolation_projectors();
  double idem = 0.0, orth = 0.0;
  CMat3 sum;
  for (std::size_t i = 0; i < 3; ++i) {
    idem = std::max(idem, max_abs_diff(p[i].projector * p[i].projector, p[i].projector));
    for (std::size_t j = i + 1; j < 3; ++j) orth = std::max(orth, max_abs_diff(p[i].projector * p[j].projector, CMat3{}));
    sum += p[i].projector;
  }
  rec.add("projectors idempotent", idem, 1e-12);
  rec.add("projectors mutually orthogonal", orth, 1e-12);
  rec.add("projectors complete", max_abs_diff(sum, CMat3::identity()), 1e-12);

  int wrong = 0;
  for (double a : {0.0, 0.2, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0}) {
    const LoopClass want = a == 1.0 ? LoopClass::IndividualLoops : LoopClass::Exchange;
    if (classify_and_verify(morph_eigenstate_loop(a, 400)).classification != want) ++wrong;
  }
  rec.add("morph values with the wrong class", wrong, 0.0);
}

void two_qubit_purity(std::uint64_t seed, Recorder& rec) {
  Rng rng = stream(seed, 12, 0);
  double quad = 0.0, coincident = 0.0;
  for (int i = 0; i < 200; ++i) {
    quad = std::max(quad, std::abs(symmetrized_two_qubit(stars_from_state(random_angle_quadrupolar(rng))).purity - 0.5));
    const Star s = random_star(rng);
    coincident = std::max(coincident, std::abs(symmetrized_two_qubit(StarSet(s, s)).purity - 1.0));
  }
  rec.add("quadrupolar: |purity - 1/2|", quad, 1e-10);
  rec.add("coincident stars: |purity - 1|", coincident, 1e-10);
}

const char* criterion_name(int id) {
  static const char* names[] = {"",
                                "bargmann-geodesic",
                                "planar-eigenvalue-law",
                                "quadrupolar-antipodality",
                                "real-mapping",
                                "phase-quantization",
                                "decomposition-consistency",
                                "exchange-solid-angle",
                                "eigen-axes-orthogonal",
                                "eigenfamily-topology",
                                "spin-dynamics",
                                "morph-sequence",
                                "two-qubit-purity"};
  return id >= 1 && id <= kCriterionCount ? names[id] : "unknown";
}

}  // namespace

bool CriterionResult::passed() const noexcept {
  if (!error.empty() && checks.empty()) return false;
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<int> suite_criteria(std::string_view suite) {
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  if (suite == "bargmann") return {1};
  if (suite == "algebra") return {4};
  if (suite == "geometry") return {3, 7, 8, 12};
  if (suite == "quantization") return {5, 6, 9};
  if (suite == "dynamics") return {10};
  if (suite == "morph") return {2, 11};
  if (suite.size() >= 2 && suite[0] == 'c') {
    int id = 0;
    for (char ch : suite.substr(1)) {
      if (ch < '0' || ch > '9') return {};
      id = 10 * id + (ch - '0');
    }
    if (id >= 1 && id <= kCriterionCount) return {id};
  }
  return {};
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  CriterionResult res;
  res.id = id;
  res.name = criterion_name(id);
  Recorder rec(res);
  try {
    switch (id) {
      case 1: bargmann_geodesic(seed, rec); break;
      case 2: planar_eigenvalue_law(seed, rec); break;
      case 3: quadrupolar_antipodality(seed, rec); break;
      case 4: real_mapping(seed, rec); break;
      case 5: phase_quantization(seed, rec, res); break;
      case 6: decomposition_consistency(seed, rec, res); break;
      case 7: exchange_solid_angle(seed, rec); break;
      case 8: eigen_axes_orthogonal(seed, rec); break;
      case 9: eigenfamily(seed, rec); break;
      case 10: spin_dynamics(seed, rec); break;
      case 11: morph_sequence(seed, rec); break;
      case 12: two_qubit_purity(seed, rec); break;
      default: res.error = "unknown criterion " + std::to_string(id);
    }
  } catch (const std::exception& e) {
    res.error = e.what();
    rec.add("completed without error", kInf, 0.0);
  }
  return res;
}

std::vector<CriterionResult> run_suite(std::string_view suite, std::uint64_t seed) {
  const std::vector<int> ids = suite_criteria(suite);
  std::vector<std::future<CriterionResult>> jobs;
  jobs.reserve(ids.size());
  for (int id : ids) jobs.push_back(std::async(std::launch::async, run_criterion, id, seed));
  std::vector<CriterionResult> out;
  out.reserve(ids.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

nlohmann::json to_json(const CriterionResult& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json m = std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json(nullptr);
    checks.push_back({{"name", c.name}, {"measured", m}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  }
  nlohmann::json out{{"id", r.id}, {"name", r.name}, {"passed", r.passed()}, {"checks", checks}};
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

std::string summary_line(const CriterionResult& r) {
  const Check* worst = nullptr;
  double worst_ratio = -1.0;
  for (const auto& c : r.checks) {
    const double ratio = c.tolerance > 0.0 ? c.measured / c.tolerance : (c.measured > 0.0 ? kInf : 0.0);
    if (!(ratio <= worst_ratio)) {
      worst_ratio = ratio;
      worst = &c;
    }
  }
  std::ostringstream out;
  out << (r.passed() ? "PASS" : "FAIL") << "  " << (r.id < 10 ? "c0" : "c") << r.id << " " << r.name;
  if (worst) out << "  [" << worst->name << ": " << worst->measured << " <= " << worst->tolerance << "]";
  if (!r.error.empty()) out << "  error: " << r.error;
  return out.str();
}

}  // namespace qberry
