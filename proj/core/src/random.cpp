#include "qberry/random.hpp"

#include <cmath>

namespace qberry {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  while (u == 0.0) u = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double t = 2.0 * kPi * uniform();
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

std::size_t Rng::index(std::size_t n) {
  // Rejection keeps the draw unbiased.
  const std::uint64_t m = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % m);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RVec3 random_unit_vector(Rng& rng) {
  for (;;) {
    const RVec3 v{rng.normal(), rng.normal(), rng.normal()};
    const double n = norm(v);
    if (n > 1e-8) return (1.0 / n) * v;
  }
}

QutritState random_state(Rng& rng) {
  for (;;) {
    CVec3 v{};
    for (auto& z : v) z = Complex(rng.normal(), rng.normal());
    if (norm(v) > 1e-8) return QutritState::normalized(v);
  }
}

QutritState random_real_state(Rng& rng) {
  const RVec3 u = random_unit_vector(rng);
  return QutritState::normalized({u[0], u[1], u[2]});
}

QutritState random_quadrupolar_state(Rng& rng) {
  return apply(global_unitary().matrix().adjoint(), random_real_state(rng));
}

Star random_star(Rng& rng) { return Star::from_vector(random_unit_vector(rng)); }

Operator3 random_hermitian(Rng& rng) {
  CMat3 g;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
  return Operator3((g + g.adjoint()) * Complex(0.5));
}

Operator3 random_quadrupolar_hamiltonian(Rng& rng) {
  std::map<QuadrupoleComponent, double> coeffs;
  for (auto c : {QuadrupoleComponent::XY, QuadrupoleComponent::YZ, QuadrupoleComponent::ZX, QuadrupoleComponent::ZZ,
                 QuadrupoleComponent::X2MinusY2})
    coeffs[c] = rng.normal();
  return quadrupolar_hamiltonian(coeffs);
}

Operator3 random_unitary(Rng& rng) {
  for (;;) {
    std::array<CVec3, 3> cols{};
    bool ok = true;
    for (std::size_t k = 0; k < 3 && ok; ++k) {
      CVec3 v{};
      for (auto& z : v) z = Complex(rng.normal(), rng.normal());
      for (std::size_t j = 0; j < k; ++j) {
        const Complex p = inner(cols[j], v);
        for (std::size_t i = 0; i < 3; ++i) v[i] -= p * cols[j][i];
      }
      const double n = norm(v);
      ok = n > 1e-6;
      if (ok) cols[k] = scaled(v, 1.0 / n);
    }
    if (!ok) continue;
    CMat3 m;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = cols[c][r];
    return Operator3(m);
  }
}

}  // namespace qberry
