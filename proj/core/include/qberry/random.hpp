#pragma once

// Seeded generators for test ensembles. The draws are built from raw
// mt19937_64 output, so a seed gives the same objects on every platform
// (std::uniform_real_distribution and friends are implementation-defined).

#include <cstdint>
#include <random>

#include "qberry/majorana.hpp"
#include "qberry/operators.hpp"
#include "qberry/states.hpp"

namespace qberry {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller).
  double normal();
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Seed for an independent stream, e.g. one per ensemble member or criterion.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

RVec3 random_unit_vector(Rng& rng);
/// Haar-distributed pure state.
QutritState random_state(Rng& rng);
/// Uniform real unit vector viewed as a state.
QutritState random_real_state(Rng& rng);
/// U^dagger applied to a random real state; of the form (a, b, -a*) with b real.
QutritState random_quadrupolar_state(Rng& rng);
Star random_star(Rng& rng);
/// GUE-like: (G + G^dagger)/2 with Gaussian complex entries.
Operator3 random_hermitian(Rng& rng);
/// Gaussian coefficients on the five quadrupole components.
Operator3 random_quadrupolar_hamiltonian(Rng& rng);
/// Gram-Schmidt on Gaussian complex columns.
Operator3 random_unitary(Rng& rng);

}  // namespace qberry
