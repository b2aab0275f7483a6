#include <cmath>

#include "qberry/operators.hpp"
#include "qberry/random.hpp"
#include "support.hpp"

namespace qberry {
namespace {

TEST(Rng, Deterministic) {
  Rng a(42), b(42), c(43);
  for (int k = 0; k < 100; ++k) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_NE(Rng(42).bits(), c.bits());
  EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
  EXPECT_EQ(derive_seed(7, 9), derive_seed(7, 9));
}

TEST(Rng, Moments) {
  Rng rng(5);
  const int n = 200000;
  double su = 0, sn = 0, snn = 0;
  for (int k = 0; k < n; ++k) {
    su += rng.uniform();
    const double z = rng.normal();
    sn += z;
    snn += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 5e-3);
  EXPECT_NEAR(sn / n, 0.0, 1e-2);
  EXPECT_NEAR(snn / n, 1.0, 2e-2);
  for (int k = 0; k < 1000; ++k) EXPECT_LT(rng.index(7), 7u);
}

TEST(Generators, Contracts) {
  Rng rng(6);
  for (int k = 0; k < 200; ++k) {
    EXPECT_NEAR(norm(random_unit_vector(rng)), 1.0, 1e-14);
    EXPECT_TRUE(is_real_ray(random_real_state(rng), 1e-14));
    const QutritState q = random_quadrupolar_state(rng);
    EXPECT_TRUE(is_quadrupolar(q, 1e-12));
    EXPECT_LT(std::abs(q[2] + std::conj(q[0])), 1e-14);
    EXPECT_TRUE(random_hermitian(rng).hermitian());
    EXPECT_TRUE(random_unitary(rng).unitary());
    const Star s = random_star(rng);
    EXPECT_GE(s.theta, 0.0);
    EXPECT_LE(s.theta, kPi);
  }
}

}  // namespace
}  // namespace qberry
