//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "doctest.h"
#include "pann/errors.hpp"
#include "pann/invariants.hpp"
#include "support.hpp"

using namespace pann;
using doctest::Approx;

TEST_CASE("structural tensor") {
  const StructuralTensor g(2.0);
  CHECK(g.tensor() == SymTensor3::diagonal(4, 0.5, 0.5));
  CHECK(g.trace() == 5.0);
  CHECK_THROWS_AS(StructuralTensor(0.0), Error);
  CHECK_THROWS_AS(StructuralTensor(-1.0), Error);
}

TEST_CASE("isotropic invariants") {
  const auto iso = MaterialSymmetry::isotropic();
  const InvariantSet a = compute_invariants(SymTensor3::identity(), iso);
  CHECK(a.i1 == 3);
  CHECK(a.i2 == 3);
  CHECK(a.i3 == 1);
  CHECK(a.i1_star == -2);
  CHECK(a.d_i2 == 2.0 * SymTensor3::identity());
  CHECK(a.size() == 4);
  CHECK_FALSE(a.i4.has_value());

  const InvariantSet b = compute_invariants(SymTensor3::diagonal(4, 1, 1), iso);
  CHECK(b.i1 == 6);
  CHECK(b.i2 == 9);
  CHECK(b.i3 == 4);
  CHECK(b.j == 2);
  CHECK(b.i1_star == -4);
}

TEST_CASE("transversely isotropic invariants at identity") {
  const auto ti = MaterialSymmetry::transversely_isotropic(2.0);
  const InvariantSet a = compute_invariants(SymTensor3::identity(), ti);
  CHECK(*a.i4 == 5.0);
  CHECK(*a.i5 == 5.0);
  CHECK(a.size() == 6);
  const auto ref = reference_inputs(ti);
  CHECK(ref == std::array<double, 6> { 3, 3, 1, 5, 5, -2 });
  CHECK(reference_inputs(MaterialSymmetry::isotropic())[3] == -2);
  CHECK_THROWS_AS(MaterialSymmetry::isotropic().structural(), Error);
}

TEST_CASE("non-positive determinant is rejected") {
  try {
    compute_invariants(SymTensor3::diagonal(1, 1, -1),
                       MaterialSymmetry::isotropic());
    FAIL("expected throw");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kNonPositiveDeterminant);
  }
}

TEST_CASE("invariant derivatives match finite differences") {
  const auto ti = MaterialSymmetry::transversely_isotropic(1.7);
  std::mt19937_64 rng(17);
  for (int n = 0; n < 100; ++n) {
    const SymTensor3 c = test::random_spd(rng);
    const InvariantSet inv = compute_invariants(c, ti);
    for (int k = 0; k < 6; ++k) {
      const auto f = [&](const SymTensor3 &x) {
        return compute_invariants(x, ti).inputs()[k];
      };
      const SymTensor3 fd = test::fd_gradient(f, c);
      CHECK(test::rel_diff(inv.input_derivative(k), fd) < 1e-5);
    }
  }
}

TEST_CASE("isotropic invariants are rotation invariant") {
  const auto iso = MaterialSymmetry::isotropic();
  std::mt19937_64 rng(19);
  for (int n = 0; n < 100; ++n) {
    const SymTensor3 c = test::random_spd(rng);
    const auto a = compute_invariants(c, iso).inputs();
    const auto b =
        compute_invariants(rotate(test::random_rotation(rng), c), iso).inputs();
    for (int k = 0; k < 4; ++k)
      CHECK(test::rel_diff(a[k], b[k]) < 1e-10);
  }
}

TEST_CASE("anisotropic invariants are invariant about X1") {
  const auto ti = MaterialSymmetry::transversely_isotropic(2.0);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> phi(0, 6.3);
  for (int n = 0; n < 100; ++n) {
    const SymTensor3 c = test::random_spd(rng);
    const auto a = compute_invariants(c, ti);
    const auto b = compute_invariants(rotate(Rotation3::about_x1(phi(rng)), c), ti);
    CHECK(test::rel_diff(*a.i4, *b.i4) < 1e-10);
    CHECK(test::rel_diff(*a.i5, *b.i5) < 1e-10);
  }
}

TEST_CASE("admissibility criterion") {
  CHECK(admissibility_gamma(3, 3, 1) == 0.0);
  CHECK(admissibility_gamma(6, 11, 6) == Approx(-4.0 / 108).epsilon(1e-12));
  CHECK_FALSE(is_admissible(4, 1, -6));
  CHECK(is_admissible(3, 3, 1));

  std::mt19937_64 rng(29);
  for (int n = 0; n < 1000; ++n) {
    const SymTensor3 c = test::random_spd(rng, 0.1, 10);
    CHECK(is_admissible(c));
    const auto inv = compute_invariants(c, MaterialSymmetry::isotropic());
    CHECK(admissibility_gamma(inv.i1, inv.i2, inv.i3)
          <= admissibility_tolerance(inv.i1));
  }

  // exactly two negative eigenvalues: I3 > 0 but the predicate must fail
  std::uniform_real_distribution<double> u(0.1, 5);
  for (int n = 0; n < 1000; ++n) {
    const SymTensor3 c = rotate(test::random_rotation(rng),
                                SymTensor3::diagonal(-u(rng), -u(rng), u(rng)));
    CHECK_FALSE(is_admissible(c));
  }
}
