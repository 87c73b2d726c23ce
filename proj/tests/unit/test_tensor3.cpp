//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include <numbers>

#include "doctest.h"
#include "pann/errors.hpp"
#include "pann/tensor3.hpp"
#include "support.hpp"

using namespace pann;
using doctest::Approx;

TEST_CASE("det of diagonal tensors") {
  CHECK(det(SymTensor3::identity()) == 1.0);
  CHECK(det(SymTensor3::diagonal(4, 1, 1)) == 4.0);
  CHECK(det(SymTensor3::diagonal(1, 2, 3)) == 6.0);
}

TEST_CASE("cofactor from minors") {
  CHECK(cof(SymTensor3::identity()) == SymTensor3::identity());
  CHECK(cof(SymTensor3::diagonal(4, 1, 1)) == SymTensor3::diagonal(1, 4, 4));
  CHECK(cof(SymTensor3::diagonal(1, 2, 3)) == SymTensor3::diagonal(6, 3, 2));
}

TEST_CASE("inverse") {
  CHECK(inverse(SymTensor3::identity()) == SymTensor3::identity());
  CHECK(inverse(SymTensor3::diagonal(4, 1, 1))
        == SymTensor3::diagonal(0.25, 1, 1));
  CHECK(inverse(2.0 * SymTensor3::identity())
        == 0.5 * SymTensor3::identity());

  SUBCASE("singular input throws") {
    try {
      inverse(SymTensor3::diagonal(1, 1, 0));
      FAIL("expected throw");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::kSingularTensor);
    }
  }

  SUBCASE("t * inverse(t) = 1") {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 100; ++n) {
      const SymTensor3 c = test::random_spd(rng);
      const Tensor3 p = Tensor3::from(c) * Tensor3::from(inverse(c));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(std::abs(p(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("cof equals det times inverse") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  int checked = 0;
  while (checked < 200) {
    const SymTensor3 t(u(rng), u(rng), u(rng), u(rng), u(rng), u(rng));
    if (std::abs(det(t)) <= 1e-6)
      continue;
    CHECK(test::rel_diff(cof(t), det(t) * inverse(t)) < 1e-9);
    ++checked;
  }
}

TEST_CASE("materialized form is symmetric") {
  const SymTensor3 t(1, 2, 3, 4, 5, 6);
  const Matrix3 m = t.to_matrix();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(m[i][j] == m[j][i]);
  CHECK(m[0][1] == 4);
  CHECK(m[0][2] == 5);
  CHECK(m[1][2] == 6);
}

TEST_CASE("rotation_about_axes") {
  const Rotation3 id = rotation_about_axes(0, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(id(i, j) == (i == j ? 1.0 : 0.0));

  // e1 goes to -e3 for a quarter turn about X2
  const Rotation3 r = rotation_about_axes(std::numbers::pi / 2, 0);
  CHECK(r(0, 0) == Approx(0).scale(1));
  CHECK(r(2, 0) == Approx(-1));
  CHECK(r(1, 1) == Approx(1));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> phi(-4, 4);
  for (int n = 0; n < 100; ++n) {
    const Rotation3 q = rotation_about_axes(phi(rng), phi(rng));
    CHECK(det(q.tensor()) == Approx(1).epsilon(1e-12));
    const Tensor3 qtq = q.tensor().transpose() * q.tensor();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(qtq(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
  }
}

TEST_CASE("rotation leaves trace, det and cof spectrum unchanged") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    const SymTensor3 c = test::random_spd(rng);
    const SymTensor3 rc = rotate(test::random_rotation(rng), c);
    CHECK(test::rel_diff(det(rc), det(c)) < 1e-10);
    CHECK(test::rel_diff(trace(rc), trace(c)) < 1e-9);
    CHECK(test::rel_diff(trace(cof(rc)), trace(cof(c))) < 1e-9);
  }
}

TEST_CASE("contract counts off-diagonals twice") {
  const SymTensor3 a(1, 1, 1, 1, 0, 0);
  CHECK(contract(a, a) == 5.0);
  CHECK(frobenius_norm(a) == Approx(std::sqrt(5.0)));
}

TEST_CASE("spd_sqrt squares back") {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 100; ++n) {
    const SymTensor3 c = test::random_spd(rng, 0.3, 3.0);
    const SymTensor3 u = spd_sqrt(c);
    CHECK(test::rel_diff(sym_product(u, u), c) < 1e-12);
    CHECK(det(u) > 0);
  }
  CHECK(spd_sqrt(SymTensor3::diagonal(4, 9, 16)).components()[0]
        == Approx(2));
}

TEST_CASE("right_cauchy_green") {
  Tensor3 f = Tensor3::identity();
  f(0, 1) = 0.5;
  const SymTensor3 c = right_cauchy_green(f);
  CHECK(c(0, 0) == 1);
  CHECK(c(0, 1) == 0.5);
  CHECK(c(1, 1) == 1.25);
  CHECK(det(c) == Approx(1));
}
