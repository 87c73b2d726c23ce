//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "doctest.h"
#include "pann/errors.hpp"
#include "pann/loadcases.hpp"
#include "support.hpp"

using namespace pann;
using doctest::Approx;

TEST_CASE("uniaxial Newton solutions") {
  const NeoHookeModel nh;
  const auto s = nh.stress_map();

  const LoadPoint id = solve_uniaxial(s, 1.0);
  CHECK(id.lateral_stretch == Approx(1));
  CHECK(frobenius_norm(id.t) <= 1e-10);

  const LoadPoint t = solve_uniaxial(s, 2.0);
  CHECK(t.lateral_stretch < 1);
  CHECK(t.t[0] > 0);
  CHECK(std::abs(t.t[1]) <= 1e-10 * std::max(1.0, std::abs(t.t[0])));
  CHECK(std::abs(t.t[2]) <= 1e-10 * std::max(1.0, std::abs(t.t[0])));
  CHECK(t.c == SymTensor3::diagonal(4, t.lateral_stretch * t.lateral_stretch,
                                    t.lateral_stretch * t.lateral_stretch));

  const LoadPoint c = solve_uniaxial(s, 0.8);
  CHECK(c.t[0] < 0);
  CHECK(c.lateral_stretch > 1);

  // independent check: T22 = mu + f cof22 with cof22 = l1^2 l2^2
  const double mu = nh.params().mu(), lam = nh.params().lambda();
  const double l2 = t.lateral_stretch, i3 = 4 * std::pow(l2, 4);
  CHECK(mu + (lam / 2 - (2 * mu + lam) / (2 * i3)) * 4 * l2 * l2
        == Approx(0).scale(1e3).epsilon(1e-12));
}

TEST_CASE("biaxial Newton solutions") {
  const NeoHookeModel nh;
  const auto s = nh.stress_map();
  CHECK(frobenius_norm(solve_biaxial(s, 1.0).t) <= 1e-10);
  const LoadPoint b = solve_biaxial(s, 1.5);
  CHECK(b.t[0] > 0);
  CHECK(test::rel_diff(b.t[0], b.t[1]) <= 1e-9);
  CHECK(std::abs(b.t[2]) <= 1e-10 * b.t[0]);

  const TransIsoModel ti;
  const LoadPoint a = solve_biaxial(ti.stress_map(), 1.5);
  CHECK(std::abs(a.t[2]) <= 1e-10 * std::max(1.0, std::abs(a.t[0])));
}

TEST_CASE("simple shear") {
  const NeoHookeModel nh;
  const auto s = nh.stress_map();
  CHECK(frobenius_norm(shear_point(s, 0).t) <= 1e-10);
  for (double g: { 0.1, 0.7, 2.0 })
    CHECK(det(shear_point(s, g).c) == Approx(1).epsilon(1e-14));
  // I3 = 1 so T = mu (1 - Cof C) = mu (1 - C^-1); (C^-1)12 = -gamma
  CHECK(shear_point(s, 1).t[3] == Approx(nh.params().mu()));
  CHECK_THROWS_AS(shear_point(s, -1), Error);
}

TEST_CASE("no root in the bracket is an error") {
  const StressMap bad = [](const SymTensor3 &) {
    return SymTensor3(1, 1, 1, 0, 0, 0);
  };
  try {
    solve_uniaxial(bad, 2);
    FAIL("expected throw");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kNewtonDivergence);
  }
}

TEST_CASE("control grids reproduce the dataset sizes") {
  const auto count_ones = [](const std::vector<double> &g) {
    return std::count(g.begin(), g.end(), 1.0);
  };
  const auto g30 = control_grid({ LoadKind::kUniaxial, 0.8, 2.0, 30, true });
  CHECK(g30.size() == 30);
  CHECK(count_ones(g30) == 2);
  CHECK(g30.front() == 0.8);
  CHECK(g30.back() == 2.0);
  CHECK(std::is_sorted(g30.begin(), g30.end()));

  const auto g15 = control_grid({ LoadKind::kUniaxial, 0.8, 1.1, 15, true });
  CHECK(g15.size() == 15);
  CHECK(count_ones(g15) == 2);
  CHECK(control_grid({ LoadKind::kUniaxial, 0.8, 2.0, 100, true }).size() == 100);

  const auto nodup = control_grid({ LoadKind::kUniaxial, 0.8, 2.0, 30, false });
  CHECK(nodup.size() == 30);
  CHECK(count_ones(nodup) == 1);

  const auto sh = control_grid({ LoadKind::kShear, 0, 2, 50, true });
  CHECK(sh.size() == 50);
  CHECK(sh.back() == 2);

  CHECK(control_grid({ LoadKind::kUniaxial, 1.2, 2.0, 5, true }).size() == 5);
  CHECK_THROWS_AS(control_grid({ LoadKind::kUniaxial, 0, 2.0, 5, true }), Error);
}

TEST_CASE("path datasets and perturbations") {
  const NeoHookeModel nh;
  const LoadPath path { LoadKind::kUniaxial, 0.8, 2.0, 30, true };
  const Dataset d = path_dataset(nh.stress_map(), path);
  CHECK(d.size() == 30);
  for (const DataPoint &p: d.points) {
    CHECK(std::abs(p.t[1]) <= 1e-10 * std::max(1.0, std::abs(p.t[0])));
    CHECK(is_admissible(p.c));
  }

  SUBCASE("offset") {
    const Dataset o = apply_offset(d, 100);
    std::size_t identity_rows = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(o.points[i].t[0] == d.points[i].t[0] + 100);
      CHECK(o.points[i].t[1] == d.points[i].t[1]);
      if (d.points[i].c == SymTensor3::identity()) {
        ++identity_rows;
        CHECK(o.points[i].t[0] == Approx(100));
      }
    }
    CHECK(identity_rows == 2);
    const Dataset z = apply_offset(d, 0);
    for (std::size_t i = 0; i < d.size(); ++i)
      CHECK(z.points[i].t == d.points[i].t);
    const Dataset twice = apply_offset(apply_offset(d, 50), 50);
    for (std::size_t i = 0; i < d.size(); ++i)
      CHECK(twice.points[i].t[0] == Approx(o.points[i].t[0]).epsilon(1e-15));
    CHECK(o.metadata["perturbations"].size() == 1);
  }

  SUBCASE("noise") {
    const Dataset z = apply_noise(d, 0, 1);
    for (std::size_t i = 0; i < d.size(); ++i)
      CHECK(z.points[i].t == d.points[i].t);
    const Dataset a = apply_noise(d, 50, 7), b = apply_noise(d, 50, 7);
    for (std::size_t i = 0; i < d.size(); ++i)
      CHECK(a.points[i].t == b.points[i].t);
    CHECK_THROWS_AS(apply_noise(d, -1, 1), Error);

    Dataset big;
    big.points.resize(100000, DataPoint { SymTensor3::identity(), SymTensor3() });
    const Dataset nb = apply_noise(big, 50, 3);
    double mean = 0;
    for (const DataPoint &p: nb.points)
      mean += p.t[0];
    mean /= nb.size();
    CHECK(std::abs(mean) <= 3 * 50 / std::sqrt(1e5));
  }
}
