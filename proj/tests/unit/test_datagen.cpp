//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "pann/analytic.hpp"
#include "pann/dataset.hpp"
#include "pann/errors.hpp"
#include "pann/loadcases.hpp"
#include "support.hpp"

using namespace pann;

namespace {

std::filesystem::path temp_path(const std::string &name) {
  const auto dir = std::filesystem::temp_directory_path() / "pann_test_datagen";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("multiaxial sampling") {
  const NeoHookeModel nh;
  const MultiaxialSpec spec { 963 };
  const Dataset a = sample_multiaxial(nh.stress_map(), spec, 42);
  CHECK(a.size() == 963);
  for (const DataPoint &p: a.points)
    CHECK(is_admissible(p.c));
  const Dataset b = sample_multiaxial(nh.stress_map(), spec, 42);
  CHECK(to_csv(a) == to_csv(b));
  CHECK(to_csv(a) != to_csv(sample_multiaxial(nh.stress_map(), spec, 43)));
  CHECK(a.metadata["load"]["kind"] == "multiaxial");
}

TEST_CASE("invariant filter") {
  const NeoHookeModel nh;
  const auto iso = MaterialSymmetry::isotropic();
  const Dataset d = sample_multiaxial(nh.stress_map(), { 200 }, 1);
  CHECK(filter_by_invariants(d, 1e-12, iso).size() == d.size());

  Dataset dup = d;
  dup.points.insert(dup.points.end(), d.points.begin(), d.points.end());
  CHECK(filter_by_invariants(dup, 1e-12, iso).size() == d.size());

  Dataset same;
  same.points.assign(5, d.points[0]);
  CHECK(filter_by_invariants(same, 0.01, iso).size() == 1);

  const Dataset path = path_dataset(
      nh.stress_map(), { LoadKind::kUniaxial, 0.8, 2.0, 30, true });
  const Dataset f = filter_by_invariants(path, 0.01, iso);
  CHECK(f.size() < 30);

  for (double eta: { 0.01, 0.05, 0.2 }) {
    const auto ti = MaterialSymmetry::transversely_isotropic(2);
    const Dataset once = filter_by_invariants(d, eta, ti);
    CHECK(to_csv(filter_by_invariants(once, eta, ti)) == to_csv(once));
  }
  CHECK_THROWS_AS(filter_by_invariants(d, 0, iso), Error);
}

TEST_CASE("split") {
  Dataset d;
  for (int i = 0; i < 10; ++i)
    d.points.push_back({ SymTensor3::identity() * (1 + i), SymTensor3() });
  const SplitDataset s = split(d, 0.7, 5);
  CHECK(s.calibration.size() == 7);
  CHECK(s.test.size() == 3);

  std::vector<double> seen;
  for (const auto *part: { &s.calibration, &s.test })
    for (const DataPoint &p: part->points)
      seen.push_back(p.c[0]);
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < 10; ++i)
    CHECK(seen[i] == 1 + i);

  const SplitDataset again = split(d, 0.7, 5);
  CHECK(to_csv(again.calibration) == to_csv(s.calibration));

  Dataset one;
  one.points.push_back(d.points[0]);
  try {
    split(one, 0.7, 1);
    FAIL("expected throw");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kDatasetTooSmall);
  }
  CHECK(split(d, 0.01, 1).calibration.size() == 1);
  CHECK(split(d, 0.99, 1).test.size() == 1);
}

TEST_CASE("csv round trip") {
  const TransIsoModel ti;
  Dataset d = sample_multiaxial(ti.stress_map(), { 50 }, 9);
  d.metadata["note"] = "round trip";
  const auto path = temp_path("roundtrip.csv");
  write_csv(d, path);
  const Dataset r = read_csv(path);
  REQUIRE(r.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(r.points[i].c == d.points[i].c);
    CHECK(r.points[i].t == d.points[i].t);
  }
  CHECK(r.metadata == d.metadata);

  SUBCASE("empty data section keeps metadata") {
    Dataset e;
    e.metadata["note"] = "empty";
    const auto p = temp_path("empty.csv");
    write_csv(e, p);
    const Dataset re = read_csv(p);
    CHECK(re.empty());
    CHECK(re.metadata["note"] == "empty");
  }

  SUBCASE("format errors") {
    const auto check_format = [](const std::string &text) {
      const auto p = temp_path("bad.csv");
      std::filesystem::remove(p.string() + ".json");
      std::ofstream(p) << text;
      try {
        read_csv(p);
        FAIL("expected throw");
      } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::kFormatError);
      }
    };
    check_format("C11,C22\n");
    check_format(std::string(kCsvHeader) + "\n1,1,1,0,0,0,0,0,0,0,0,x\n");
    check_format(std::string(kCsvHeader) + "\n1,1,1,0,0,0,0,0,0,0,0,nan\n");
    check_format(std::string(kCsvHeader) + "\n1,1,1,0,0,0,0,0,0,0,0\n");
  }

  SUBCASE("missing file") {
    try {
      read_csv(temp_path("does_not_exist.csv"));
      FAIL("expected throw");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::kIoError);
    }
  }
}
