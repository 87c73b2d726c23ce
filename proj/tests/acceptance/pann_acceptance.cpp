//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

// Acceptance checks. Prints one PASS/FAIL line per criterion; --only N runs
// a single one. The exit status is non-zero iff a selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "pann/calibrate.hpp"
#include "pann/cli.hpp"
#include "pann/loadcases.hpp"
#include "pann/verify.hpp"

using namespace pann;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string &s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

const MaterialSymmetry kIso = MaterialSymmetry::isotropic();

SplitDataset whole(Dataset d) {
  SplitDataset s;
  s.calibration = std::move(d);
  return s;
}

Dataset uniaxial_data(double lo, double hi, int count) {
  return path_dataset(NeoHookeModel().stress_map(), { LoadKind::kUniaxial, lo, hi, count, true });
}

SymTensor3 random_spd(std::mt19937_64 &rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  std::normal_distribution<double> n;
  const double a = std::exp(u(rng)), b = std::exp(u(rng)), c = std::exp(u(rng));
  return rotate(Rotation3::from_quaternion(n(rng), n(rng), n(rng), n(rng)),
                SymTensor3::diagonal(a * a, b * b, c * c));
}

double tangent_asymmetry(const Tangent6 &t) {
  double scale = 0, diff = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      scale = std::max(scale, std::abs(t[a][b]));
      diff = std::max(diff, std::abs(t[a][b] - t[b][a]));
    }
  return scale > 0 ? diff / scale : 0.0;
}

Outcome ac1() {
  Outcome o;
  const Stopwatch sw;
  CalibrationConfig cfg;
  const CalibrationResult r =
      calibrate(ModelVariant::kPann, kIso, { 4, { 4 }, true }, whole(uniaxial_data(0.8, 2, 30)), cfg);
  const double t = sw.seconds();
  o.require(r.stats.train_mse <= 1e-2, "train MSE <= 1e-2");
  o.require(t <= 120, "runtime <= 2 min");
  o.note("PANN train MSE " + sci(r.stats.train_mse) + " kPa^2, " + sci(t) + " s");
  return o;
}

Outcome ac2() {
  Outcome o;
  const SplitDataset data = whole(apply_offset(uniaxial_data(0.8, 2, 30), 100));
  CalibrationConfig cfg;
  const CalibrationResult p = calibrate(ModelVariant::kPann, kIso, { 4, { 4 }, true }, data, cfg);
  const SimpleFPCalibrationResult s = calibrate_simple_fp(4, data, cfg);
  const double tp = frobenius_norm(p.model.stress(SymTensor3::identity()));
  const double ts = frobenius_norm(simple_fp_stress(s.model, Tensor3::identity()));
  o.require(p.stats.train_mse >= 1e2 && p.stats.train_mse <= 1e4, "PANN MSE in [1e2, 1e4]");
  o.require(tp <= 1e-10, "|T_PANN(1)| <= 1e-10");
  o.require(s.stats.train_mse <= 10, "SimpleFP MSE <= 10");
  o.require(ts >= 50, "|T_simple(F=1)| >= 50");
  o.note("PANN MSE " + sci(p.stats.train_mse) + ", |T(1)| " + sci(tp) + "; SimpleFP MSE "
         + sci(s.stats.train_mse) + ", |T(1)| " + sci(ts));
  return o;
}

Outcome ac3() {
  Outcome o;
  const SplitDataset data = whole(uniaxial_data(0.8, 1.1, 15));
  CalibrationConfig cfg;
  cfg.max_iterations = 5000;
  const CalibrationResult pann = calibrate(ModelVariant::kPann, kIso, { 4, { 4 }, true }, data, cfg);
  const CalibrationResult basic =
      calibrate(ModelVariant::kBasic, kIso, { 4, { 4 }, false }, data, cfg);
  const SimpleFPCalibrationResult fp = calibrate_simple_fp(4, data, cfg);
  const NeoHookeModel nh;
  const LoadPath cases[] = { { LoadKind::kUniaxial, 0.8, 4, 50, true },
                             { LoadKind::kBiaxial, 0.8, 2, 50, true },
                             { LoadKind::kShear, 0, 2, 50, true } };
  for (const LoadPath &c: cases) {
    const Dataset e = path_dataset(nh.stress_map(), c);
    const double mp = loss(pann.model, e), mb = loss(basic.model, e);
    const double mf = loss_on_second_pk(fp.model, e);
    const std::string name(to_string(c.kind));
    o.require(10 * mp <= mf, name + " PANN 10x below SimpleFP");
    o.note(name + " PANN " + sci(mp) + " / basic " + sci(mb) + " / SimpleFP " + sci(mf));
  }
  return o;
}

Outcome ac4() {
  Outcome o;
  const Stopwatch sw;
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> x_dist(-3, 3), j_dist(0.05, 20);
  double worst_psi = 0, worst_t = 0, min_growth = INFINITY;
  std::size_t negative_weights = 0, convexity = 0, monotone = 0;
  for (bool iso: { true, false }) {
    const MaterialSymmetry sym = iso ? kIso : MaterialSymmetry::transversely_isotropic(2);
    for (int n = 0; n < 200; ++n) {
      const NetworkParams net =
          initialize_network({ sym.input_dim(), { 8 }, true }, 1000 * (iso ? 1 : 2) + n);
      const PannModel m(ModelVariant::kPann, sym, net);
      worst_psi = std::max(worst_psi, std::abs(m.energy(SymTensor3::identity())));
      worst_t = std::max(worst_t, frobenius_norm(m.stress(SymTensor3::identity())));
      const auto mask = net.weight_mask();
      for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k] && net.flat()[k] < 0)
          ++negative_weights;
      // Midpoint convexity and monotonicity of the network in its inputs,
      // and convexity of the growth term along J.
      for (int s = 0; s < 20; ++s) {
        std::vector<double> a(sym.input_dim()), b(a.size()), mid(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
          a[k] = x_dist(rng);
          b[k] = x_dist(rng);
          mid[k] = 0.5 * (a[k] + b[k]);
        }
        const double fa = forward(net, a), fb = forward(net, b);
        if (forward(net, mid) > 0.5 * (fa + fb) + 1e-12 * (1 + std::abs(fa) + std::abs(fb)))
          ++convexity;
        for (double g: input_gradient(net, a))
          if (g < 0)
            ++monotone;
        const double ja = j_dist(rng), jb = j_dist(rng);
        const double ga = growth_energy(ja), gb = growth_energy(jb);
        if (growth_energy(0.5 * (ja + jb)) > 0.5 * (ga + gb) + 1e-12 * (1 + ga + gb))
          ++convexity;
      }
      for (double l: { 1e-3, 1e3 })
        min_growth = std::min(min_growth, m.energy(SymTensor3::identity() * (l * l)));
    }
  }
  const double t = sw.seconds();
  o.require(worst_psi <= 1e-12, "psi(1) = 0 within 1e-12");
  o.require(worst_t <= 1e-10, "|T(1)| <= 1e-10");
  o.require(negative_weights == 0, "weights >= 0");
  o.require(convexity == 0 && monotone == 0, "midpoint convexity probe");
  o.require(min_growth > 1e10, "growth at lambda 1e-3 and 1e3");
  o.require(t <= 60, "runtime <= 1 min");
  o.note("400 draws: max |psi(1)| " + sci(worst_psi) + ", max |T(1)| " + sci(worst_t)
         + ", min psi at extreme lambda " + sci(min_growth) + " kPa, " + sci(t) + " s");
  return o;
}

Outcome ac5() {
  Outcome o;
  double worst_audit = 0, worst_sym = 0;
  const auto states = random_admissible_states(100, 55);
  const auto audit = [&](const EnergyMap &e, const StressMap &s) {
    worst_audit = std::max(worst_audit, gradient_audit(e, s, 100, 55).max_relative_deviation);
  };
  const NeoHookeModel nh;
  const TransIsoModel ti;
  audit(nh.energy_map(), nh.stress_map());
  audit(ti.energy_map(), ti.stress_map());
  for (bool iso: { true, false }) {
    const MaterialSymmetry sym = iso ? kIso : MaterialSymmetry::transversely_isotropic(2);
    for (ModelVariant v: { ModelVariant::kBasic, ModelVariant::kPolyconvex,
                           ModelVariant::kPolyconvexGrowth, ModelVariant::kPann }) {
      const PannModel m(v, sym,
                        initialize_network({ sym.input_dim(), { 8 }, variant_constrained(v) }, 5));
      audit(m.energy_map(), m.stress_map());
      for (const SymTensor3 &c: states)
        worst_sym = std::max(worst_sym, tangent_asymmetry(m.tangent(c)));
    }
  }
  const Tangent6 d = finite_difference_tangent(nh.stress_map(), SymTensor3::identity());
  const double mu = nh.params().mu(), lam = nh.params().lambda();
  const double lame = std::max({ std::abs(d[0][0] - (lam + 2 * mu)) / (lam + 2 * mu),
                                 std::abs(d[0][1] - lam) / lam, std::abs(d[3][3] - mu) / mu });
  o.require(worst_audit <= 1e-5, "gradient audit <= 1e-5");
  o.require(worst_sym <= 1e-4, "tangent major symmetry <= 1e-4");
  o.require(lame <= 1e-3, "Neo-Hooke tangent matches Lame moduli");
  o.note("audit " + sci(worst_audit) + ", tangent asymmetry " + sci(worst_sym)
         + ", Lame deviation " + sci(lame));
  return o;
}

Outcome ac6() {
  Outcome o;
  const double g331 = admissibility_gamma(3, 3, 1);
  const double g123 = admissibility_gamma(6, 11, 6);
  o.require(g331 == 0, "Gamma(3, 3, 1) = 0");
  o.require(std::abs(g123 + 4.0 / 108) <= 1e-12, "Gamma from (1, 2, 3) = -4/108");
  std::mt19937_64 rng(606);
  std::size_t rejected = 0, accepted = 0;
  for (int n = 0; n < 10000; ++n)
    if (!is_admissible(random_spd(rng, 0.1, 10)))
      ++rejected;
  std::uniform_real_distribution<double> u(0.1, 5);
  std::normal_distribution<double> q;
  for (int n = 0; n < 1000; ++n) {
    const SymTensor3 c = rotate(Rotation3::from_quaternion(q(rng), q(rng), q(rng), q(rng)),
                                SymTensor3::diagonal(-u(rng), -u(rng), u(rng)));
    if (is_admissible(c))
      ++accepted;
  }
  o.require(rejected == 0, "all random SPD tensors pass");
  o.require(accepted == 0, "all two-negative-eigenvalue tensors fail");
  o.note("Gamma(1,2,3) " + sci(g123) + ", SPD rejected " + std::to_string(rejected)
         + "/10000, indefinite accepted " + std::to_string(accepted) + "/1000");
  return o;
}

Outcome ac7() {
  Outcome o;
  const Stopwatch sw;
  const NonNegReport nh = volumetric_scan(NeoHookeModel().energy_map(), 0.1, 10, 1000);
  o.require(nh.violations == 0, "Neo-Hooke scan has no negative energy");
  o.require(nh.min_energy == 0 && nh.argmin == SymTensor3::identity(),
            "Neo-Hooke minimum 0 at lambda = 1");

  CalibrationConfig cfg;
  const CalibrationResult r = calibrate(ModelVariant::kPann, kIso, { 4, { 4 }, true },
                                        whole(uniaxial_data(0.8, 2, 30)), cfg);
  const NonNegReport p = nonneg_scan_iso(r.model, 0.1, 10, 1000);
  o.require(p.hypothesis && p.hypothesis->holds, "PANN hypothesis check");
  o.require(p.violations == 0, "calibrated PANN scan");

  TransIsoScanOptions to;
  to.samples = 200000;
  const NonNegReport ti = nonneg_scan_transiso(TransIsoModel().energy_map(), to);
  o.require(ti.violations == 0, "transversely isotropic sweep");
  const double t = sw.seconds();
  o.require(t <= 180, "runtime <= 3 min");
  o.note("NH min " + sci(nh.min_energy) + "; PANN " + p.sweep + " min " + sci(p.min_energy)
         + "; TI " + std::to_string(ti.samples) + " samples min " + sci(ti.min_energy) + ", "
         + std::to_string(ti.violations) + " violations; " + sci(t) + " s");
  return o;
}

Outcome ac8(int max_iterations) {
  Outcome o;
  const Stopwatch sw;
  for (bool iso: { true, false }) {
    const MaterialSymmetry sym = iso ? kIso : MaterialSymmetry::transversely_isotropic(2);
    const StressMap ref = iso ? NeoHookeModel().stress_map() : TransIsoModel().stress_map();
    const Dataset data = sample_multiaxial(ref, MultiaxialSpec {}, 8);
    LadderConfig cfg;
    cfg.seed = 8;
    cfg.architecture = { sym.input_dim(), { 8 }, true };
    cfg.calibration.max_iterations = max_iterations;
    cfg.calibration.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const LadderResult res = variant_ladder_study(sym, data, cfg);
    const double bound = iso ? 1e-3 : 1e-2;
    std::string medians;
    for (const LadderEntry &e: res.entries) {
      const std::string name(to_string(e.variant));
      o.require(e.stats.median <= bound,
                std::string(iso ? "iso " : "transiso ") + name + " median <= " + sci(bound));
      medians += " " + name + "=" + sci(e.stats.median);
    }
    if (!iso)
      o.require(res.entries.front().stats.median <= res.entries.back().stats.median,
                "transiso basic median <= pann median");
    o.note(std::string(iso ? "iso" : "transiso") + " medians" + medians);
  }
  const double t = sw.seconds();
  o.require(t <= 1800, "runtime <= 30 min");
  o.note(sci(t) + " s");
  return o;
}

std::string slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome ac9() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / ("pann_ac9_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const auto run_all = [&](const cli::ExperimentConfig &c, const fs::path &out) {
    cli::cmd_gen_data(c, out);
    cli::cmd_calibrate(c, out / "data.csv", out);
    cli::cmd_evaluate(c, out / "model.json", out / "data.csv", out);
    cli::cmd_verify(c, out / "model.json", out);
    cli::cmd_sweep(c, std::nullopt, out / "sweep");
  };
  const char *configs[] = {
    R"({ "seed": 9, "architecture": { "hidden_layers": [4] },
         "data": { "paths": [ { "kind": "uniaxial", "lo": 0.8, "hi": 2.0, "count": 30 } ],
                   "noise_sigma": 1 },
         "calibration": { "restarts": 6 },
         "evaluate": { "paths": [ { "kind": "uniaxial", "lo": 0.5, "hi": 4.0, "count": 50 },
                                  { "kind": "shear", "lo": 0, "hi": 2, "count": 20 } ] },
         "sweep": { "runs": 2 } })",
    R"({ "seed": 10, "symmetry": { "type": "transversely_isotropic", "beta": 2 },
         "architecture": { "hidden_layers": [8] }, "reference": { "model": "transiso" },
         "data": { "source": "multiaxial", "multiaxial": { "count": 120 } },
         "split_fraction": 0.7, "calibration": { "restarts": 3, "max_iterations": 200 },
         "verify": { "transiso_samples": 20000 }, "sweep": { "runs": 2 } })",
  };
  std::size_t compared = 0, differing = 0;
  for (int k = 0; k < 2; ++k) {
    cli::ExperimentConfig c = cli::config_from_json(nlohmann::json::parse(configs[k]));
    const fs::path a = root / std::to_string(k) / "a", b = root / std::to_string(k) / "b";
    run_all(c, a);
    c.threads = 2;
    c.resolve();
    run_all(c, b);
    for (const auto &entry: fs::recursive_directory_iterator(a)) {
      if (!entry.is_regular_file())
        continue;
      const fs::path other = b / fs::relative(entry.path(), a);
      ++compared;
      if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
        ++differing;
        o.note("differs: " + fs::relative(entry.path(), root).generic_string());
      }
    }
  }
  fs::remove_all(root);
  o.require(compared > 0 && differing == 0, "byte-identical reruns");
  o.note(std::to_string(compared) + " files compared across reruns with 1 and 2 threads");
  return o;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app { "pann acceptance checks" };
  int only = 0;
  int ac8_iterations = 1000;
  app.add_option("--only", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_option("--ac8-iterations", ac8_iterations, "Iteration cap per restart in AC8")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> checks {
    ac1, ac2, ac3, ac4, ac5, ac6, ac7, [&] { return ac8(ac8_iterations); }, ac9,
  };
  bool all = true;
  for (int k = 1; k <= 9; ++k) {
    if (only && only != k)
      continue;
    Outcome r;
    try {
      r = checks[k - 1]();
    } catch (const std::exception &e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    std::printf("AC%d %s  %s\n", k, r.pass ? "PASS" : "FAIL", r.detail.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
