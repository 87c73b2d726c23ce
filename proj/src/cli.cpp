//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "pann/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "pann/errors.hpp"
#include "pann/verify.hpp"

namespace pann::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void check_keys(const json &j, std::initializer_list<const char *> allowed,
                const std::string &where) {
  if (!j.is_object())
    throw Error(ErrorCode::kConfigError, where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto &item: j.items())
    if (!ok.count(item.key()))
      throw Error(ErrorCode::kConfigError,
                  "unknown key '" + item.key() + "' in " + where);
}

template <class T>
void read_opt(const json &j, const char *key, T &out) {
  if (j.contains(key))
    j.at(key).get_to(out);
}

json load_path_json(const LoadPath &p) {
  return { { "kind", to_string(p.kind) },
           { "lo", p.lo },
           { "hi", p.hi },
           { "count", p.count },
           { "duplicate_identity", p.duplicate_identity } };
}

LoadPath load_path_from_json(const json &j) {
  check_keys(j, { "kind", "lo", "hi", "count", "duplicate_identity" }, "load path");
  LoadPath p;
  if (j.contains("kind"))
    p.kind = parse_load_kind(j.at("kind").get<std::string>());
  if (p.kind == LoadKind::kShear) {
    p.lo = 0;
    p.hi = 1;
  }
  read_opt(j, "lo", p.lo);
  read_opt(j, "hi", p.hi);
  read_opt(j, "count", p.count);
  read_opt(j, "duplicate_identity", p.duplicate_identity);
  if (p.count < 1 || !(p.hi >= p.lo))
    throw Error(ErrorCode::kConfigError, "load path needs count >= 1 and hi >= lo");
  if (p.kind != LoadKind::kShear && !(p.lo > 0))
    throw Error(ErrorCode::kConfigError, "stretch paths need lo > 0");
  return p;
}

json paths_json(const std::vector<LoadPath> &paths) {
  json a = json::array();
  for (const LoadPath &p: paths)
    a.push_back(load_path_json(p));
  return a;
}

std::vector<LoadPath> paths_from_json(const json &j) {
  if (!j.is_array())
    throw Error(ErrorCode::kConfigError, "paths must be an array");
  std::vector<LoadPath> out;
  for (const json &e: j)
    out.push_back(load_path_from_json(e));
  return out;
}

json reference_json(const ReferenceModel &r) {
  if (r.kind == ReferenceKind::kNeoHooke)
    return { { "model", "neo_hooke" },
             { "youngs_modulus", r.neo_hooke.youngs_modulus },
             { "poisson_ratio", r.neo_hooke.poisson_ratio } };
  const TransIsoParams &p = r.transiso;
  return { { "model", "transiso" }, { "beta", p.beta },     { "alpha1", p.alpha1 },
           { "alpha2", p.alpha2 },  { "delta1", p.delta1 }, { "delta2", p.delta2 },
           { "alpha4", p.alpha4 },  { "eta1", p.eta1 } };
}

ReferenceModel reference_from_json(const json &j) {
  ReferenceModel r;
  const std::string model = j.value("model", std::string("neo_hooke"));
  if (model == "neo_hooke") {
    check_keys(j, { "model", "youngs_modulus", "poisson_ratio" }, "reference");
    read_opt(j, "youngs_modulus", r.neo_hooke.youngs_modulus);
    read_opt(j, "poisson_ratio", r.neo_hooke.poisson_ratio);
    r.neo_hooke.validate();
  } else if (model == "transiso") {
    check_keys(j, { "model", "beta", "alpha1", "alpha2", "delta1", "delta2", "alpha4", "eta1" },
               "reference");
    r.kind = ReferenceKind::kTransIso;
    TransIsoParams &p = r.transiso;
    read_opt(j, "beta", p.beta);
    read_opt(j, "alpha1", p.alpha1);
    read_opt(j, "alpha2", p.alpha2);
    read_opt(j, "delta1", p.delta1);
    read_opt(j, "delta2", p.delta2);
    read_opt(j, "alpha4", p.alpha4);
    read_opt(j, "eta1", p.eta1);
    p.validate();
  } else {
    throw Error(ErrorCode::kConfigError, "unknown reference model '" + model + "'");
  }
  return r;
}

json data_json(const DataSpec &d) {
  json j { { "source", d.source == DataSource::kPaths ? "paths" : "multiaxial" },
           { "offset", d.offset },
           { "noise_sigma", d.noise_sigma } };
  if (d.source == DataSource::kPaths)
    j["paths"] = paths_json(d.paths);
  else
    j["multiaxial"] = { { "count", d.multiaxial.count },
                        { "stretch_lo", d.multiaxial.stretch_lo },
                        { "stretch_hi", d.multiaxial.stretch_hi },
                        { "shear_lo", d.multiaxial.shear_lo },
                        { "shear_hi", d.multiaxial.shear_hi } };
  j["filter_eta"] = d.filter_eta ? json(*d.filter_eta) : json();
  return j;
}

DataSpec data_from_json(const json &j) {
  check_keys(j, { "source", "paths", "multiaxial", "filter_eta", "offset", "noise_sigma" },
             "data");
  DataSpec d;
  const std::string source = j.value("source", std::string("paths"));
  if (source == "multiaxial")
    d.source = DataSource::kMultiaxial;
  else if (source != "paths")
    throw Error(ErrorCode::kConfigError, "unknown data source '" + source + "'");
  if (j.contains("paths"))
    d.paths = paths_from_json(j.at("paths"));
  if (j.contains("multiaxial")) {
    const json &m = j.at("multiaxial");
    check_keys(m, { "count", "stretch_lo", "stretch_hi", "shear_lo", "shear_hi" },
               "data.multiaxial");
    read_opt(m, "count", d.multiaxial.count);
    read_opt(m, "stretch_lo", d.multiaxial.stretch_lo);
    read_opt(m, "stretch_hi", d.multiaxial.stretch_hi);
    read_opt(m, "shear_lo", d.multiaxial.shear_lo);
    read_opt(m, "shear_hi", d.multiaxial.shear_hi);
  }
  if (j.contains("filter_eta") && !j.at("filter_eta").is_null())
    d.filter_eta = j.at("filter_eta").get<double>();
  read_opt(j, "offset", d.offset);
  read_opt(j, "noise_sigma", d.noise_sigma);
  if (d.filter_eta && !(*d.filter_eta > 0 && *d.filter_eta < 1))
    throw Error(ErrorCode::kConfigError, "filter_eta must lie in (0, 1)");
  if (!(d.noise_sigma >= 0))
    throw Error(ErrorCode::kConfigError, "noise_sigma must be >= 0");
  if (d.source == DataSource::kPaths && d.paths.empty())
    throw Error(ErrorCode::kConfigError, "data.paths is empty");
  return d;
}

std::vector<ModelVariant> variants_from_json(const json &j) {
  std::vector<ModelVariant> out;
  for (const json &e: j)
    out.push_back(parse_variant(e.get<std::string>()));
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  f << text;
  if (!f)
    throw Error(ErrorCode::kIoError, "write to " + path.string() + " failed");
}

void write_json(const fs::path &path, const json &j) { write_text(path, j.dump(2) + "\n"); }

json read_json(const fs::path &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kFormatError, path.string() + ": " + e.what());
  }
}

void make_dir(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
}

// A calibrated model of either family.
struct LoadedModel {
  std::optional<PannModel> pann;
  std::optional<SimpleFPModel> simple;

  SymTensor3 stress(const SymTensor3 &c) const {
    if (pann)
      return pann->stress(c);
    const Tensor3 t = simple->second_pk(c);
    return { t(0, 0),
             t(1, 1),
             t(2, 2),
             0.5 * (t(0, 1) + t(1, 0)),
             0.5 * (t(0, 2) + t(2, 0)),
             0.5 * (t(1, 2) + t(2, 1)) };
  }
};

LoadedModel load_model(const fs::path &path) {
  const json j = read_json(path);
  try {
    const json &m = j.contains("model") ? j.at("model") : j;
    const std::string kind = m.at("kind").get<std::string>();
    LoadedModel out;
    if (kind == "pann_model")
      out.pann = pann_model_from_json(m);
    else if (kind == "simple_fp_model")
      out.simple = m.get<SimpleFPModel>();
    else
      throw Error(ErrorCode::kFormatError, "unknown model kind '" + kind + "'");
    return out;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kFormatError, path.string() + ": " + e.what());
  }
}

// Mean squared and relative error of the full second Piola-Kirchhoff stress
// of the F -> P baseline.
std::pair<double, double> simple_fp_errors(const SimpleFPModel &m, const Dataset &d) {
  if (d.empty())
    throw Error(ErrorCode::kEmptyDataset, "dataset has no tuples");
  double num = 0, den = 0;
  for (const DataPoint &p: d.points) {
    num = std::max(num, frobenius_norm(Tensor3::from(p.t) - m.second_pk(p.c)));
    den = std::max(den, frobenius_norm(p.t));
  }
  if (!(den > 0))
    throw Error(ErrorCode::kAllZeroStress, "every data stress is zero");
  return { loss_on_second_pk(m, d), num / den };
}

void append_sym(std::string &row, const SymTensor3 &t) {
  for (int k = 0; k < 6; ++k) {
    row += ',';
    row += fmt(t.components()[k]);
  }
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
  case ErrorCode::kIoError:
  case ErrorCode::kFormatError:
    return kExitIo;
  case ErrorCode::kNonFiniteLoss:
    return kExitCalibration;
  default:
    return kExitConfig;
  }
}

StressMap ReferenceModel::stress_map() const {
  if (kind == ReferenceKind::kNeoHooke)
    return NeoHookeModel(neo_hooke).stress_map();
  return TransIsoModel(transiso).stress_map();
}

void ExperimentConfig::resolve() {
  if (threads < 1)
    throw Error(ErrorCode::kConfigError, "threads must be >= 1");
  if (!(split_fraction > 0 && split_fraction <= 1))
    throw Error(ErrorCode::kConfigError, "split_fraction must lie in (0, 1]");
  if (simple_fp_nodes < 1)
    throw Error(ErrorCode::kConfigError, "simple_fp_nodes must be >= 1");
  if (sweep.runs < 1 || !(sweep.calibration_fraction > 0 && sweep.calibration_fraction < 1))
    throw Error(ErrorCode::kConfigError, "sweep needs runs >= 1 and a fraction in (0, 1)");
  for (ModelVariant v: sweep.variants)
    if (v == ModelVariant::kSimpleFP)
      throw Error(ErrorCode::kConfigError, "the sweep covers invariant-based variants only");
  architecture.input_dim = symmetry.input_dim();
  if (variant != ModelVariant::kSimpleFP)
    architecture.constrain_weights = variant_constrained(variant);
  calibration.seed = seed;
  calibration.threads = threads;
  try {
    architecture.validate();
    calibration.validate();
  } catch (const Error &e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
}

ExperimentConfig config_from_json(const json &j) {
  try {
    check_keys(j,
               { "seed", "symmetry", "variant", "architecture", "simple_fp_nodes", "reference",
                 "data", "split_fraction", "calibration", "evaluate", "verify", "sweep",
                 "threads" },
               "config");
    ExperimentConfig c;
    read_opt(j, "seed", c.seed);
    if (j.contains("symmetry"))
      c.symmetry = symmetry_from_json(j.at("symmetry"));
    if (j.contains("variant"))
      c.variant = parse_variant(j.at("variant").get<std::string>());
    if (j.contains("architecture")) {
      const json &a = j.at("architecture");
      check_keys(a, { "hidden_layers", "input_dim", "constrain_weights" }, "architecture");
      read_opt(a, "hidden_layers", c.architecture.hidden_layers);
    }
    read_opt(j, "simple_fp_nodes", c.simple_fp_nodes);
    if (j.contains("reference"))
      c.reference = reference_from_json(j.at("reference"));
    if (j.contains("data"))
      c.data = data_from_json(j.at("data"));
    read_opt(j, "split_fraction", c.split_fraction);
    if (j.contains("calibration")) {
      check_keys(j.at("calibration"),
                 { "restarts", "max_iterations", "gradient_tolerance", "loss_floor", "seed",
                   "memory", "optimizer" },
                 "calibration");
      c.calibration = j.at("calibration").get<CalibrationConfig>();
    }
    if (j.contains("evaluate")) {
      check_keys(j.at("evaluate"), { "paths" }, "evaluate");
      if (j.at("evaluate").contains("paths"))
        c.evaluate_paths = paths_from_json(j.at("evaluate").at("paths"));
    }
    if (j.contains("verify")) {
      const json &v = j.at("verify");
      check_keys(v,
                 { "lambda_lo", "lambda_hi", "volumetric_points", "fallback_per_axis",
                   "transiso_samples", "audit_states", "audit_tolerance" },
                 "verify");
      VerifySettings &s = c.verify;
      read_opt(v, "lambda_lo", s.lambda_lo);
      read_opt(v, "lambda_hi", s.lambda_hi);
      read_opt(v, "volumetric_points", s.volumetric_points);
      read_opt(v, "fallback_per_axis", s.fallback_per_axis);
      read_opt(v, "transiso_samples", s.transiso_samples);
      read_opt(v, "audit_states", s.audit_states);
      read_opt(v, "audit_tolerance", s.audit_tolerance);
    }
    if (j.contains("sweep")) {
      const json &s = j.at("sweep");
      check_keys(s, { "runs", "calibration_fraction", "variants" }, "sweep");
      read_opt(s, "runs", c.sweep.runs);
      read_opt(s, "calibration_fraction", c.sweep.calibration_fraction);
      if (s.contains("variants"))
        c.sweep.variants = variants_from_json(s.at("variants"));
    }
    read_opt(j, "threads", c.threads);
    c.resolve();
    return c;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kConfigError, e.what());
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kConfigError)
      throw;
    throw Error(ErrorCode::kConfigError, e.what());
  }
}

json config_to_json(const ExperimentConfig &c) {
  json variants = json::array();
  for (ModelVariant v: c.sweep.variants)
    variants.push_back(to_string(v));
  const VerifySettings &v = c.verify;
  return {
    { "seed", c.seed },
    { "symmetry", c.symmetry },
    { "variant", to_string(c.variant) },
    { "architecture", { { "hidden_layers", c.architecture.hidden_layers } } },
    { "simple_fp_nodes", c.simple_fp_nodes },
    { "reference", reference_json(c.reference) },
    { "data", data_json(c.data) },
    { "split_fraction", c.split_fraction },
    { "calibration", c.calibration },
    { "evaluate", { { "paths", paths_json(c.evaluate_paths) } } },
    { "verify",
      { { "lambda_lo", v.lambda_lo },
        { "lambda_hi", v.lambda_hi },
        { "volumetric_points", v.volumetric_points },
        { "fallback_per_axis", v.fallback_per_axis },
        { "transiso_samples", v.transiso_samples },
        { "audit_states", v.audit_states },
        { "audit_tolerance", v.audit_tolerance } } },
    { "sweep",
      { { "runs", c.sweep.runs },
        { "calibration_fraction", c.sweep.calibration_fraction },
        { "variants", variants } } },
  };
}

ExperimentConfig load_config(const fs::path &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw Error(ErrorCode::kIoError, "cannot open config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kConfigError, path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

std::string version() { return PANN_VERSION; }

json artifact_header(const ExperimentConfig &c) {
  return { { "pann_version", version() }, { "config", config_to_json(c) } };
}

Dataset build_dataset(const ExperimentConfig &config) {
  const DataSpec &spec = config.data;
  const StressMap ref = config.reference.stress_map();
  const json source = reference_json(config.reference);
  Dataset d;
  if (spec.source == DataSource::kMultiaxial) {
    d = sample_multiaxial(ref, spec.multiaxial, config.seed);
    d.metadata["source"] = source;
  } else {
    json loads = json::array();
    for (const LoadPath &p: spec.paths) {
      Dataset part = path_dataset(ref, p, source);
      loads.push_back(part.metadata["load"]);
      d.points.insert(d.points.end(), part.points.begin(), part.points.end());
    }
    d.metadata["source"] = source;
    d.metadata["loads"] = loads;
  }
  if (spec.filter_eta) {
    const MaterialSymmetry sym = config.reference.kind == ReferenceKind::kTransIso
                                     ? MaterialSymmetry::transversely_isotropic(
                                           config.reference.transiso.beta)
                                     : MaterialSymmetry::isotropic();
    d = filter_by_invariants(d, *spec.filter_eta, sym);
  }
  if (spec.offset != 0)
    d = apply_offset(std::move(d), spec.offset);
  if (spec.noise_sigma > 0)
    d = apply_noise(std::move(d), spec.noise_sigma, config.seed + 1);
  return d;
}

CommandOutput cmd_gen_data(const ExperimentConfig &config, const fs::path &out) {
  make_dir(out);
  Dataset d = build_dataset(config);
  const json header = artifact_header(config);
  for (const auto &item: header.items())
    d.metadata[item.key()] = item.value();
  const fs::path path = out / "data.csv";
  write_csv(d, path);
  CommandOutput r;
  r.files = { path, fs::path(path.string() + ".json") };
  r.summary = "wrote " + std::to_string(d.size()) + " tuples to " + path.string();
  return r;
}

CommandOutput cmd_calibrate(const ExperimentConfig &config, const fs::path &data_path,
                            const fs::path &out) {
  const Dataset data = read_csv(data_path);
  if (data.empty())
    throw Error(ErrorCode::kEmptyDataset, data_path.string() + " has no tuples");
  SplitDataset sd;
  if (config.split_fraction < 1)
    sd = split(data, config.split_fraction, config.seed);
  else
    sd.calibration = data;
  make_dir(out);

  json model_file = artifact_header(config);
  json report = artifact_header(config);
  report["data"] = { { "path", data_path.filename().generic_string() },
                     { "tuples", data.size() },
                     { "calibration_tuples", sd.calibration.size() },
                     { "test_tuples", sd.test.size() } };
  report["variant"] = to_string(config.variant);
  double train_mse = 0;
  if (config.variant == ModelVariant::kSimpleFP) {
    const SimpleFPCalibrationResult res =
        calibrate_simple_fp(config.simple_fp_nodes, sd, config.calibration);
    model_file["model"] = res.model;
    report["stats"] = res.stats;
    const auto [mse_t, eps] = simple_fp_errors(res.model, data);
    report["mse_second_pk"] = mse_t;
    report["epsilon"] = eps;
    const Tensor3 p0 = simple_fp_stress(res.model, Tensor3::identity());
    report["stress_norm_at_identity"] = frobenius_norm(p0);
    train_mse = res.stats.train_mse;
  } else {
    const CalibrationResult res = calibrate(config.variant, config.symmetry,
                                            config.architecture, sd, config.calibration);
    model_file["model"] = res.model;
    report["stats"] = res.stats;
    report["epsilon"] = relative_error(res.model, data);
    report["stress_norm_at_identity"] =
        frobenius_norm(res.model.stress(SymTensor3::identity()));
    report["energy_at_identity"] = res.model.energy(SymTensor3::identity());
    train_mse = res.stats.train_mse;
  }
  const fs::path model_path = out / "model.json", report_path = out / "calibration_report.json";
  write_json(model_path, model_file);
  write_json(report_path, report);
  CommandOutput r;
  r.files = { model_path, report_path };
  r.summary = std::string(to_string(config.variant)) + " train MSE " + fmt(train_mse)
              + " kPa^2";
  return r;
}

CommandOutput cmd_evaluate(const ExperimentConfig &config, const fs::path &model_path,
                           const std::optional<fs::path> &data_path, const fs::path &out) {
  const LoadedModel model = load_model(model_path);
  make_dir(out);
  CommandOutput r;
  json report = artifact_header(config);
  report["model"] = model_path.filename().generic_string();

  if (data_path) {
    const Dataset data = read_csv(*data_path);
    json d { { "path", data_path->filename().generic_string() }, { "tuples", data.size() } };
    if (model.pann) {
      d["mse"] = loss(*model.pann, data);
      d["epsilon"] = relative_error(*model.pann, data);
    } else {
      const auto [mse, eps] = simple_fp_errors(*model.simple, data);
      d["mse"] = mse;
      d["epsilon"] = eps;
    }
    report["data"] = d;
  }

  const StressMap ref = config.reference.stress_map();
  json curves = json::array();
  for (std::size_t k = 0; k < config.evaluate_paths.size(); ++k) {
    const LoadPath &path = config.evaluate_paths[k];
    const std::vector<LoadPoint> pts = run_path(ref, path);
    std::string csv = "control,lateral_stretch,C11,C22,C33,C12,C13,C23,"
                      "T11,T22,T33,T12,T13,T23,"
                      "T11_ref,T22_ref,T33_ref,T12_ref,T13_ref,T23_ref,psi\n";
    Dataset curve;
    double se = 0;
    for (const LoadPoint &p: pts) {
      const SymTensor3 t = model.stress(p.c);
      std::string row = fmt(p.control) + "," + fmt(p.lateral_stretch);
      append_sym(row, p.c);
      append_sym(row, t);
      append_sym(row, p.t);
      row += ',';
      if (model.pann)
        row += fmt(model.pann->energy(p.c));
      csv += row + "\n";
      curve.points.push_back({ p.c, p.t });
      const SymTensor3 diff = t - p.t;
      se += contract(diff, diff);
    }
    double mse = se / static_cast<double>(pts.size());
    if (model.simple)
      mse = simple_fp_errors(*model.simple, curve).first;
    const fs::path file =
        out / ("curve_" + std::to_string(k) + "_" + std::string(to_string(path.kind)) + ".csv");
    write_text(file, csv);
    json sidecar = artifact_header(config);
    sidecar["path"] = load_path_json(path);
    write_json(file.string() + ".json", sidecar);
    r.files.push_back(file);
    r.files.push_back(file.string() + ".json");
    curves.push_back({ { "file", file.filename().generic_string() },
                       { "path", load_path_json(path) },
                       { "points", pts.size() },
                       { "mse", mse } });
  }
  report["curves"] = curves;
  const fs::path report_path = out / "evaluation_report.json";
  write_json(report_path, report);
  r.files.push_back(report_path);
  r.summary = "evaluated " + std::to_string(curves.size()) + " load paths";
  if (report.contains("data"))
    r.summary += ", epsilon " + fmt(report["data"]["epsilon"].get<double>());
  return r;
}

CommandOutput cmd_verify(const ExperimentConfig &config, const fs::path &model_path,
                         const fs::path &out) {
  const LoadedModel loaded = load_model(model_path);
  if (!loaded.pann)
    throw Error(ErrorCode::kConfigError, "verify needs an invariant-based model");
  const PannModel &m = *loaded.pann;
  const VerifySettings &s = config.verify;
  make_dir(out);

  NonNegReport scan;
  if (m.symmetry().is_isotropic()) {
    scan = nonneg_scan_iso(m, s.lambda_lo, s.lambda_hi, s.volumetric_points,
                           s.fallback_per_axis);
  } else {
    TransIsoScanOptions o;
    o.lambda_lo = s.lambda_lo;
    o.lambda_hi = s.lambda_hi;
    o.samples = s.transiso_samples;
    o.seed = config.seed;
    scan = nonneg_scan_transiso(m.energy_map(), o);
  }
  const GradientAudit audit =
      gradient_audit(m.energy_map(), m.stress_map(), s.audit_states, config.seed);

  // Major symmetry of the tangent on the audit states.
  double asym = 0;
  for (const SymTensor3 &c: random_admissible_states(s.audit_states, config.seed)) {
    const Tangent6 t = m.tangent(c);
    double scale = 0, diff = 0;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        scale = std::max(scale, std::abs(t[a][b]));
        diff = std::max(diff, std::abs(t[a][b] - t[b][a]));
      }
    asym = std::max(asym, scale > 0 ? diff / scale : 0.0);
  }

  const bool audit_ok = audit.max_relative_deviation <= s.audit_tolerance;
  json report = artifact_header(config);
  report["model"] = model_path.filename().generic_string();
  report["nonnegativity"] = scan;
  report["gradient_audit"] = audit;
  report["gradient_audit"]["tolerance"] = s.audit_tolerance;
  report["gradient_audit"]["passed"] = audit_ok;
  report["tangent_major_symmetry"] = asym;
  report["passed"] = scan.violations == 0 && audit_ok;

  const fs::path path = out / "verify_report.json";
  write_json(path, report);
  CommandOutput r;
  r.files = { path };
  r.exit_code = report["passed"].get<bool>() ? kExitOk : kExitViolation;
  r.summary = std::to_string(scan.violations) + " energy violations in "
              + std::to_string(scan.samples) + " states, gradient deviation "
              + fmt(audit.max_relative_deviation);
  return r;
}

CommandOutput cmd_sweep(const ExperimentConfig &config,
                        const std::optional<fs::path> &data_path, const fs::path &out) {
  const Dataset data = data_path ? read_csv(*data_path) : build_dataset(config);
  make_dir(out);
  LadderConfig lc;
  lc.runs = config.sweep.runs;
  lc.calibration_fraction = config.sweep.calibration_fraction;
  lc.seed = config.seed;
  lc.architecture = config.architecture;
  lc.calibration = config.calibration;
  lc.variants = config.sweep.variants;
  const LadderResult res = variant_ladder_study(config.symmetry, data, lc);

  CommandOutput r;
  for (const LadderEntry &e: res.entries) {
    const fs::path file = out / ("epsilon_" + std::string(to_string(e.variant)) + ".csv");
    write_text(file, epsilon_csv(e.stats.values));
    json sidecar = artifact_header(config);
    sidecar["variant"] = to_string(e.variant);
    write_json(file.string() + ".json", sidecar);
    r.files.push_back(file);
    r.files.push_back(file.string() + ".json");
  }
  json summary = artifact_header(config);
  summary["data"] = data_path ? json(data_path->filename().generic_string()) : json("generated");
  summary["tuples"] = data.size();
  summary["ladder"] = res;
  json order = json::array();
  std::vector<const LadderEntry *> sorted;
  for (const LadderEntry &e: res.entries)
    sorted.push_back(&e);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto *a, auto *b) {
    return a->stats.median < b->stats.median;
  });
  for (const LadderEntry *e: sorted)
    order.push_back(to_string(e->variant));
  summary["median_ordering"] = order;
  const fs::path path = out / "sweep_summary.json";
  write_json(path, summary);
  r.files.push_back(path);
  r.summary = "swept " + std::to_string(res.entries.size()) + " variants x "
              + std::to_string(lc.runs) + " runs";
  return r;
}

}  // namespace pann::cli
