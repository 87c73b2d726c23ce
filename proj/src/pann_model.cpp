//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "pann/pann_model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "pann/errors.hpp"

namespace pann {

std::string_view to_string(ModelVariant v) {
  switch (v) {
  case ModelVariant::kBasic:
    return "basic";
  case ModelVariant::kPolyconvex:
    return "polyconvex";
  case ModelVariant::kPolyconvexGrowth:
    return "polyconvex_growth";
  case ModelVariant::kPann:
    return "pann";
  case ModelVariant::kSimpleFP:
    return "simple_fp";
  }
  return "?";
}

ModelVariant parse_variant(std::string_view s) {
  if (s == "basic" || s == "i")
    return ModelVariant::kBasic;
  if (s == "polyconvex" || s == "ii")
    return ModelVariant::kPolyconvex;
  if (s == "polyconvex_growth" || s == "iii")
    return ModelVariant::kPolyconvexGrowth;
  if (s == "pann" || s == "iv")
    return ModelVariant::kPann;
  if (s == "simple_fp")
    return ModelVariant::kSimpleFP;
  throw Error(ErrorCode::kConfigError,
              "unknown model variant '" + std::string(s) + "'");
}

bool variant_constrained(ModelVariant v) {
  return v == ModelVariant::kPolyconvex || v == ModelVariant::kPolyconvexGrowth
         || v == ModelVariant::kPann;
}

bool variant_has_growth(ModelVariant v) {
  return v == ModelVariant::kPolyconvexGrowth || v == ModelVariant::kPann;
}

bool variant_normalized(ModelVariant v) { return v == ModelVariant::kPann; }

double growth_energy(double j) {
  if (!(j > 0))
    throw Error(ErrorCode::kNonPositiveJ, "growth term needs J > 0");
  const double s = j + 1.0 / j - 2.0;
  return s * s;
}

SymTensor3 growth_stress(double j, const SymTensor3 &c_inv) {
  if (!(j > 0))
    throw Error(ErrorCode::kNonPositiveJ, "growth term needs J > 0");
  const double s = j + 1.0 / j - 2.0;
  return (2.0 * s * (1.0 - 1.0 / (j * j)) * j) * c_inv;
}

NormalizationConstants
normalization_from_gradient(const MaterialSymmetry &sym,
                            std::span<const double> g) {
  NormalizationConstants k;
  if (sym.is_isotropic()) {
    // dI1*/dI3 = -1 at I3 = 1
    k.n = 2.0 * (g[0] + 2.0 * g[1] + g[2] - g[3]);
    return k;
  }
  const double tr_g = sym.structural().trace();
  k.x = g[3] - g[4];
  k.p = std::max(-k.x, 0.0);
  k.q = std::max(k.x, 0.0);
  k.o = 2.0 * (g[0] + 2.0 * g[1] + g[2] - g[5] + g[4] * tr_g + k.q * tr_g);
  return k;
}

double iso_normalization_constant(const NetworkParams &net) {
  if (net.architecture().input_dim != 4)
    throw Error(ErrorCode::kWrongSymmetry,
                "isotropic normalization needs a 4-input network");
  const auto ref = reference_inputs(MaterialSymmetry::isotropic());
  const auto g = input_gradient(net, std::span(ref.data(), 4));
  return normalization_from_gradient(MaterialSymmetry::isotropic(), g).n;
}

NormalizationConstants
transiso_normalization_constants(const NetworkParams &net,
                                 const StructuralTensor &gt) {
  if (net.architecture().input_dim != 6)
    throw Error(ErrorCode::kWrongSymmetry,
                "transversely isotropic normalization needs a 6-input network");
  const auto sym = MaterialSymmetry::transversely_isotropic(gt.beta());
  const auto ref = reference_inputs(sym);
  return normalization_from_gradient(sym, input_gradient(net, ref));
}

Tangent6 finite_difference_tangent(const StressMap &stress,
                                   const SymTensor3 &c) {
  const double h = 1e-6 * std::max(1.0, frobenius_norm(c));
  Tangent6 d {};
  for (int b = 0; b < 6; ++b) {
    SymTensor3 cp = c, cm = c;
    cp[b] += h;
    cm[b] -= h;
    // A shear step moves C_ij and C_ji together, which already doubles the
    // derivative; normal steps need the factor 2 explicitly.
    const double f = (b < 3 ? 2.0 : 1.0) / (2.0 * h);
    const SymTensor3 dt = (stress(cp) - stress(cm)) * f;
    for (int a = 0; a < 6; ++a)
      d[a][b] = dt[a];
  }
  return d;
}

PannModel::PannModel(ModelVariant variant, MaterialSymmetry sym,
                     NetworkParams net)
    : variant_(variant), sym_(std::move(sym)), net_(std::move(net)) {
  if (variant_ == ModelVariant::kSimpleFP)
    throw Error(ErrorCode::kInvalidArgument,
                "the F -> P baseline is a SimpleFPModel, not a PannModel");
  const NetworkArchitecture &arch = net_.architecture();
  if (arch.input_dim != sym_.input_dim())
    throw Error(ErrorCode::kInvalidArgument,
                "network input dimension does not match the symmetry group");
  if (arch.constrain_weights != variant_constrained(variant_))
    throw Error(ErrorCode::kInvalidArgument,
                std::string("variant ") + std::string(to_string(variant_))
                    + (variant_constrained(variant_)
                           ? " needs constrained weights"
                           : " needs unconstrained weights"));
  if (arch.constrain_weights) {
    const auto &mask = net_.weight_mask();
    const auto theta = net_.flat();
    for (std::size_t k = 0; k < theta.size(); ++k)
      if (mask[k] && theta[k] < 0)
        throw Error(ErrorCode::kInvalidArgument,
                    "constrained network has a negative weight");
  }

  if (variant_normalized(variant_)) {
    const auto ref = reference_inputs(sym_);
    const auto g =
        input_gradient(net_, std::span(ref.data(), sym_.input_dim()));
    constants_ = normalization_from_gradient(sym_, g);
    // Every other term vanishes at C = 1; summing them anyway keeps the
    // shift honest if a term is ever changed.
    energy_shift_ = 0.0;
    energy_shift_ = -energy(compute_invariants(SymTensor3::identity(), sym_));
  }
}

double PannModel::energy(const InvariantSet &inv) const {
  const auto x = inv.inputs();
  double psi = forward(net_, std::span(x.data(), sym_.input_dim()));
  if (variant_has_growth(variant_))
    psi += growth_energy(inv.j);
  if (variant_normalized(variant_)) {
    if (sym_.is_isotropic()) {
      psi += -constants_.n * (inv.j - 1.0);
    } else {
      const double tr_g = sym_.structural().trace();
      psi += -constants_.o * (inv.j - 1.0) + constants_.p * (*inv.i4 - tr_g)
             + constants_.q * (*inv.i5 - tr_g);
    }
    psi += energy_shift_;
  }
  return psi;
}

double PannModel::energy(const SymTensor3 &c) const {
  return energy(compute_invariants(c, sym_));
}

std::array<double, 6> PannModel::invariant_gradient(const SymTensor3 &c) const {
  const auto inv = compute_invariants(c, sym_);
  const auto x = inv.inputs();
  const auto g = input_gradient(net_, std::span(x.data(), sym_.input_dim()));
  std::array<double, 6> out {};
  std::copy(g.begin(), g.end(), out.begin());
  if (variant_normalized(variant_)) {
    // -k (J - 1) = (k / 2) I1* + const
    if (sym_.is_isotropic()) {
      out[3] += 0.5 * constants_.n;
    } else {
      out[3] += constants_.p;
      out[4] += constants_.q;
      out[5] += 0.5 * constants_.o;
    }
  }
  return out;
}

SymTensor3 PannModel::stress(const SymTensor3 &c) const {
  const auto inv = compute_invariants(c, sym_);
  const auto x = inv.inputs();
  auto g = input_gradient(net_, std::span(x.data(), sym_.input_dim()));
  if (variant_normalized(variant_)) {
    if (sym_.is_isotropic()) {
      g[3] += 0.5 * constants_.n;
    } else {
      g[3] += constants_.p;
      g[4] += constants_.q;
      g[5] += 0.5 * constants_.o;
    }
  }
  SymTensor3 t;
  for (int k = 0; k < sym_.input_dim(); ++k)
    t += (2.0 * g[k]) * inv.input_derivative(k);
  if (variant_has_growth(variant_))
    t += growth_stress(inv.j, inv.c_inv);
  return t;
}

Tangent6 PannModel::tangent(const SymTensor3 &c) const {
  return finite_difference_tangent(stress_map(), c);
}

StressMap PannModel::stress_map() const {
  return [m = *this](const SymTensor3 &c) { return m.stress(c); };
}

EnergyMap PannModel::energy_map() const {
  return [m = *this](const SymTensor3 &c) { return m.energy(c); };
}

void to_json(nlohmann::json &j, const MaterialSymmetry &s) {
  if (s.is_isotropic())
    j = nlohmann::json { { "type", "isotropic" } };
  else
    j = nlohmann::json { { "type", "transversely_isotropic" },
                         { "beta", s.structural().beta() } };
}

MaterialSymmetry symmetry_from_json(const nlohmann::json &j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "isotropic")
    return MaterialSymmetry::isotropic();
  if (type == "transversely_isotropic")
    return MaterialSymmetry::transversely_isotropic(
        j.value("beta", 2.0));
  throw Error(ErrorCode::kConfigError, "unknown symmetry type '" + type + "'");
}

void to_json(nlohmann::json &j, const PannModel &m) {
  const auto &k = m.constants();
  j = nlohmann::json {
    { "kind", "pann_model" },
    { "variant", to_string(m.variant()) },
    { "symmetry", m.symmetry() },
    { "network", m.network() },
    { "normalization",
      { { "n", k.n }, { "o", k.o }, { "p", k.p }, { "q", k.q }, { "x", k.x },
        { "energy_shift", m.energy_shift() } } },
    { "growth_modulus_kpa", 1.0 },
  };
}

PannModel pann_model_from_json(const nlohmann::json &j) {
  try {
    PannModel m(parse_variant(j.at("variant").get<std::string>()),
                symmetry_from_json(j.at("symmetry")),
                j.at("network").get<NetworkParams>());
    if (j.contains("normalization")) {
      const auto &s = j.at("normalization");
      const auto &k = m.constants();
      const auto check = [&](const char *key, double v) {
        const double stored = s.at(key).get<double>();
        if (std::abs(stored - v) > 1e-12 * std::max(1.0, std::abs(v)))
          throw Error(ErrorCode::kFormatError,
                      std::string("stored normalization constant '") + key
                          + "' does not match the network");
      };
      check("n", k.n);
      check("o", k.o);
      check("p", k.p);
      check("q", k.q);
      check("energy_shift", m.energy_shift());
    }
    return m;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kFormatError, e.what());
  }
}

SimpleFPModel::SimpleFPModel(int nodes)
    : nodes_(nodes), theta_(parameter_count(nodes), 0.0) {
  if (nodes < 1)
    throw Error(ErrorCode::kInvalidArgument, "need at least one hidden node");
}

SimpleFPModel::SimpleFPModel(int nodes, std::vector<double> theta)
    : nodes_(nodes), theta_(std::move(theta)) {
  if (nodes < 1)
    throw Error(ErrorCode::kInvalidArgument, "need at least one hidden node");
  if (theta_.size() != parameter_count(nodes))
    throw Error(ErrorCode::kDimensionMismatch,
                "F -> P parameter vector has the wrong length");
}

Tensor3 SimpleFPModel::first_pk(const Tensor3 &f) const {
  const double *w = theta_.data() + w_offset();
  const double *b = theta_.data() + b_offset();
  const double *wo = theta_.data() + out_offset();
  const double *bo = theta_.data() + bias_out_offset();
  const auto &fm = f.matrix();
  std::array<double, kComponents> p;
  std::copy(bo, bo + kComponents, p.begin());
  for (int a = 0; a < nodes_; ++a) {
    double z = b[a];
    for (int c = 0; c < kComponents; ++c)
      z += w[a * kComponents + c] * fm[c / 3][c % 3];
    const double s = softplus(z);
    for (int c = 0; c < kComponents; ++c)
      p[c] += wo[a * kComponents + c] * s;
  }
  Tensor3 out;
  for (int c = 0; c < kComponents; ++c)
    out(c / 3, c % 3) = p[c];
  return out;
}

Tensor3 SimpleFPModel::second_pk(const SymTensor3 &c) const {
  const Tensor3 f = Tensor3::from(spd_sqrt(c));
  return inverse(f) * first_pk(f);
}

Tensor3 simple_fp_stress(const SimpleFPModel &model, const Tensor3 &f) {
  return model.first_pk(f);
}

SimpleFPModel initialize_simple_fp(int nodes, std::uint64_t seed) {
  SimpleFPModel m(nodes);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (double &t: m.flat())
    t = u(rng);
  return m;
}

void to_json(nlohmann::json &j, const SimpleFPModel &m) {
  const auto flat = m.flat();
  j = nlohmann::json { { "kind", "simple_fp_model" },
                       { "nodes", m.nodes() },
                       { "parameters",
                         std::vector<double>(flat.begin(), flat.end()) } };
}

void from_json(const nlohmann::json &j, SimpleFPModel &m) {
  m = SimpleFPModel(j.at("nodes").get<int>(),
                    j.at("parameters").get<std::vector<double>>());
}

}  // namespace pann
