#pragma once
// Experiment configuration: JSON schema, defaults, validation, round-trip
// serialization. Shared by the CLI tool and its tests.
//
// Schema (all keys optional unless a subcommand requires them):
//   command      string, one of the CLI subcommand names
//   model        object: {"kind": "gaussian", "variance": v, "length_scale": l}
//                      | {"kind": "compact_bump", "delta": d, "exponent": p}
//                      | {"kind": "moments", "lambda2": l2, "lambda4": l4}
//   h1, h2       source/observer heights (> 0)
//   k            slope parameter (> 0)
//   u            level
//   k0           ring-spectrum radius (> 0)
//   sigma        3x3 symmetric PSD matrix, cov of (W_xx, W_yy, W_xy)
//   gradient     [l200, l020, l110] gradient covariance (2x2 via symmetry)
//   gamma, kappa Palm-angle anisotropy γ ∈ [0,1) and orientation κ
//   r_grid       {"min": a, "max": b, "points": n}
//   phi_grid     {"points": n}   (φ spans (−π, π])
//   seed         uint64
//   replicates   int > 0
//   out          output file path ("" = stdout)
//   tolerance    quadrature/check tolerance override (> 0)

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "rice/spectral_model.hpp"

namespace ricecli {

using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

struct GridSpec {
  double min = 0.0, max = 1.0;
  int points = 100;
};

struct ModelSpec {
  std::string kind = "gaussian";  // gaussian | compact_bump | moments
  double variance = 1.0, length_scale = 1.0;
  double delta = 2.0;
  int exponent = 5;
  double lambda2 = 1.0, lambda4 = 3.0;

  rice::CovarianceModel1D build() const {
    if (kind == "gaussian")
      return rice::CovarianceModel1D::gaussian(variance, length_scale);
    if (kind == "compact_bump")
      return rice::CovarianceModel1D::compact_bump(delta, exponent);
    throw ConfigError("model.kind '" + kind +
                      "' has no covariance realization (moments-only)");
  }
};

struct ExperimentConfig {
  std::string command;
  ModelSpec model;
  double h1 = 100.0, h2 = 100.0;
  double k = 0.05;
  double u = 0.0;
  double k0 = 1.0;
  std::array<std::array<double, 3>, 3> sigma{};
  std::array<double, 3> gradient{1.0, 1.0, 0.0};  // l200, l020, l110
  double gamma = 0.0, kappa = 0.0;
  GridSpec r_grid{0.5, 3.0, 26};
  GridSpec phi_grid{0.0, 0.0, 360};
  uint64_t seed = 20260826;
  int replicates = 200;
  std::string out;
  double tolerance = 1e-9;

  bool has_sigma = false;  // sigma was supplied explicitly
};

namespace detail {

inline double require_pos(const json& j, const std::string& key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number())
    throw ConfigError("key '" + key + "': expected number, got " +
                      std::string(j[key].type_name()));
  double v = j[key].get<double>();
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << "key '" << key << "': must be > 0, got " << v;
    throw ConfigError(os.str());
  }
  return v;
}

inline double any_num(const json& j, const std::string& key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number())
    throw ConfigError("key '" + key + "': expected number, got " +
                      std::string(j[key].type_name()));
  return j[key].get<double>();
}

inline GridSpec grid(const json& j, const std::string& key, GridSpec dflt) {
  if (!j.contains(key)) return dflt;
  const json& g = j[key];
  if (!g.is_object()) throw ConfigError("key '" + key + "': expected object");
  GridSpec s = dflt;
  s.min = any_num(g, "min", s.min);
  s.max = any_num(g, "max", s.max);
  if (g.contains("points")) {
    if (!g["points"].is_number_integer() || g["points"].get<int>() < 2)
      throw ConfigError("key '" + key + ".points': expected integer >= 2");
    s.points = g["points"].get<int>();
  }
  return s;
}

}  // namespace detail

inline ExperimentConfig parse_config(const json& j) {
  ExperimentConfig c;
  if (!j.is_object()) throw ConfigError("config root: expected JSON object");
  if (j.contains("command")) {
    if (!j["command"].is_string())
      throw ConfigError("key 'command': expected string");
    c.command = j["command"].get<std::string>();
  }
  if (j.contains("model")) {
    const json& m = j["model"];
    if (!m.is_object()) throw ConfigError("key 'model': expected object");
    if (m.contains("kind")) {
      c.model.kind = m["kind"].get<std::string>();
      if (c.model.kind != "gaussian" && c.model.kind != "compact_bump" &&
          c.model.kind != "moments")
        throw ConfigError("key 'model.kind': unknown kind '" + c.model.kind +
                          "' (gaussian | compact_bump | moments)");
    }
    c.model.variance = detail::require_pos(m, "variance", c.model.variance);
    c.model.length_scale =
        detail::require_pos(m, "length_scale", c.model.length_scale);
    c.model.delta = detail::require_pos(m, "delta", c.model.delta);
    if (m.contains("exponent")) {
      if (!m["exponent"].is_number_integer() || m["exponent"].get<int>() < 5)
        throw ConfigError("key 'model.exponent': expected integer >= 5");
      c.model.exponent = m["exponent"].get<int>();
    }
    c.model.lambda2 = detail::require_pos(m, "lambda2", c.model.lambda2);
    c.model.lambda4 = detail::require_pos(m, "lambda4", c.model.lambda4);
  }
  c.h1 = detail::require_pos(j, "h1", c.h1);
  c.h2 = detail::require_pos(j, "h2", c.h2);
  c.k = detail::require_pos(j, "k", c.k);
  c.u = detail::any_num(j, "u", c.u);
  c.k0 = detail::require_pos(j, "k0", c.k0);
  if (j.contains("sigma")) {
    const json& s = j["sigma"];
    if (!s.is_array() || s.size() != 3)
      throw ConfigError("key 'sigma': expected 3x3 array");
    for (int i = 0; i < 3; ++i) {
      if (!s[i].is_array() || s[i].size() != 3)
        throw ConfigError("key 'sigma': expected 3x3 array");
      for (int l = 0; l < 3; ++l) c.sigma[i][l] = s[i][l].get<double>();
    }
    for (int i = 0; i < 3; ++i)
      for (int l = 0; l < i; ++l)
        if (std::abs(c.sigma[i][l] - c.sigma[l][i]) >
            1e-12 * (1.0 + std::abs(c.sigma[i][l])))
          throw ConfigError("key 'sigma': matrix must be symmetric");
    c.has_sigma = true;
  }
  if (j.contains("gradient")) {
    const json& g = j["gradient"];
    if (!g.is_array() || g.size() != 3)
      throw ConfigError("key 'gradient': expected [l200, l020, l110]");
    for (int i = 0; i < 3; ++i) c.gradient[i] = g[i].get<double>();
    if (!(c.gradient[0] > 0.0) || !(c.gradient[1] > 0.0))
      throw ConfigError("key 'gradient': l200, l020 must be > 0");
  }
  if (j.contains("gamma")) {
    c.gamma = detail::any_num(j, "gamma", c.gamma);
    if (c.gamma < 0.0 || c.gamma >= 1.0)
      throw ConfigError("key 'gamma': must lie in [0, 1)");
  }
  c.kappa = detail::any_num(j, "kappa", c.kappa);
  c.r_grid = detail::grid(j, "r_grid", c.r_grid);
  c.phi_grid = detail::grid(j, "phi_grid", c.phi_grid);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ConfigError("key 'seed': expected unsigned integer");
    c.seed = j["seed"].get<uint64_t>();
  }
  if (j.contains("replicates")) {
    if (!j["replicates"].is_number_integer() ||
        j["replicates"].get<int>() < 1)
      throw ConfigError("key 'replicates': expected integer >= 1");
    c.replicates = j["replicates"].get<int>();
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("key 'out': expected string");
    c.out = j["out"].get<std::string>();
  }
  c.tolerance = detail::require_pos(j, "tolerance", c.tolerance);
  return c;
}

inline json to_json(const ExperimentConfig& c) {
  json m = {{"kind", c.model.kind}};
  if (c.model.kind == "gaussian") {
    m["variance"] = c.model.variance;
    m["length_scale"] = c.model.length_scale;
  } else if (c.model.kind == "compact_bump") {
    m["delta"] = c.model.delta;
    m["exponent"] = c.model.exponent;
  } else {
    m["lambda2"] = c.model.lambda2;
    m["lambda4"] = c.model.lambda4;
  }
  json j = {
      {"command", c.command},
      {"model", m},
      {"h1", c.h1},
      {"h2", c.h2},
      {"k", c.k},
      {"u", c.u},
      {"k0", c.k0},
      {"gradient", {c.gradient[0], c.gradient[1], c.gradient[2]}},
      {"gamma", c.gamma},
      {"kappa", c.kappa},
      {"r_grid",
       {{"min", c.r_grid.min}, {"max", c.r_grid.max}, {"points", c.r_grid.points}}},
      {"phi_grid", {{"min", c.phi_grid.min},
                    {"max", c.phi_grid.max},
                    {"points", c.phi_grid.points}}},
      {"seed", c.seed},
      {"replicates", c.replicates},
      {"out", c.out},
      {"tolerance", c.tolerance},
  };
  if (c.has_sigma) {
    json s = json::array();
    for (int i = 0; i < 3; ++i)
      s.push_back({c.sigma[i][0], c.sigma[i][1], c.sigma[i][2]});
    j["sigma"] = s;
  }
  return j;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error in " + path + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace ricecli
