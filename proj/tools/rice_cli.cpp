// Command-line surface for the rice library: analytic evaluators,
// figure-data emission, and the Monte Carlo verification harness.
//
// Output: CSV for grids/curves (stdout or --out), JSON lines for reports.
// Exit codes: 0 success, 1 numerical/verification failure, 2 usage/config.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cli_config.hpp"
#include "rice/dislocations.hpp"
#include "rice/field_functionals.hpp"
#include "rice/level_angle.hpp"
#include "rice/mc_verify.hpp"
#include "rice/quadrature.hpp"
#include "rice/simulate.hpp"
#include "rice/specular1d.hpp"
#include "rice/stats.hpp"

using ricecli::ConfigError;
using ricecli::ExperimentConfig;

namespace {

class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& m) : std::runtime_error(m) {}
};

// Resolve an output path against RICE_OUT_DIR (relative paths only);
// empty path means stdout.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("RICE_OUT_DIR");
  if (!dir || !*dir) return path;
  std::string d(dir);
  if (d.back() != '/') d += '/';
  return d + path;
}

struct OutStream {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit OutStream(const std::string& path) {
    std::string p = resolve_out(path);
    if (!p.empty()) {
      file.open(p);
      if (!file) throw ConfigError("cannot open output file: " + p);
      os = &file;
    }
  }
  std::ostream& get() { return *os; }
};

void emit_config(std::ostream& os, const ExperimentConfig& cfg,
                 bool as_comment) {
  if (as_comment)
    os << "# config: " << ricecli::to_json(cfg).dump() << "\n";
  else
    os << nlohmann::json{{"resolved_config", ricecli::to_json(cfg)}}.dump()
       << "\n";
}

// Merge: config file (if given) provides defaults, explicit flags win.
ExperimentConfig base_config(const std::string& config_path) {
  if (config_path.empty()) return ExperimentConfig{};
  return ricecli::load_config(config_path);
}

int run_moments(const ExperimentConfig& cfg) {
  auto model = cfg.model.build();
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, true);
  out.get() << "order,lambda\n";
  for (int order = 0; order <= 8; order += 2)
    out.get() << order << "," << std::setprecision(15)
              << model.spectral_moment(order) << "\n";
  return 0;
}

int run_sp1d(const ExperimentConfig& cfg, bool taylor,
             std::optional<double> a, std::optional<double> b) {
  double l2 = cfg.model.lambda2, l4 = cfg.model.lambda4;
  if (cfg.model.kind != "moments") {
    auto model = cfg.model.build();
    l2 = model.spectral_moment(2);
    l4 = model.spectral_moment(4);
  }
  double v = rice::sp2_expectation(cfg.k, l2, l4, a, b,
                                   taylor ? rice::Sp2Mode::taylor
                                          : rice::Sp2Mode::exact);
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, true);
  out.get() << "quantity,k,lambda2,lambda4,value\n";
  out.get() << (taylor ? "sp1d_taylor" : "sp1d") << "," << cfg.k << "," << l2
            << "," << l4 << "," << std::setprecision(10) << v << "\n";
  return 0;
}

int run_sp1d_exact(const ExperimentConfig& cfg, int grid_points) {
  double l2 = cfg.model.lambda2, l4 = cfg.model.lambda4;
  if (cfg.model.kind != "moments") {
    auto model = cfg.model.build();
    l2 = model.spectral_moment(2);
    l4 = model.spectral_moment(4);
  }
  double k = 0.5 * (1.0 / cfg.h1 + 1.0 / cfg.h2);
  double exact = rice::sp1_exact_expectation(cfg.h1, cfg.h2, l2, l4);
  double approx = rice::sp2_expectation(k, l2, l4);
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, true);
  out.get() << "quantity,h1,h2,lambda2,lambda4,value\n";
  out.get() << std::setprecision(10);
  out.get() << "exact," << cfg.h1 << "," << cfg.h2 << "," << l2 << "," << l4
            << "," << exact << "\n";
  out.get() << "approx," << cfg.h1 << "," << cfg.h2 << "," << l2 << "," << l4
            << "," << approx << "\n";
  out.get() << "gap," << cfg.h1 << "," << cfg.h2 << "," << l2 << "," << l4
            << "," << exact - approx << "\n";
  if (grid_points > 1) {
    // figure-1 data: exact and approximate intensities over an x-grid,
    // each as the expected count on the surrounding cell over its width.
    double span = 6.0 * std::sqrt(l2) / k;
    double h = 2.0 * span / (grid_points - 1);
    out.get() << "x,exact_intensity,approx_intensity\n";
    for (int i = 0; i < grid_points; ++i) {
      double x = -span + i * h;
      double ex = rice::sp1_exact_expectation(cfg.h1, cfg.h2, l2, l4,
                                              x - h / 2, x + h / 2) / h;
      double ap = rice::sp2_expectation(k, l2, l4, x - h / 2, x + h / 2) / h;
      out.get() << x << "," << ex << "," << ap << "\n";
    }
  }
  return 0;
}

int run_variance(const ExperimentConfig& cfg, const std::string& variant) {
  auto model = cfg.model.build();
  auto var = variant == "mixing" ? rice::ThetaVariant::mixing
                                 : rice::ThetaVariant::compact_support;
  double delta = model.support_radius();
  if (!std::isfinite(delta)) delta = 8.0 * cfg.model.length_scale;
  auto t = rice::theta_coefficient(model, delta, var);
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, false);
  nlohmann::json j = {{"quantity", "theta"},   {"variant", variant},
                      {"theta", t.theta},      {"J", t.J},
                      {"term_J", t.term_J},    {"term_lead", t.term_lead},
                      {"term_delta", t.term_delta}};
  out.get() << j.dump() << "\n";
  return 0;
}

int run_clt(const ExperimentConfig& cfg, double theta_override) {
  auto model = cfg.model.build();
  double theta = theta_override;
  if (!(theta > 0.0)) {
    double delta = model.support_radius();
    if (!std::isfinite(delta)) delta = 8.0 * cfg.model.length_scale;
    theta = rice::theta_coefficient(model, delta).theta;
  }
  auto rep = rice::verify_clt(model, cfg.k, theta, cfg.replicates, cfg.seed);
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, false);
  nlohmann::json j = {{"quantity", "clt"},
                      {"theta", theta},
                      {"ks_distance", rep.ks_distance},
                      {"mean_z", rep.mean_z},
                      {"replicates", rep.replicates},
                      {"pass", rep.pass}};
  out.get() << j.dump() << "\n";
  if (!rep.pass) throw NumericalFailure("clt: KS distance above threshold");
  return 0;
}

int run_twinkle(const ExperimentConfig& cfg, const rice::TwinkleMoments& m) {
  double closed = rice::twinkle_rate(m, cfg.k);
  double pre = rice::twinkle_rate_preintegrated(m, cfg.k);
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, false);
  nlohmann::json j = {{"quantity", "twinkle_rate"},
                      {"k", cfg.k},
                      {"closed_form", closed},
                      {"preintegrated", pre}};
  out.get() << j.dump() << "\n";
  if (std::abs(closed - pre) > 1e-6 * (1.0 + std::abs(closed)))
    throw NumericalFailure("twinkle: closed form and quadrature disagree");
  return 0;
}

rice::Spec2DProblem problem_from(const ExperimentConfig& cfg) {
  if (!cfg.has_sigma)
    throw ConfigError("key 'sigma': required (Hessian covariance matrix)");
  rice::Spec2DProblem p;
  p.sigma = cfg.sigma;
  p.l20 = cfg.gradient[0];
  p.l02 = cfg.gradient[1];
  p.l11 = cfg.gradient[2];
  p.k = cfg.k;
  return p;
}

int run_sp2d(const ExperimentConfig& cfg, int grid_points) {
  auto p = problem_from(cfg);
  double edet = rice::abs_det_expectation(p);
  double total = rice::sp2d_expectation_total(p);
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, true);
  out.get() << std::setprecision(10);
  out.get() << "quantity,value\n";
  out.get() << "abs_det_expectation," << edet << "\n";
  out.get() << "total_expectation," << total << "\n";
  if (grid_points > 1) {
    // figure-4 data: specular intensity over an (x, y) grid.
    double sx = 4.0 * std::sqrt(p.l20) / cfg.k;
    double sy = 4.0 * std::sqrt(p.l02) / cfg.k;
    out.get() << "x,y,intensity\n";
    for (int j = 0; j < grid_points; ++j) {
      double y = -sy + 2.0 * sy * j / (grid_points - 1);
      for (int i = 0; i < grid_points; ++i) {
        double x = -sx + 2.0 * sx * i / (grid_points - 1);
        out.get() << x << "," << y << "," << rice::sp2d_intensity(p, x, y)
                  << "\n";
      }
    }
  }
  return 0;
}

int run_m2(const ExperimentConfig& cfg) {
  if (!cfg.has_sigma)
    throw ConfigError("key 'sigma': required (Hessian covariance matrix)");
  double cosf = rice::m2_cos_form(cfg.sigma);
  double abf = rice::m2_ab_form(cfg.sigma);
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, false);
  nlohmann::json j = {{"quantity", "m2"},
                      {"cos_form", cosf},
                      {"ab_form", abf},
                      {"difference", cosf - abf}};
  out.get() << j.dump() << "\n";
  std::cout.flush();
  if (std::abs(cosf - abf) > 1e-6 * (1.0 + std::abs(cosf)))
    throw NumericalFailure("m2: the two forms disagree");
  return 0;
}

int run_angle(const ExperimentConfig& cfg) {
  rice::GradientAnisotropy a;
  a.gamma2 = cfg.gamma * cfg.gamma;
  a.kappa = cfg.kappa;
  a.lam_plus = 1.0;
  a.lam_minus = 1.0 - a.gamma2;
  a.l200 = a.l020 = a.l110 = 0.0;  // not used by the density
  int n = cfg.phi_grid.points;
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, true);
  out.get() << "phi,g\n" << std::setprecision(12);
  double integral = 0.0, h = 2.0 * M_PI / n;
  for (int i = 0; i <= n; ++i) {
    double phi = -M_PI + i * h;
    double g = rice::palm_angle_density(a, phi);
    out.get() << phi << "," << g << "\n";
    integral += (i == 0 || i == n) ? 0.5 * h * g : h * g;
  }
  if (std::abs(integral - 1.0) > 1e-3)
    throw NumericalFailure("angle: density does not integrate to 1 on grid");
  return 0;
}

int run_disloc(const ExperimentConfig& cfg) {
  auto spec = rice::IsotropicSpectrum2D::ring(cfg.k0);
  double d2 = rice::mean_density_2d(spec.lambda2());
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, true);
  out.get() << std::setprecision(12);
  out.get() << "quantity,value\nd2," << d2 << "\n";
  out.get() << "r,A\n";
  for (int i = 0; i < cfg.r_grid.points; ++i) {
    double r = cfg.r_grid.min +
               (cfg.r_grid.max - cfg.r_grid.min) * i /
                   std::max(1, cfg.r_grid.points - 1);
    out.get() << r << "," << rice::correlation_A(spec, r) << "\n";
  }
  return 0;
}

int run_simulate(const ExperimentConfig& cfg, int harmonics, double length,
                 int grid_points, bool field) {
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, true);
  out.get() << std::setprecision(10);
  if (field) {
    auto spec = rice::IsotropicSpectrum2D::ring(cfg.k0);
    auto f = rice::sample_field_2d(spec, harmonics, cfg.seed);
    double h = length / (grid_points - 1);
    auto vals = f.grid_deriv(0.0, h, grid_points, 0.0, h, grid_points, 0, 0);
    out.get() << "x,y,w\n";
    for (int j = 0; j < grid_points; ++j)
      for (int i = 0; i < grid_points; ++i)
        out.get() << i * h << "," << j * h << "," << vals[j][i] << "\n";
  } else {
    auto model = cfg.model.build();
    auto path = rice::sample_path_1d(model, harmonics, cfg.seed);
    double h = length / (grid_points - 1);
    auto w = path.grid_deriv(0.0, h, grid_points, 0);
    auto wp = path.grid_deriv(0.0, h, grid_points, 1);
    out.get() << "x,w,w_prime\n";
    for (int i = 0; i < grid_points; ++i)
      out.get() << i * h << "," << w[i] << "," << wp[i] << "\n";
  }
  return 0;
}

int run_verify(const ExperimentConfig& cfg, const std::string& quantity) {
  OutStream out(cfg.out);
  emit_config(out.get(), cfg, false);
  bool all_pass = true;
  auto emit = [&](const rice::VerificationReport& r) {
    out.get() << r.to_json() << "\n";
    all_pass = all_pass && r.pass;
  };
  bool all = quantity == "all";
  if (all || quantity == "crossings") {
    auto model = rice::CovarianceModel1D::gaussian(1.0, 1.0);
    emit(rice::verify_crossings(model, cfg.u, 0.0, M_PI, cfg.replicates,
                                cfg.seed));
  }
  if (all || quantity == "sp1") {
    auto model = cfg.model.kind == "moments"
                     ? rice::CovarianceModel1D::gaussian(1.0, 1.0)
                     : cfg.model.build();
    emit(rice::verify_sp1_count(model, cfg.h1, cfg.h2, cfg.replicates,
                                cfg.seed));
  }
  if (all || quantity == "sp2") {
    auto model = cfg.model.kind == "moments"
                     ? rice::CovarianceModel1D::gaussian(1.0, 1.0)
                     : cfg.model.build();
    emit(rice::verify_sp2_count(model, cfg.k, cfg.replicates, cfg.seed));
  }
  if (all || quantity == "disloc") {
    auto spec = rice::IsotropicSpectrum2D::ring(cfg.k0);
    emit(rice::verify_dislocation_count(spec, 8.0, cfg.replicates, cfg.seed));
  }
  if (all || quantity == "length") {
    auto spec = rice::IsotropicSpectrum2D::ring(cfg.k0);
    emit(rice::verify_curve_length(spec, cfg.u, 8.0, cfg.replicates,
                                   cfg.seed));
  }
  if (all || quantity == "angle") {
    auto rep = rice::verify_angle_distribution(cfg.k0, 1.5, 1.0, 24, 10.0,
                                               cfg.replicates, cfg.seed);
    nlohmann::json j = {{"quantity", "angle_histogram"},
                        {"chi_square", rep.chi_square},
                        {"p_value", rep.p_value},
                        {"n_eff", rep.n_eff},
                        {"pass", rep.pass}};
    out.get() << j.dump() << "\n";
    all_pass = all_pass && rep.pass;
  }
  if (!all_pass) throw NumericalFailure("verify: at least one report failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rice-formula functionals of stationary Gaussian fields"};
  app.require_subcommand(1);

  std::string config_path, out_path, variant = "compact", quantity = "all",
              sigma_file, model_kind;
  double h1 = 0, h2 = 0, k = 0, u = 0, k0 = 0, lambda2 = 0, lambda4 = 0;
  double gamma = -1, kappa_v = 0, theta_override = 0, a_lo = 0, b_hi = 0;
  double variance = 0, length_scale = 0, delta = 0, length = 50.0;
  double rmin = 0, rmax = 0;
  int exponent = 0, grid_points = 0, replicates = 0, harmonics = 2000;
  int rpoints = 0;
  uint64_t seed = 0;
  bool taylor = false, field = false;
  rice::TwinkleMoments tm{1.0, 3.0, 0.5, 1.2, 15.0};

  auto add_common = [&](CLI::App* c) {
    c->add_option("--config", config_path, "JSON config file");
    c->add_option("--out", out_path,
                  "output file (default stdout; relative paths resolved "
                  "against $RICE_OUT_DIR)");
    c->add_option("--seed", seed, "RNG seed");
    c->add_option("--replicates", replicates, "Monte Carlo replicates");
  };
  auto add_model = [&](CLI::App* c) {
    c->add_option("--model", model_kind, "gaussian | compact_bump | moments");
    c->add_option("--variance", variance, "gaussian model variance");
    c->add_option("--length-scale", length_scale, "gaussian length scale");
    c->add_option("--delta", delta, "compact_bump support width");
    c->add_option("--exponent", exponent, "compact_bump smoothness exponent");
    c->add_option("--lambda2", lambda2, "second spectral moment");
    c->add_option("--lambda4", lambda4, "fourth spectral moment");
  };

  CLI::App* c_moments = app.add_subcommand("moments", "spectral moments table");
  add_common(c_moments);
  add_model(c_moments);

  CLI::App* c_sp1d =
      app.add_subcommand("sp1d", "approximate specular-point expectation");
  add_common(c_sp1d);
  add_model(c_sp1d);
  c_sp1d->add_option("--k", k, "slope parameter");
  c_sp1d->add_option("--a", a_lo, "interval left end");
  c_sp1d->add_option("--b", b_hi, "interval right end");
  c_sp1d->add_flag("--taylor", taylor, "use the Taylor form");

  CLI::App* c_sp1e =
      app.add_subcommand("sp1d-exact", "exact two-height expectation");
  add_common(c_sp1e);
  add_model(c_sp1e);
  c_sp1e->add_option("--h1", h1, "source height");
  c_sp1e->add_option("--h2", h2, "observer height");
  c_sp1e->add_option("--grid", grid_points, "also emit intensity curves");

  CLI::App* c_var = app.add_subcommand("variance", "variance coefficient θ");
  add_common(c_var);
  add_model(c_var);
  c_var->add_option("--variant", variant, "compact | mixing");

  CLI::App* c_clt = app.add_subcommand("clt", "CLT statistic KS check (MC)");
  add_common(c_clt);
  add_model(c_clt);
  c_clt->add_option("--k", k, "slope parameter");
  c_clt->add_option("--theta", theta_override, "variance coefficient");

  CLI::App* c_tw = app.add_subcommand("twinkle", "twinkle rate");
  add_common(c_tw);
  c_tw->add_option("--k", k, "slope parameter");
  c_tw->add_option("--l20", tm.l20);
  c_tw->add_option("--l40", tm.l40);
  c_tw->add_option("--l31", tm.l31);
  c_tw->add_option("--l22", tm.l22);
  c_tw->add_option("--l60", tm.l60);

  CLI::App* c_sp2d = app.add_subcommand("sp2d", "2D specular statistics");
  add_common(c_sp2d);
  c_sp2d->add_option("--k", k, "slope parameter");
  c_sp2d->add_option("--sigma-file", sigma_file, "config with 'sigma'");
  c_sp2d->add_option("--grid", grid_points, "emit intensity grid");

  CLI::App* c_m2 = app.add_subcommand("m2", "determinant coefficient m2");
  add_common(c_m2);
  c_m2->add_option("--sigma-file", sigma_file, "config with 'sigma'");

  CLI::App* c_angle = app.add_subcommand("angle", "Palm angle density curve");
  add_common(c_angle);
  c_angle->add_option("--gamma", gamma, "anisotropy γ in [0,1)");
  c_angle->add_option("--kappa", kappa_v, "orientation κ");
  c_angle->add_option("--grid", grid_points, "number of φ points");

  CLI::App* c_dis = app.add_subcommand("disloc", "dislocation statistics");
  add_common(c_dis);
  c_dis->add_option("--k0", k0, "ring-spectrum radius");
  c_dis->add_option("--r-min", rmin);
  c_dis->add_option("--r-max", rmax);
  c_dis->add_option("--r-points", rpoints);

  CLI::App* c_sim = app.add_subcommand("simulate", "sample a path/field");
  add_common(c_sim);
  add_model(c_sim);
  c_sim->add_flag("--field", field, "2D ring-spectrum field");
  c_sim->add_option("--k0", k0, "ring-spectrum radius");
  c_sim->add_option("--harmonics", harmonics, "spectral harmonics M");
  c_sim->add_option("--length", length, "domain length");
  c_sim->add_option("--grid", grid_points, "grid points");

  CLI::App* c_ver = app.add_subcommand("verify", "MC verification reports");
  add_common(c_ver);
  add_model(c_ver);
  c_ver->add_option("--quantity", quantity,
                    "crossings | sp1 | sp2 | disloc | length | angle | all");
  c_ver->add_option("--k", k, "slope parameter");
  c_ver->add_option("--h1", h1);
  c_ver->add_option("--h2", h2);
  c_ver->add_option("--u", u, "level");
  c_ver->add_option("--k0", k0, "ring-spectrum radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    auto cnt = [&](const std::string& n) -> std::size_t {
      const CLI::Option* o = cmd->get_option_no_throw(n);
      return o ? o->count() : 0;
    };
    ExperimentConfig cfg = base_config(config_path);
    cfg.command = cmd->get_name();
    if (!sigma_file.empty()) {
      auto sc = ricecli::load_config(sigma_file);
      cfg.sigma = sc.sigma;
      cfg.has_sigma = sc.has_sigma;
      cfg.gradient = sc.gradient;
      if (cnt("--k") == 0 && config_path.empty()) cfg.k = sc.k;
    }
    auto setpos = [&](const char* flag, double v, double& dst,
                      const char* name) {
      if (cnt(flag)) {
        if (!(v > 0.0))
          throw ConfigError(std::string("key '") + name + "': must be > 0");
        dst = v;
      }
    };
    if (cnt("--model")) cfg.model.kind = model_kind;
    setpos("--variance", variance, cfg.model.variance, "variance");
    setpos("--length-scale", length_scale, cfg.model.length_scale,
           "length_scale");
    setpos("--delta", delta, cfg.model.delta, "delta");
    if (cnt("--exponent")) cfg.model.exponent = exponent;
    setpos("--lambda2", lambda2, cfg.model.lambda2, "lambda2");
    setpos("--lambda4", lambda4, cfg.model.lambda4, "lambda4");
    if (cnt("--lambda2") || cnt("--lambda4"))
      cfg.model.kind = "moments";
    setpos("--h1", h1, cfg.h1, "h1");
    setpos("--h2", h2, cfg.h2, "h2");
    setpos("--k", k, cfg.k, "k");
    setpos("--k0", k0, cfg.k0, "k0");
    if (cnt("--u")) cfg.u = u;
    if (cnt("--gamma")) {
      if (gamma < 0.0 || gamma >= 1.0)
        throw ConfigError("key 'gamma': must lie in [0, 1)");
      cfg.gamma = gamma;
    }
    if (cnt("--kappa")) cfg.kappa = kappa_v;
    if (cnt("--grid")) {
      if (grid_points < 2)
        throw ConfigError("key 'grid': expected integer >= 2");
      cfg.phi_grid.points = grid_points;
    }
    if (cnt("--r-min")) cfg.r_grid.min = rmin;
    if (cnt("--r-max")) cfg.r_grid.max = rmax;
    if (cnt("--r-points")) cfg.r_grid.points = rpoints;
    if (cnt("--seed")) cfg.seed = seed;
    if (cnt("--replicates")) {
      if (replicates < 1)
        throw ConfigError("key 'replicates': expected integer >= 1");
      cfg.replicates = replicates;
    }
    if (cnt("--out")) cfg.out = out_path;

    const std::string& name = cfg.command;
    if (name == "moments") return run_moments(cfg);
    if (name == "sp1d")
      return run_sp1d(cfg, taylor,
                      cnt("--a") ? std::optional<double>(a_lo)
                                        : std::nullopt,
                      cnt("--b") ? std::optional<double>(b_hi)
                                        : std::nullopt);
    if (name == "sp1d-exact")
      return run_sp1d_exact(cfg, cnt("--grid") ? grid_points : 0);
    if (name == "variance") return run_variance(cfg, variant);
    if (name == "clt") return run_clt(cfg, theta_override);
    if (name == "twinkle") return run_twinkle(cfg, tm);
    if (name == "sp2d")
      return run_sp2d(cfg, cnt("--grid") ? grid_points : 0);
    if (name == "m2") return run_m2(cfg);
    if (name == "angle") return run_angle(cfg);
    if (name == "disloc") return run_disloc(cfg);
    if (name == "simulate")
      return run_simulate(cfg, harmonics, length,
                          cnt("--grid") ? grid_points : 201, field);
    if (name == "verify") return run_verify(cfg, quantity);
    throw ConfigError("unknown subcommand: " + name);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rice::ModelError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  }
}
