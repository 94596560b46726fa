#include "rice/mc_verify.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "rice/dislocations.hpp"
#include "rice/gaussians.hpp"
#include "rice/level_angle.hpp"
#include "rice/specular1d.hpp"
#include "rice/stats.hpp"

namespace rice {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

VerificationReport finish(std::string name, double analytic,
                          const RunningStats& s, double thr, uint64_t seed,
                          Clock::time_point t0, double trunc = 0) {
  VerificationReport r;
  r.quantity = std::move(name);
  r.analytic = analytic;
  r.mc_mean = s.mean();
  r.mc_stderr = s.stderr_mean();
  r.replicates = s.count();
  r.z = r.mc_stderr > 0 ? (r.mc_mean - analytic) / r.mc_stderr : 0.0;
  r.threshold = thr;
  r.pass = std::fabs(r.z) <= thr;
  r.seed = seed;
  r.wall_seconds = seconds_since(t0);
  r.truncation_bound = trunc;
  return r;
}

// default 1D grid step: fraction of the oscillation scale 2π/√(λ4/λ2)
double osc_step(const CovarianceModel1D& m, double frac) {
  return frac * 2.0 * M_PI /
         std::sqrt(m.spectral_moment(4) / m.spectral_moment(2));
}

}  // namespace

std::string VerificationReport::to_json() const {
  std::ostringstream o;
  o.precision(12);
  o << "{\"quantity\":\"" << quantity << "\",\"analytic\":" << analytic
    << ",\"mc_mean\":" << mc_mean << ",\"mc_stderr\":" << mc_stderr
    << ",\"replicates\":" << replicates << ",\"z\":" << z
    << ",\"threshold\":" << threshold << ",\"pass\":" << (pass ? "true" : "false")
    << ",\"seed\":" << seed << ",\"wall_seconds\":" << wall_seconds
    << ",\"truncation_bound\":" << truncation_bound << "}";
  return o.str();
}

std::string VerificationReport::csv_header() {
  return "quantity,analytic,mc_mean,mc_stderr,replicates,z,threshold,pass,"
         "seed,wall_seconds,truncation_bound";
}

std::string VerificationReport::to_csv_row() const {
  std::ostringstream o;
  o.precision(12);
  o << quantity << ',' << analytic << ',' << mc_mean << ',' << mc_stderr << ','
    << replicates << ',' << z << ',' << threshold << ',' << (pass ? 1 : 0)
    << ',' << seed << ',' << wall_seconds << ',' << truncation_bound;
  return o.str();
}

VerificationReport verify_crossings(const CovarianceModel1D& model, double u,
                                    double a, double b, int replicates,
                                    uint64_t seed, double z_threshold, int M) {
  auto t0 = Clock::now();
  double l0 = model.spectral_moment(0), l2 = model.spectral_moment(2);
  double analytic = (b - a) / M_PI * std::sqrt(l2 / l0) *
                    std::exp(-u * u / (2.0 * l0));
  double step = osc_step(model, 0.02);
  RunningStats s;
  for (int r = 0; r < replicates; ++r) {
    PathSample p = sample_path_1d(model, M, seed, r);
    int n = int((b - a) / step) + 2;
    std::vector<double> vals = p.grid_deriv(a, (b - a) / (n - 1), n, 0);
    for (double& v : vals) v -= u;
    s.add(double(count_sign_changes(vals)));
  }
  return finish("crossings", analytic, s, z_threshold, seed, t0);
}

VerificationReport verify_sp2_count(const CovarianceModel1D& model, double k,
                                    int replicates, uint64_t seed,
                                    double z_threshold, int M) {
  auto t0 = Clock::now();
  double l2 = model.spectral_moment(2), l4 = model.spectral_moment(4);
  double L = 6.0 * std::sqrt(l2) / k;
  double coverage = 2.0 * norm_cdf(6.0) - 1.0;
  double analytic = gauss_abs_mean(k, std::sqrt(l4)) / k * coverage;
  double trunc = gauss_abs_mean(k, std::sqrt(l4)) / k * (1.0 - coverage);
  double step = osc_step(model, 0.035);
  int n = int(2.0 * L / step) + 2;
  double h = 2.0 * L / (n - 1);
  RunningStats s;
  for (int r = 0; r < replicates; ++r) {
    PathSample p = sample_path_1d(model, M, seed, r);
    std::vector<double> vals = p.grid_deriv(-L, h, n, 1);
    for (int i = 0; i < n; ++i) vals[i] -= k * (-L + i * h);
    s.add(double(count_sign_changes(vals)));
  }
  return finish("sp2-count", analytic, s, z_threshold, seed, t0, trunc);
}

VerificationReport verify_sp1_count(const CovarianceModel1D& model, double h1,
                                    double h2, int replicates, uint64_t seed,
                                    double z_threshold, int M) {
  auto t0 = Clock::now();
  double l2 = model.spectral_moment(2);
  double keff = 0.5 * (1.0 / h1 + 1.0 / h2);
  double L = 6.0 * std::sqrt(l2) / keff;
  double analytic = sp1_exact_expectation(h1, h2, model, -L, L);
  double step = osc_step(model, 0.035);
  int n = int(2.0 * L / step) + 2;
  double h = 2.0 * L / (n - 1);
  RunningStats s;
  for (int r = 0; r < replicates; ++r) {
    PathSample p = sample_path_1d(model, M, seed, r);
    std::vector<double> w = p.grid_deriv(-L, h, n, 0);
    std::vector<double> wp = p.grid_deriv(-L, h, n, 1);
    for (int i = 0; i < n; ++i) {
      double x = -L + i * h;
      wp[i] -= sp1_m1(x, w[i], h1, h2).m1;
    }
    s.add(double(count_sign_changes(wp)));
  }
  return finish("sp1-count", analytic, s, z_threshold, seed, t0);
}

VerificationReport verify_dislocation_count(const IsotropicSpectrum2D& spec,
                                            double window, int replicates,
                                            uint64_t seed, double z_threshold,
                                            int M) {
  auto t0 = Clock::now();
  double analytic = mean_density_2d(spec.lambda2()) * window * window;
  double step = 0.08 * 2.0 * M_PI / std::sqrt(2.0 * spec.lambda2());
  RunningStats s;
  for (int r = 0; r < replicates; ++r) {
    FieldSample2D xi = sample_field_2d(spec, M, seed, 2 * r);
    FieldSample2D eta = sample_field_2d(spec, M, seed, 2 * r + 1);
    auto f = [&](double x, double y) { return xi.value(x, y); };
    auto g = [&](double x, double y) { return eta.value(x, y); };
    auto fx = [&](double x, double y) { return xi.deriv(x, y, 1, 0); };
    auto fy = [&](double x, double y) { return xi.deriv(x, y, 0, 1); };
    auto gx = [&](double x, double y) { return eta.deriv(x, y, 1, 0); };
    auto gy = [&](double x, double y) { return eta.deriv(x, y, 0, 1); };
    VectorZeroResult z = count_vector_zeros_2d(f, g, fx, fy, gx, gy, 0.0,
                                               window, 0.0, window, step);
    s.add(double(z.count));
  }
  return finish("dislocation-count", analytic, s, z_threshold, seed, t0);
}

VerificationReport verify_curve_length(const IsotropicSpectrum2D& spec,
                                       double u, double window, int replicates,
                                       uint64_t seed, double z_threshold,
                                       int M) {
  auto t0 = Clock::now();
  double l200 = spec.lambda2();
  double analytic = length_intensity(l200, 1.0, u, window * window);
  double step = 0.1 * 2.0 * M_PI / std::sqrt(2.0 * l200);  // ~0.1 wavelength
  RunningStats s;
  for (int r = 0; r < replicates; ++r) {
    FieldSample2D w = sample_field_2d(spec, M, seed, r);
    auto f = [&](double x, double y) { return w.value(x, y); };
    auto fx = [&](double x, double y) { return w.deriv(x, y, 1, 0); };
    auto fy = [&](double x, double y) { return w.deriv(x, y, 0, 1); };
    LevelCurveResult lc =
        extract_level_curves(f, fx, fy, u, 0.0, window, 0.0, window, step);
    double weighted = 0.0;
    for (const CurveSegment& seg : lc.segments)
      weighted += seg.length * std::fabs(std::cos(seg.angle));
    s.add(weighted);
  }
  return finish("curve-length", analytic, s, z_threshold, seed, t0);
}

std::vector<VarianceScalingRow> verify_variance_scaling(
    const CovarianceModel1D& model, const std::vector<double>& ks,
    int replicates, uint64_t seed, int M) {
  double l2 = model.spectral_moment(2), l4 = model.spectral_moment(4);
  double delta = model.support_radius();
  ThetaResult th = theta_coefficient(model, delta);
  std::vector<VarianceScalingRow> rows;
  double step = osc_step(model, 0.035);
  for (double k : ks) {
    double L = 6.0 * std::sqrt(l2) / k;
    int n = int(2.0 * L / step) + 2;
    double h = 2.0 * L / (n - 1);
    RunningStats s;
    for (int r = 0; r < replicates; ++r) {
      PathSample p = sample_path_1d(model, M, seed, r);
      std::vector<double> vals = p.grid_deriv(-L, h, n, 1);
      for (int i = 0; i < n; ++i) vals[i] -= k * (-L + i * h);
      s.add(double(count_sign_changes(vals)));
    }
    VarianceScalingRow row;
    row.k = k;
    row.mc_mean_times_k = s.mean() * k;
    row.mc_var_times_k = s.variance() * k;
    row.theta = th.theta;
    row.cv = std::sqrt(s.variance()) / s.mean();
    row.cv_pred = std::sqrt(th.theta * k) / std::sqrt(2.0 * l4 / M_PI);
    rows.push_back(row);
  }
  return rows;
}

CltReport verify_clt(const CovarianceModel1D& model, double k, double theta,
                     int replicates, uint64_t seed, double ks_threshold,
                     int M) {
  if (theta <= 0) throw ModelError("verify_clt: theta must be > 0");
  double l2 = model.spectral_moment(2), l4 = model.spectral_moment(4);
  double L = 6.0 * std::sqrt(l2) / k;
  double step = osc_step(model, 0.035);
  int n = int(2.0 * L / step) + 2;
  double h = 2.0 * L / (n - 1);
  CltReport rep;
  RunningStats zs;
  for (int r = 0; r < replicates; ++r) {
    PathSample p = sample_path_1d(model, M, seed, r);
    std::vector<double> vals = p.grid_deriv(-L, h, n, 1);
    for (int i = 0; i < n; ++i) vals[i] -= k * (-L + i * h);
    double S = double(count_sign_changes(vals));
    double z = clt_statistic(S, k, l4, theta);
    rep.z_values.push_back(z);
    zs.add(z);
  }
  rep.replicates = replicates;
  rep.mean_z = zs.mean();
  rep.ks_distance = ks_distance_normal(rep.z_values);
  rep.pass = rep.ks_distance < ks_threshold;
  return rep;
}

AngleHistogramReport verify_angle_distribution(double k0, double ax, double by,
                                               int bins, double window,
                                               int replicates, uint64_t seed,
                                               double p_threshold, int M) {
  if (bins < 16) throw ModelError("verify_angle_distribution: >= 16 bins");
  GradientAnisotropy an = GradientAnisotropy::from_moments(
      0.5 * k0 * k0 * ax * ax, 0.5 * k0 * k0 * by * by, 0.0);
  AngleHistogramReport rep;
  rep.bin_edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i)
    rep.bin_edges[i] = -M_PI + 2.0 * M_PI * i / bins;
  rep.observed.assign(bins, 0.0);
  rep.expected.assign(bins, 0.0);
  double kmax = k0 * std::max(ax, by);
  double step = 0.1 * 2.0 * M_PI / kmax;
  // Segments within one field are strongly correlated, so a count-based
  // chi-square would be wildly anti-conservative. Instead treat each
  // replicate's normalized histogram as one observation and form a
  // Wald-type statistic from the across-replicate bin variances.
  std::vector<std::vector<double>> props(bins);
  for (int r = 0; r < replicates; ++r) {
    FieldSample2D w = sample_field_2d_stretched(k0, ax, by, M, seed, r);
    auto f = [&](double x, double y) { return w.value(x, y); };
    auto fx = [&](double x, double y) { return w.deriv(x, y, 1, 0); };
    auto fy = [&](double x, double y) { return w.deriv(x, y, 0, 1); };
    LevelCurveResult lc =
        extract_level_curves(f, fx, fy, 0.0, 0.0, window, 0.0, window, step);
    std::vector<double> h(bins, 0.0);
    double tot = 0.0;
    for (const CurveSegment& seg : lc.segments) {
      int b = int((seg.angle + M_PI) / (2.0 * M_PI) * bins);
      b = std::min(std::max(b, 0), bins - 1);
      h[b] += seg.length;
      tot += seg.length;
    }
    if (tot <= 0)
      throw ModelError(
          "verify_angle_distribution: no level curves found; enlarge the "
          "window or change the level");
    for (int b = 0; b < bins; ++b) props[b].push_back(h[b] / tot);
  }
  double chi = 0.0;
  for (int b = 0; b < bins; ++b) {
    RunningStats s;
    for (double p : props[b]) s.add(p);
    rep.observed[b] = s.mean();
    rep.expected[b] =
        palm_angle_cdf(an, rep.bin_edges[b], rep.bin_edges[b + 1]);
    double v = s.variance() / replicates;
    if (v <= 0)
      throw ModelError("verify_angle_distribution: zero bin variance");
    chi += (s.mean() - rep.expected[b]) * (s.mean() - rep.expected[b]) / v;
  }
  rep.n_eff = replicates;
  rep.chi_square = chi;
  rep.p_value = chi_square_pvalue(chi, bins - 1);
  rep.pass = rep.p_value > p_threshold;
  return rep;
}

}  // namespace rice
