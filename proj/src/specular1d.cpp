#include "rice/specular1d.hpp"

#include <cmath>

#include "rice/gaussians.hpp"
#include "rice/quadrature.hpp"

namespace rice {

SpecularConfig SpecularConfig::from_heights(double h1, double h2,
                                            const CovarianceModel1D& m) {
  if (h1 <= 0 || h2 <= 0)
    throw ModelError("specular config: heights must be > 0");
  SpecularConfig c;
  c.h1 = h1;
  c.h2 = h2;
  c.k = 0.5 * (1.0 / h1 + 1.0 / h2);
  c.model = &m;
  return c;
}

SpecularConfig SpecularConfig::from_slope(double k,
                                          const CovarianceModel1D& m) {
  if (k <= 0) throw ModelError("specular config: k must be > 0");
  SpecularConfig c;
  c.k = k;
  c.h1 = c.h2 = 1.0 / k;
  c.model = &m;
  return c;
}

double sp2_expectation(const SpecularConfig& cfg, std::optional<double> a,
                       std::optional<double> b, Sp2Mode mode) {
  return sp2_expectation(cfg.k, cfg.model->spectral_moment(2),
                         cfg.model->spectral_moment(4), a, b, mode);
}

double sp2_expectation(double k, double l2, double l4, std::optional<double> a,
                       std::optional<double> b, Sp2Mode mode) {
  if (l2 <= 0 || l4 <= 0)
    throw ModelError("sp2_expectation: need λ2 > 0 and λ4 > 0");
  if (k <= 0) throw ModelError("sp2_expectation: k must be > 0");
  if (mode == Sp2Mode::taylor) {
    double r2 = k * k / l4;
    return std::sqrt(2.0 * l4 / M_PI) / k *
           (1.0 + 0.5 * r2 - r2 * r2 / 24.0);
  }
  double G = gauss_abs_mean(k, std::sqrt(l4));
  double Fa = a ? norm_cdf(k * (*a) / std::sqrt(l2)) : 0.0;
  double Fb = b ? norm_cdf(k * (*b) / std::sqrt(l2)) : 1.0;
  return G * (Fb - Fa) / k;
}

namespace {

struct PairRegression {
  double sigma2, rho;        // conditional variance / correlation of W''
  double a_xx, a_xy;         // regression row: E[W''(x)|...] = a_xx·u + a_xy·v
  double den;                // λ2² − Γ''(z)²
  double gamma2;
};

PairRegression pair_regression(const CovarianceModel1D& m, double z) {
  double l2 = m.spectral_moment(2), l4 = m.spectral_moment(4);
  double g2 = m.gamma_deriv(z, 2), g3 = m.gamma_deriv(z, 3),
         g4 = m.gamma_deriv(z, 4);
  double den = l2 * l2 - g2 * g2;
  if (den <= 0)
    throw ModelError("degenerate joint density at z=" + std::to_string(z));
  // Cov((W''(x), W''(y)), (W'(x), W'(y))) = [[0, −Γ'''],[Γ''', 0]], z = x − y.
  // A = C12·C22⁻¹ with C22 = [[λ2, −Γ''],[−Γ'', λ2]].
  double a_xx = -g3 * g2 / den;   // coefficient on W'(x) for W''(x)
  double a_xy = -g3 * l2 / den;   // coefficient on W'(y)
  // conditional covariance = [[λ4, Γ⁗],[Γ⁗, λ4]] − A·C12ᵀ
  double s2 = l4 - g3 * g3 * l2 / den;
  if (s2 <= 0)
    throw ModelError("degenerate conditional variance at z=" +
                     std::to_string(z));
  double cross = g4 + g3 * g3 * g2 / den;
  // ρ → −1 as z → 0; clamp fp overshoot
  double rho = std::max(-1.0, std::min(1.0, cross / s2));
  return {s2, rho, a_xx, a_xy, den, g2};
}

double corr_length(const CovarianceModel1D& m) {
  return std::sqrt(m.spectral_moment(2) / m.spectral_moment(4));
}

}  // namespace

double factorial_moment_density(double x, double y,
                                const SpecularConfig& cfg) {
  const CovarianceModel1D& m = *cfg.model;
  double l2 = m.spectral_moment(2);
  double z = x - y;
  double zmin = 1e-4 * corr_length(m);
  if (std::fabs(z) < zmin) {
    // removable singularity on the diagonal: evaluate at the threshold,
    // keeping the midpoint fixed
    double mid = 0.5 * (x + y);
    x = mid + 0.5 * zmin;
    y = mid - 0.5 * zmin;
    z = zmin;
  }
  PairRegression r = pair_regression(m, z);
  double k = cfg.k;
  double m1 = r.a_xx * (k * x) + r.a_xy * (k * y) - k;
  double m2 = -r.a_xy * (k * x) - r.a_xx * (k * y) - k;  // symmetric swap
  double sig = std::sqrt(r.sigma2);
  double H = h_abs(r.rho, m1 / sig, m2 / sig);
  double q = (l2 * k * x * k * x + 2.0 * r.gamma2 * k * x * k * y +
              l2 * k * y * k * y) /
             r.den;
  double p = std::exp(-0.5 * q) / (2.0 * M_PI * std::sqrt(r.den));
  return r.sigma2 * H * p;
}

ThetaResult theta_coefficient(const CovarianceModel1D& model, double delta,
                              ThetaVariant variant) {
  double l2 = model.spectral_moment(2), l4 = model.spectral_moment(4);
  double l6 = model.spectral_moment(6);
  // As z → 0: σ² → z²·λ̃6/4, ρ → −1, λ2 + Γ'' → z²·λ4/2 with
  // λ̃6 = λ6 − λ4²/λ2, so the integrand vanishes linearly with slope
  // λ̃6/(4√(πλ4)). Evaluating the regression directly there loses all
  // precision (σ² is a difference of nearly equal numbers), so switch to
  // the limit form below z0.
  double slope0 = (l6 - l4 * l4 / l2) / (4.0 * std::sqrt(M_PI * l4));
  auto band_integrand = [&](double z) {
    PairRegression r = pair_regression(model, z);
    return r.sigma2 * h_abs_zero(r.rho) /
           std::sqrt(2.0 * M_PI * (l2 + r.gamma2));
  };
  ThetaResult t;
  t.term_lead = std::sqrt(2.0 * l4 / M_PI);
  if (variant == ThetaVariant::compact_support) {
    for (double f : {1.01, 1.5, 2.0, 4.0}) {
      if (std::fabs(model.gamma(delta * f)) > 1e-12 * model.gamma(0.0))
        throw ModelError(
            "theta_coefficient: covariance not supported in [-delta, delta]");
    }
    double z0 = 3e-3 * delta;
    // ∫₀^{z0} ≈ slope0·z0²/2 + s3·z0⁴/4 with the cubic coefficient read off
    // at z0 (clean digits there; below ~1e-3·δ the direct evaluation is
    // noise-dominated).
    double s3 = (band_integrand(z0) - slope0 * z0) / (z0 * z0 * z0);
    t.J = 2.0 * (slope0 * z0 * z0 / 2.0 + s3 * z0 * z0 * z0 * z0 / 4.0 +
                 integrate_finite(band_integrand, z0, delta, 1e-10, 30).value);
    t.term_J = t.J / std::sqrt(2.0);
    t.term_delta = 2.0 * delta * l4 / std::sqrt(M_PI * M_PI * M_PI * l2);
    t.theta = t.term_J + t.term_lead - t.term_delta;
  } else {
    // θ = √(2λ4/π) + (1/√π)∫ [σ²(z)H(ρ;0,0)/(2√(λ2+Γ'')) − λ4/(π√λ2)] dz
    double z0 = 3e-2 * corr_length(model);
    double mix_slope = std::sqrt(2.0 * M_PI) * slope0 / 2.0;
    double c0 = l4 / (M_PI * std::sqrt(l2));
    auto g = [&](double z) {
      PairRegression r = pair_regression(model, z);
      return r.sigma2 * h_abs_zero(r.rho) /
                 (2.0 * std::sqrt(l2 + r.gamma2)) -
             c0;
    };
    // even integrand; [0, z0] analytically (band ≈ mix_slope·z there).
    // Beyond the effective decorrelation radius g is pure subtraction noise
    // (band → c0), so cut the tail there instead of integrating it.
    double zmax = model.support_radius();
    if (!std::isfinite(zmax)) {
      zmax = 2.0 * corr_length(model);
      while (std::fabs(model.gamma(zmax)) > 1e-18 * model.gamma(0.0) &&
             zmax < 1e6 * corr_length(model))
        zmax *= 1.5;
    }
    double s3 = (g(z0) + c0 - mix_slope * z0) / (z0 * z0 * z0);
    double head = mix_slope * z0 * z0 / 2.0 + s3 * z0 * z0 * z0 * z0 / 4.0 -
                  c0 * z0;
    t.J = 2.0 * (head + integrate_finite(g, z0, zmax, 1e-10, 30).value);
    t.term_J = t.J / std::sqrt(M_PI);
    t.term_delta = 0.0;
    t.theta = t.term_lead + t.term_J;
  }
  return t;
}

double clt_statistic(double S, double k, double lambda4, double theta) {
  if (theta <= 0 || k <= 0)
    throw ModelError("clt_statistic: need theta > 0 and k > 0");
  double mean = std::sqrt(2.0 * lambda4 / M_PI) / k;
  return (S - mean) / std::sqrt(theta / k);
}

M1Partials sp1_m1(double x, double w, double h1, double h2) {
  double a = h1 - w, b = h2 - w, s = a + b;
  if (a <= 0 || b <= 0 || s <= 0)
    throw ModelError("sp1_m1: heights must exceed the level w");
  if (std::fabs(x) < 1e-9 * std::min(h1, h2)) {
    // m1 → x·(2ab + s²)/(2abs); ∂m1/∂w·m1 → 0
    double c0 = (2.0 * a * b + s * s) / (2.0 * a * b * s);
    return {x * c0, c0, 0.0};
  }
  double r1 = std::sqrt(x * x + a * a), r2 = std::sqrt(x * x + b * b);
  double n = x * x - a * b + r1 * r2;
  double m1 = n / (x * s);
  double dn_dx = x * (2.0 + r2 / r1 + r1 / r2);
  double dm1_dx = (x * dn_dx - n) / (x * x * s);
  double dn_dw = s - a * r2 / r1 - b * r1 / r2;
  double dm1_dw = (s * dn_dw + 2.0 * n) / (x * s * s);
  return {m1, dm1_dx, dm1_dw};
}

double sp1_exact_expectation(double h1, double h2,
                             const CovarianceModel1D& model,
                             std::optional<double> a,
                             std::optional<double> b) {
  double l0 = model.spectral_moment(0);
  if (std::fabs(l0 - 1.0) > 1e-9)
    throw ModelError("sp1_exact_expectation: model must have unit variance");
  return sp1_exact_expectation(h1, h2, model.spectral_moment(2),
                               model.spectral_moment(4), a, b);
}

double sp1_exact_expectation(double h1, double h2, double l2, double l4,
                             std::optional<double> a,
                             std::optional<double> b) {
  if (l4 <= l2 * l2)
    throw ModelError("sp1_exact_expectation: λ4 <= λ2² (degenerate ζ)");
  double sd = std::sqrt(l4 - l2 * l2);
  double keff = 0.5 * (1.0 / h1 + 1.0 / h2);
  double lo = a ? *a : -9.0 * std::sqrt(l2) / keff;
  double hi = b ? *b : 9.0 * std::sqrt(l2) / keff;
  const double wmax = 8.0;
  auto inner = [&](double x) {
    return gl_fixed(
        [&](double w) {
          M1Partials p = sp1_m1(x, w, h1, h2);
          double K = p.dm1_dx + p.dm1_dw * p.m1;
          double mm = (l2 * w + K) / sd;
          return gauss_abs_mean(mm, 1.0) *
                 std::exp(-0.5 * (w * w + p.m1 * p.m1 / l2));
        },
        -wmax, wmax, 64);
  };
  // pilot pass fixes the scale; the adaptive pass then works to a relative
  // 1e-8 (the absolute default would over-refine the long tails)
  double rough = std::fabs(gl_fixed(inner, lo, hi, 64));
  double tol = std::max(1e-8 * rough, 1e-300);
  double outer = integrate_finite(inner, lo, hi, tol).value;
  return outer * sd / (2.0 * M_PI * std::sqrt(l2));
}

}  // namespace rice
