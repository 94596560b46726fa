#pragma once
// 1D specular-point formulas: approximate (slope-line) expectation and its
// Taylor form, the second-factorial-moment density, the variance
// coefficient θ, the CLT statistic, and the exact two-height expectation.

#include <optional>

#include "rice/spectral_model.hpp"

namespace rice {

struct SpecularConfig {
  double h1 = 0, h2 = 0;  // source / observer heights
  double k = 0;           // ½(1/h1 + 1/h2); settable directly
  const CovarianceModel1D* model = nullptr;

  static SpecularConfig from_heights(double h1, double h2,
                                     const CovarianceModel1D& m);
  static SpecularConfig from_slope(double k, const CovarianceModel1D& m);
};

enum class Sp2Mode { exact, taylor };

// E of approximate specular points. Interval [a,b], or the whole line when
// a/b are unset. taylor mode: √(2λ4/π)(1/k)(1 + k²/(2λ4) − k⁴/(24λ4²)).
double sp2_expectation(const SpecularConfig& cfg,
                       std::optional<double> a = std::nullopt,
                       std::optional<double> b = std::nullopt,
                       Sp2Mode mode = Sp2Mode::exact);

// Moment-only form (the expectation depends on the model through λ2, λ4).
double sp2_expectation(double k, double lambda2, double lambda4,
                       std::optional<double> a = std::nullopt,
                       std::optional<double> b = std::nullopt,
                       Sp2Mode mode = Sp2Mode::exact);

// Integrand of E(S(S−1)) at (x, y): σ²(z)·H(ρ(z); m1/σ, m2/σ)·p(kx, ky)
// with z = x − y; diagonal handled by the analytic limit.
double factorial_moment_density(double x, double y, const SpecularConfig& cfg);

struct ThetaResult {
  double theta = 0;
  double J = 0;
  double term_J = 0, term_lead = 0, term_delta = 0;
};

enum class ThetaVariant { compact_support, mixing };

// Var(S) = θ/k + O(1).
// compact_support: θ = J/√2 + √(2λ4/π) − 2δλ4/√(π³λ2).
// mixing: same J-integral taken over the whole line against the
// independence-limit-subtracted integrand (no compact-support assumption).
ThetaResult theta_coefficient(const CovarianceModel1D& model, double delta,
                              ThetaVariant variant = ThetaVariant::compact_support);

// (S − √(2λ4/π)/k) / √(θ/k)
double clt_statistic(double S, double k, double lambda4, double theta);

// Exact expectation of true specular points for heights h1, h2 (unit-variance
// model); interval [a,b] or whole line (adaptive truncation) when unset.
double sp1_exact_expectation(double h1, double h2,
                             const CovarianceModel1D& model,
                             std::optional<double> a = std::nullopt,
                             std::optional<double> b = std::nullopt);

// Moment-only form (unit variance assumed; needs λ4 > λ2²).
double sp1_exact_expectation(double h1, double h2, double lambda2,
                             double lambda4,
                             std::optional<double> a = std::nullopt,
                             std::optional<double> b = std::nullopt);

// m1(x, w) and its closed-form partials (exposed for testing).
struct M1Partials {
  double m1, dm1_dx, dm1_dw;
};
M1Partials sp1_m1(double x, double w, double h1, double h2);

}  // namespace rice
