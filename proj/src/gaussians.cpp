#include "rice/gaussians.hpp"

#include <cmath>

#include "rice/quadrature.hpp"

namespace rice {

double norm_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double gauss_abs_mean(double mu, double sigma) {
  if (sigma < 0) throw std::invalid_argument("gauss_abs_mean: sigma < 0");
  if (sigma == 0) return std::fabs(mu);
  double r = mu / sigma;
  return mu * (2.0 * norm_cdf(r) - 1.0) + 2.0 * sigma * norm_pdf(r);
}

double h_abs_zero(double rho) {
  if (std::fabs(rho) > 1) throw std::invalid_argument("h_abs: |rho| > 1");
  double s = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  if (s == 0) return 1.0;  // E ξ² = 1 at rho = ±1
  return (2.0 / M_PI) * s + (2.0 * rho / M_PI) * std::atan(rho / s);
}

double h_abs(double rho, double mu, double nu) {
  if (std::fabs(rho) > 1) throw std::invalid_argument("h_abs: |rho| > 1");
  double s = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  auto f = [&](double x) {
    return std::fabs(x + mu) * gauss_abs_mean(rho * x + nu, s) * norm_pdf(x);
  };
  // |x+mu| has a kink at x = -mu; integrate the two smooth pieces separately.
  const double R = 10.0;
  double kink = -mu;
  double lo = std::min(-R, kink - 1.0), hi = std::max(R, kink + 1.0);
  double tol = 1e-12;
  double left = integrate_finite(f, lo, kink, tol).value;
  double right = integrate_finite(f, kink, hi, tol).value;
  return left + right;
}

}  // namespace rice
