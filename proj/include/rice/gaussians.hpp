#pragma once
// Gaussian helpers shared by the analytic evaluators.

#include <stdexcept>

namespace rice {

double norm_pdf(double x);
double norm_cdf(double x);

// G(mu, sigma) = E|Z|, Z ~ N(mu, sigma^2) = mu[2Φ(mu/σ)−1] + 2σφ(mu/σ).
// sigma = 0 returns |mu|.
double gauss_abs_mean(double mu, double sigma);

// H(rho; mu, nu) = E|ξ+mu||η+nu| for (ξ,η) standard bivariate normal with
// correlation rho.
// Closed form (mu = nu = 0 only):
//   (2/π)√(1−ρ²) + (2ρ/π)·atan(ρ/√(1−ρ²)).
double h_abs_zero(double rho);

// General case via one-dimensional quadrature of |x+mu|·G(ρx+nu, √(1−ρ²))
// against the standard normal density, split at the kink x = −mu.
double h_abs(double rho, double mu, double nu);

}  // namespace rice
