#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rice/gaussians.hpp"
#include "rice/quadrature.hpp"

using namespace rice;

TEST_CASE("normal pdf/cdf basics") {
  CHECK(std::abs(norm_cdf(0.0) - 0.5) < 1e-15);
  CHECK(std::abs(norm_pdf(0.0) - 1.0 / std::sqrt(2.0 * M_PI)) < 1e-15);
  for (double x : {-2.3, -0.7, 0.4, 1.9})
    CHECK(std::abs(norm_cdf(x) + norm_cdf(-x) - 1.0) < 1e-14);
  // cdf vs quadrature of the pdf
  auto q = integrate_finite([](double t) { return norm_pdf(t); }, 0.0, 1.3,
                            1e-13);
  CHECK(std::abs(norm_cdf(1.3) - 0.5 - q.value) < 1e-11);
}

TEST_CASE("gauss_abs_mean closed form vs quadrature") {
  CHECK(std::abs(gauss_abs_mean(0.0, 1.0) - std::sqrt(2.0 / M_PI)) < 1e-14);
  CHECK(gauss_abs_mean(-3.5, 0.0) == 3.5);

  for (double mu : {0.0, 0.7, -1.4})
    for (double sig : {0.5, 1.0, 2.3}) {
      auto q = integrate_full_line(
          [&](double x) {
            return std::abs(x) * norm_pdf((x - mu) / sig) / sig;
          },
          1e-12);
      CHECK(std::abs(gauss_abs_mean(mu, sig) - q.value) < 1e-9);
    }
}

TEST_CASE("h_abs zero-mean closed form vs quadrature route") {
  for (double rho : {0.0, 0.25, 0.5, 0.75, 0.99})
    CHECK(std::abs(h_abs_zero(rho) - h_abs(rho, 0.0, 0.0)) < 1e-8);
  // rho = 0 factorizes
  CHECK(std::abs(h_abs(0.0, 0.7, -0.4) -
                 gauss_abs_mean(0.7, 1.0) * gauss_abs_mean(-0.4, 1.0)) <
        1e-9);
}

// Independent 2D oracle: E|ξ+mu||η+nu| with η = ρξ + s·y, by fixed
// Gauss-Legendre on [-9, 9]², each axis split at the |·| kink.
static double h_abs_oracle(double rho, double mu, double nu) {
  double s = std::sqrt(1.0 - rho * rho);
  auto inner = [&](double x) {
    auto f = [&](double y) {
      return std::abs(rho * x + s * y + nu) * norm_pdf(y);
    };
    double yk = -(rho * x + nu) / s;
    yk = std::min(9.0, std::max(-9.0, yk));
    return gl_fixed(f, -9.0, yk, 64) + gl_fixed(f, yk, 9.0, 64);
  };
  auto g = [&](double x) { return std::abs(x + mu) * norm_pdf(x) * inner(x); };
  double xk = std::min(9.0, std::max(-9.0, -mu));
  return gl_fixed(g, -9.0, xk, 64) + gl_fixed(g, xk, 9.0, 64);
}

TEST_CASE("h_abs general case vs direct 2D quadrature") {
  for (double rho : {0.3, 0.5, 0.99})
    for (double mu : {0.0, 0.3})
      CHECK(std::abs(h_abs(rho, mu, -0.4) - h_abs_oracle(rho, mu, -0.4)) <
            1e-6);
}
