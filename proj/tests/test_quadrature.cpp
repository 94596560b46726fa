#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rice/quadrature.hpp"

using namespace rice;

TEST_CASE("adaptive Simpson on finite intervals") {
  auto r = integrate_finite([](double x) { return std::sin(x); }, 0.0, M_PI,
                            1e-12);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0) < 1e-10);

  // cubic is integrated exactly by Simpson
  auto p = integrate_finite([](double x) { return x * x * x - 2.0 * x; },
                            -1.0, 3.0, 1e-13);
  CHECK(std::abs(p.value - (81.0 / 4.0 - 1.0 / 4.0 - 9.0 + 1.0)) < 1e-12);

  // degenerate interval rejected by contract
  CHECK_THROWS_AS(integrate_finite([](double x) { return x; }, 2.0, 2.0, 1e-12),
                  QuadratureError);
}

TEST_CASE("NaN from the integrand throws") {
  CHECK_THROWS_AS(
      integrate_finite([](double x) { return std::sqrt(x); }, -1.0, 1.0,
                       1e-10),
      QuadratureError);
}

TEST_CASE("half-line and full-line maps") {
  auto e = integrate_half_line([](double t) { return std::exp(-t); }, 0.0,
                               1e-12);
  CHECK(std::abs(e.value - 1.0) < 1e-10);

  auto p = integrate_half_line([](double t) { return 1.0 / (t * t); }, 1.0,
                               1e-12);
  CHECK(std::abs(p.value - 1.0) < 1e-10);

  auto g = integrate_full_line([](double t) { return std::exp(-t * t); },
                               1e-12);
  CHECK(std::abs(g.value - std::sqrt(M_PI)) < 1e-10);
}

TEST_CASE("origin-singular integrals g(t)/t^2") {
  // g = t^2 e^{-t^2}: integrand e^{-t^2}, integral sqrt(pi)/2, g0 = 1
  auto a = integrate_origin_singular(
      [](double t) { return t * t * std::exp(-t * t); }, 1.0, 1e-11);
  CHECK(std::abs(a.value - 0.5 * std::sqrt(M_PI)) < 1e-8);

  // g = 1 - e^{-t^2}: integral sqrt(pi), g0 = 1
  auto b = integrate_origin_singular(
      [](double t) { return 1.0 - std::exp(-t * t); }, 1.0, 1e-11);
  CHECK(std::abs(b.value - std::sqrt(M_PI)) < 1e-8);
}

TEST_CASE("fixed Gauss-Legendre") {
  double v = gl_fixed([](double x) { return std::cos(x); }, 0.0, 1.0, 48);
  CHECK(std::abs(v - std::sin(1.0)) < 1e-14);

  // degree-2n-1 exactness at n = 16: x^31 over [0, 1]
  double m = gl_fixed([](double x) { return std::pow(x, 31); }, 0.0, 1.0, 16);
  CHECK(std::abs(m - 1.0 / 32.0) < 1e-14);

  const double *nodes, *weights;
  gauss_legendre(64, &nodes, &weights);
  double wsum = 0.0;
  for (int i = 0; i < 64; ++i) wsum += weights[i];
  CHECK(std::abs(wsum - 2.0) < 1e-13);
}
