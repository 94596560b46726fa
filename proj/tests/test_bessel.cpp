#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rice/bessel.hpp"
#include "rice/quadrature.hpp"

using namespace rice;

// Independent oracle: integral representation
// J_n(x) = (1/pi) ∫_0^pi cos(n t − x sin t) dt.
static double j_integral(int n, double x) {
  return gl_fixed(
             [&](double t) { return std::cos(n * t - x * std::sin(t)); },
             0.0, M_PI, 64) /
         M_PI;
}

TEST_CASE("J0 against the integral representation") {
  CHECK(bessel_j0(0.0) == 1.0);
  for (double x : {0.05, 0.5, 1.0, 2.5, 5.0, 8.0, 12.0, 20.0, 35.0, 60.0})
    CHECK(std::abs(bessel_j0(x) - j_integral(0, x)) < 1e-10);
  // evenness
  CHECK(std::abs(bessel_j0(-3.7) - bessel_j0(3.7)) < 1e-14);
}

TEST_CASE("J1 against the integral representation") {
  CHECK(bessel_j1(0.0) == 0.0);
  for (double x : {0.05, 0.5, 1.0, 2.5, 5.0, 8.0, 12.0, 20.0, 35.0, 60.0})
    CHECK(std::abs(bessel_j1(x) - j_integral(1, x)) < 1e-10);
  // oddness
  CHECK(std::abs(bessel_j1(-3.7) + bessel_j1(3.7)) < 1e-14);
}

TEST_CASE("first zero of J0") {
  double z = 2.404825557695773;
  CHECK(std::abs(bessel_j0(z)) < 1e-10);
  CHECK(bessel_j0(z - 0.01) > 0.0);
  CHECK(bessel_j0(z + 0.01) < 0.0);
}

TEST_CASE("derivative identity J0' = -J1") {
  for (double x : {0.3, 1.7, 6.2, 15.0}) {
    double h = 1e-4;
    double d = (bessel_j0(x + h) - bessel_j0(x - h)) / (2.0 * h);
    CHECK(std::abs(d + bessel_j1(x)) < 1e-5);
  }
}

TEST_CASE("agreement with the standard library") {
  for (double x : {0.1, 1.0, 3.0, 7.5, 14.0, 25.0}) {
    CHECK(std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)) < 1e-10);
    CHECK(std::abs(bessel_j1(x) - std::cyl_bessel_j(1.0, x)) < 1e-10);
  }
}
