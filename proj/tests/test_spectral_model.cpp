#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rice/bessel.hpp"
#include "rice/rng.hpp"
#include "rice/spectral_model.hpp"

using namespace rice;

TEST_CASE("gaussian covariance: moments and derivatives") {
  double v = 2.0, ell = 0.7;
  auto m = CovarianceModel1D::gaussian(v, ell);
  CHECK(std::abs(m.gamma(0.0) - v) < 1e-14);
  // Γ = v exp(−z²/2ℓ²): λ2 = v/ℓ², λ4 = 3v/ℓ⁴, λ6 = 15v/ℓ⁶
  CHECK(std::abs(m.spectral_moment(0) - v) < 1e-12);
  CHECK(std::abs(m.spectral_moment(2) - v / (ell * ell)) < 1e-12);
  CHECK(std::abs(m.spectral_moment(4) - 3.0 * v / std::pow(ell, 4)) < 1e-11);
  CHECK(std::abs(m.spectral_moment(6) - 15.0 * v / std::pow(ell, 6)) < 1e-9);
  CHECK(m.support_radius() == std::numeric_limits<double>::infinity());

  // λ_n = (−1)^{n/2} Γ^{(n)}(0)
  for (int n : {2, 4, 6, 8}) {
    double sign = (n / 2) % 2 ? -1.0 : 1.0;
    CHECK(std::abs(m.spectral_moment(n) - sign * m.gamma_deriv(0.0, n)) <
          1e-9 * m.spectral_moment(n));
  }
}

TEST_CASE("gaussian covariance: derivatives vs finite differences") {
  auto m = CovarianceModel1D::gaussian(1.0, 1.3);
  double z = 0.7, h = 1e-5;
  for (int i = 1; i <= 4; ++i) {
    double fd =
        (m.gamma_deriv(z + h, i - 1) - m.gamma_deriv(z - h, i - 1)) / (2 * h);
    CHECK(std::abs(fd - m.gamma_deriv(z, i)) < 1e-7);
  }
}

TEST_CASE("compact bump: support, smoothness, moments") {
  double delta = 2.0;
  auto m = CovarianceModel1D::compact_bump(delta, 5);
  CHECK(std::abs(m.support_radius() - delta) < 1e-14);
  CHECK(std::abs(m.gamma(0.0) - 1.0) < 1e-12);  // unit variance
  CHECK(m.gamma(delta * 1.0001) == 0.0);
  CHECK(m.gamma(100.0) == 0.0);
  // C^8 at the support edge: derivatives vanish there
  for (int i = 0; i <= 6; ++i)
    CHECK(std::abs(m.gamma_deriv(delta - 1e-7, i)) < 1e-5);
  // moments for delta = 2, p = 5 (closed form for the self-convolved bump)
  CHECK(std::abs(m.spectral_moment(2) - 35.0 / 6.0) < 1e-9);
  CHECK(std::abs(m.spectral_moment(4) - 95.0) < 1e-7);
  CHECK(std::abs(m.spectral_moment(6) - 2422.5) < 1e-5);
  // positive definiteness necessary condition |Γ(z)| <= Γ(0)
  for (double z = 0.0; z < delta; z += 0.05) CHECK(m.gamma(z) <= 1.0 + 1e-12);
}

TEST_CASE("tabulated spectrum") {
  // flat density 1 on [0, 2]: λ0 = 2, λ2 = 8/3, λ4 = 32/5
  int n = 2001;
  std::vector<double> f(n), d(n, 1.0);
  for (int i = 0; i < n; ++i) f[i] = 2.0 * i / (n - 1);
  auto m = CovarianceModel1D::tabulated_spectrum(f, d);
  CHECK(std::abs(m.spectral_moment(0) - 2.0) < 1e-9);
  CHECK(std::abs(m.spectral_moment(2) - 8.0 / 3.0) < 1e-8);
  CHECK(std::abs(m.spectral_moment(4) - 32.0 / 5.0) < 1e-7);
  // Γ(z) = ∫ cos(ωz) dμ = 2 sin(2z)/(2z) · ... = sin(2z)/z
  for (double z : {0.3, 1.0, 2.5})
    CHECK(std::abs(m.gamma(z) - std::sin(2.0 * z) / z) < 1e-7);
  // sampler stays inside the grid
  SplitRng rng(5, 0);
  for (int i = 0; i < 2000; ++i) {
    double w = m.sample_frequency(rng);
    CHECK(w >= 0.0);
    CHECK(w <= 2.0);
  }
}

TEST_CASE("ring spectrum: rho and derivatives vs J0") {
  double k0 = 1.7;
  auto s = IsotropicSpectrum2D::ring(k0);
  CHECK(std::abs(s.lambda2() - k0 * k0 / 2.0) < 1e-13);
  for (double r : {0.3, 1.0, 2.6, 7.0}) {
    RhoDerivs rd = s.rho_derivs(r);
    CHECK(std::abs(rd.C - bessel_j0(k0 * r)) < 1e-12);
    CHECK(std::abs(rd.E + k0 * bessel_j1(k0 * r)) < 1e-12);
    CHECK(std::abs(rd.H + rd.E / r) < 1e-12);
    // J0'' = −J0 + J1/x
    double rpp = k0 * k0 * (-bessel_j0(k0 * r) + bessel_j1(k0 * r) / (k0 * r));
    CHECK(std::abs(rd.F + rpp) < 1e-11);
    CHECK(std::abs(rd.F0 - k0 * k0 / 2.0) < 1e-13);
  }
  // H → F0 as r → 0
  RhoDerivs rd0 = s.rho_derivs(1e-6);
  CHECK(std::abs(rd0.H - rd0.F0) < 1e-6);
  // ring sampler is a point mass at k0
  SplitRng rng(11, 0);
  for (int i = 0; i < 50; ++i)
    CHECK(std::abs(s.sample_modulus(rng) - k0) < 1e-14);
}

TEST_CASE("hessian covariance matrix from 2D moments") {
  SpectralMoments m;
  m.dim = 2;
  m.entries[{4, 0}] = 9e-4;
  m.entries[{0, 4}] = 1.1e-3;
  m.entries[{2, 2}] = 3e-4;
  m.entries[{3, 1}] = 1e-4;
  m.entries[{1, 3}] = 2e-4;
  Mat3 s = hessian_cov_matrix(m);
  // Var(W_xx) = λ40, Var(W_yy) = λ04, Var(W_xy) = λ22,
  // Cov(W_xx, W_yy) = λ22, Cov(W_xx, W_xy) = λ31, Cov(W_yy, W_xy) = λ13
  CHECK(std::abs(s[0][0] - 9e-4) < 1e-18);
  CHECK(std::abs(s[1][1] - 1.1e-3) < 1e-18);
  CHECK(std::abs(s[2][2] - 3e-4) < 1e-18);
  CHECK(std::abs(s[0][1] - 3e-4) < 1e-18);
  CHECK(std::abs(s[0][2] - 1e-4) < 1e-18);
  CHECK(std::abs(s[1][2] - 2e-4) < 1e-18);
  CHECK(std::abs(s[0][1] - s[1][0]) < 1e-18);

  // missing moment is a schema error
  SpectralMoments bad;
  bad.entries[{4, 0}] = 1.0;
  CHECK_THROWS_AS(hessian_cov_matrix(bad), ModelError);
}

TEST_CASE("invalid model parameters rejected") {
  CHECK_THROWS(CovarianceModel1D::gaussian(-1.0, 1.0));
  CHECK_THROWS(CovarianceModel1D::compact_bump(0.0, 5));
  CHECK_THROWS(CovarianceModel1D::compact_bump(2.0, 2));  // λ8 infinite
}
