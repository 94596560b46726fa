#include "rice/level_angle.hpp"

#include <cmath>

#include "rice/quadrature.hpp"

namespace rice {

GradientAnisotropy GradientAnisotropy::from_moments(double l200, double l020,
                                                    double l110) {
  if (l200 * l020 - l110 * l110 <= 0)
    throw ModelError("gradient anisotropy: covariance must be PD");
  GradientAnisotropy a;
  a.l200 = l200;
  a.l020 = l020;
  a.l110 = l110;
  double tr = 0.5 * (l200 + l020);
  double d = std::sqrt(0.25 * (l200 - l020) * (l200 - l020) + l110 * l110);
  a.lam_plus = tr + d;
  a.lam_minus = tr - d;
  a.gamma2 = 1.0 - a.lam_minus / a.lam_plus;
  // eigenvector of λ+: (l110, λ+ − l200), or the x-axis if already diagonal
  if (std::fabs(l110) < 1e-300 && l200 >= l020)
    a.kappa = 0.0;
  else if (std::fabs(l110) < 1e-300)
    a.kappa = M_PI / 2.0;
  else
    a.kappa = std::atan2(a.lam_plus - l200, l110);
  if (a.kappa <= -M_PI / 2.0) a.kappa += M_PI;
  if (a.kappa > M_PI / 2.0) a.kappa -= M_PI;
  return a;
}

double length_intensity(double l200, double l000, double u, double area) {
  if (l200 <= 0 || l000 <= 0)
    throw ModelError("length_intensity: variances must be > 0");
  return area / M_PI * std::sqrt(l200 / l000) *
         std::exp(-u * u / (2.0 * l000));
}

double elliptic_K(double m) {
  if (m < 0 || m >= 1) throw ModelError("elliptic_K: need 0 <= m < 1");
  double a = 1.0, b = std::sqrt(1.0 - m);
  for (int i = 0; i < 100; ++i) {
    double an = 0.5 * (a + b);
    double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (std::fabs(a - b) < 1e-16 * a) break;
  }
  return M_PI / (2.0 * a);
}

double elliptic_E(double m) {
  if (m < 0 || m >= 1) throw ModelError("elliptic_E: need 0 <= m < 1");
  // AGM with the c_n² correction sum: E = K·(1 − Σ 2^{n-1} c_n²)
  double a = 1.0, b = std::sqrt(1.0 - m), c = std::sqrt(m);
  double sum = 0.5 * c * c, pow2 = 0.5;
  for (int i = 0; i < 100; ++i) {
    double an = 0.5 * (a + b);
    double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += pow2 * cn * cn;
    if (std::fabs(cn) < 1e-17 * a) break;
  }
  return M_PI / (2.0 * a) * (1.0 - sum);
}

double palm_angle_density(const GradientAnisotropy& a, double phi) {
  if (a.gamma2 >= 1) throw ModelError("palm density: gamma^2 must be < 1");
  // length-weighted density of the normal angle:
  //   g(φ) ∝ (e_φᵀ Λ⁻¹ e_φ)^{−3/2} ∝ (1 − γ² cos²(φ−κ))^{−3/2},
  // κ the λ+ eigendirection; ∫₀^{2π}(1 − m sin²)^{−3/2} = 4E(m)/(1−m).
  double c = std::cos(phi - a.kappa);
  double q = 1.0 - a.gamma2 * c * c;
  return (1.0 - a.gamma2) /
         (4.0 * elliptic_E(a.gamma2) * q * std::sqrt(q));
}

double palm_angle_cdf(const GradientAnisotropy& a, double th1, double th2) {
  if (th1 >= th2) throw ModelError("palm cdf: need th1 < th2");
  return integrate_finite([&](double p) { return palm_angle_density(a, p); },
                          th1, th2, 1e-12)
      .value;
}

}  // namespace rice
