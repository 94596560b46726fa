#pragma once
// Level-curve functionals at fixed time: length intensity and the Palm
// distribution of the level-curve normal angle.

#include "rice/spectral_model.hpp"

namespace rice {

struct GradientAnisotropy {
  double l200, l020, l110;   // gradient covariance entries
  double lam_minus, lam_plus;  // eigenvalues, lam_minus <= lam_plus
  double kappa;              // angle of the λ+ eigenvector, in (−π/2, π/2]
  double gamma2;             // 1 − λ−/λ+ ∈ [0, 1)

  static GradientAnisotropy from_moments(double l200, double l020,
                                         double l110);
};

// σ2(Q)/π · √(λ200/λ000) · exp(−u²/(2λ000))  (isotropic length intensity)
double length_intensity(double l200, double l000, double u, double area);

// Complete elliptic integrals, parameter convention (via AGM):
// K(m) = ∫₀^{π/2} (1 − m sin²θ)^{−1/2} dθ,
// E(m) = ∫₀^{π/2} (1 − m sin²θ)^{1/2} dθ.
double elliptic_K(double m);
double elliptic_E(double m);

// Palm (length-weighted) density of the level-curve normal angle:
// g(φ) = (1−γ²)·(1 − γ² cos²(φ−κ))^{−3/2} / (4E(γ²)), φ ∈ (−π, π].
// Normals concentrate along the λ+ gradient eigendirection κ.
double palm_angle_density(const GradientAnisotropy& a, double phi);
double palm_angle_cdf(const GradientAnisotropy& a, double th1, double th2);

}  // namespace rice
