#pragma once
// Two-parameter functionals: the twinkle rate and 2D specular-point
// statistics via the characteristic function of the Hessian determinant.

#include "rice/linalg.hpp"
#include "rice/spectral_model.hpp"

namespace rice {

struct TwinkleMoments {
  double l20, l40, l31, l22, l60;
  void validate() const;
};

// Expected twinkles per unit time over all space:
//   √(2/π)·φ(k/√λ40)·G(λ31k/λ40, √(λ22−λ31²/λ40))·(1/k)·
//   √((λ40² + λ̃6·λ20)/(λ20·λ40)),  λ̃6 = λ60 − λ40²/λ20.
// The pre-integrated route (quadrature over the x-intensity) is exposed for
// cross-validation; the two agree to ~1e-10.
double twinkle_rate(const TwinkleMoments& m, double k);
double twinkle_rate_preintegrated(const TwinkleMoments& m, double k);

struct Spec2DProblem {
  Mat3 sigma;                       // cov of (W_xx, W_yy, W_xy)
  double l20 = 1, l02 = 1, l11 = 0; // gradient covariance
  double k = 0;
};

// E|Δ|, Δ = (W_xx−k)(W_yy−k) − W_xy², by the characteristic-function
// method: E|Δ| = (2/π)∫₀^∞ (1 − Re h(t))/t² dt.
double abs_det_expectation(const Spec2DProblem& p);

// m2 = E|Δ| at k = 0. Evaluates both the cos(Σφ_j) form and the A_j/B_j
// form; returns the cos-form and throws if they disagree beyond 1e-6.
double m2_coefficient(const Mat3& sigma);
// individual routes (for the oracle-equivalence tests)
double m2_cos_form(const Mat3& sigma);
double m2_ab_form(const Mat3& sigma);

// intensity(x,y) = E|Δ|·p_{(Wx,Wy)}(kx, ky); expectation over a rectangle
// or (k > 0) the total-plane value E|Δ|/k².
double sp2d_intensity(const Spec2DProblem& p, double x, double y);
double sp2d_expectation_rect(const Spec2DProblem& p, double x0, double x1,
                             double y0, double y1);
double sp2d_expectation_total(const Spec2DProblem& p);

// eigenvalues Δ_j of Σ^{1/2}AΣ^{1/2}, A = [[0,½,0],[½,0,0],[0,0,−1]]
Vec3 det_form_eigenvalues(const Mat3& sigma);

}  // namespace rice
