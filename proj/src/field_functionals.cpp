#include "rice/field_functionals.hpp"

#include <cmath>

#include "rice/gaussians.hpp"
#include "rice/quadrature.hpp"

namespace rice {

void TwinkleMoments::validate() const {
  if (l20 <= 0 || l40 <= 0 || l60 <= 0)
    throw ModelError("twinkle moments: λ20, λ40, λ60 must be > 0");
  if (l22 - l31 * l31 / l40 < 0)
    throw ModelError("twinkle moments: λ22 − λ31²/λ40 < 0");
  if (l60 - l40 * l40 / l20 < 0)
    throw ModelError("twinkle moments: λ60 − λ40²/λ20 < 0");
}

double twinkle_rate(const TwinkleMoments& m, double k) {
  m.validate();
  if (k <= 0) throw ModelError("twinkle_rate: k must be > 0");
  double lt6 = m.l60 - m.l40 * m.l40 / m.l20;
  double g1 = gauss_abs_mean(m.l31 * k / m.l40,
                             std::sqrt(m.l22 - m.l31 * m.l31 / m.l40));
  return std::sqrt(2.0 / M_PI) * norm_pdf(k / std::sqrt(m.l40)) * g1 / k *
         std::sqrt((m.l40 * m.l40 + lt6 * m.l20) / (m.l20 * m.l40));
}

double twinkle_rate_preintegrated(const TwinkleMoments& m, double k) {
  m.validate();
  if (k <= 0) throw ModelError("twinkle_rate: k must be > 0");
  double lt6 = m.l60 - m.l40 * m.l40 / m.l20;
  double g1 = gauss_abs_mean(m.l31 * k / m.l40,
                             std::sqrt(m.l22 - m.l31 * m.l31 / m.l40));
  double sl20 = std::sqrt(m.l20);
  // ∫ G((λ40/λ20)kx, √λ̃6)·(1/√λ20)φ(kx/√λ20) dx, u = kx/√λ20
  auto f = [&](double u) {
    return gauss_abs_mean(m.l40 / sl20 * u, std::sqrt(lt6)) * norm_pdf(u);
  };
  double xint = integrate_finite(f, -10.0, 10.0, 1e-13).value / k;
  return norm_pdf(k / std::sqrt(m.l40)) / std::sqrt(m.l40) * g1 * xint;
}

Vec3 det_form_eigenvalues(const Mat3& sigma) {
  const Mat3 A{{{0.0, 0.5, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.0, -1.0}}};
  Mat3 S = sqrt_psd3(sigma);
  Mat3 M = mul3(S, mul3(A, S));
  Eig3 e = eig_sym3(M);
  return e.values;
}

namespace {

// Re h(t) and the E|Δ| integral. h(t) = E e^{itΔ} with
// Δ = Σ_j Δ_j η_j² + 2 b_j η_j + k², η standard normal.
struct DetCF {
  Vec3 dl;   // Δ_j
  Vec3 b;    // b_j = (Pᵀ S A μ0)_j, μ0 = (−k,−k,0)
  double c;  // k²

  double re_h(double t) const {
    double logmod = 0.0, phase = c * t;
    for (int j = 0; j < 3; ++j) {
      double d2 = 1.0 + 4.0 * dl[j] * dl[j] * t * t;
      logmod += -0.25 * std::log(d2) - 2.0 * t * t * b[j] * b[j] / d2;
      phase += 0.5 * std::atan(2.0 * dl[j] * t) -
               4.0 * t * t * t * b[j] * b[j] * dl[j] / d2;
    }
    return std::exp(logmod) * std::cos(phase);
  }
};

DetCF make_cf(const Mat3& sigma, double k) {
  const Mat3 A{{{0.0, 0.5, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.0, -1.0}}};
  Mat3 S = sqrt_psd3(sigma);
  Mat3 M = mul3(S, mul3(A, S));
  Eig3 e = eig_sym3(M);
  DetCF cf;
  cf.dl = e.values;
  cf.c = k * k;
  // b = Pᵀ (S A μ0); μ0 = (−k, −k, 0)
  Vec3 amu{-0.5 * k, -0.5 * k, 0.0};  // A·μ0
  Vec3 samu{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) samu[i] += S[i][j] * amu[j];
  for (int j = 0; j < 3; ++j) {
    cf.b[j] = 0.0;
    for (int i = 0; i < 3; ++i) cf.b[j] += e.vectors[i][j] * samu[i];
  }
  return cf;
}

double cf_integral(const DetCF& cf) {
  // (2/π)∫₀^∞ (1 − Re h(t))/t² dt.
  // Small-t: log h = it(c + ΣΔ_j) − t²Σ(Δ_j² + 2b_j²) + O(t³), so
  // (1 − Re h)/t² → Σ(Δ_j² + 2b_j²) + ½(c + ΣΔ_j)².
  auto g = [&](double t) { return 1.0 - cf.re_h(t); };
  double sA = 0.0, sD = cf.c;
  for (int j = 0; j < 3; ++j) {
    sA += cf.dl[j] * cf.dl[j] + 2.0 * cf.b[j] * cf.b[j];
    sD += cf.dl[j];
  }
  double g0 = sA + 0.5 * sD * sD;
  // substitute s = c0·t so the rescaled integrand is O(1) near the origin
  // whatever the scale of Σ; ∫ g/t² dt = c0 ∫ G(s)/s² ds, G(s) = g(s/c0).
  double c0 = std::sqrt(g0);
  auto gs = [&](double s) { return g(s / c0); };
  QuadResult q = integrate_origin_singular(gs, 1.0, 1e-11, 1e-3);
  return (2.0 / M_PI) * c0 * q.value;
}

}  // namespace

double abs_det_expectation(const Spec2DProblem& p) {
  if (p.k < 0) throw ModelError("abs_det_expectation: k must be >= 0");
  return cf_integral(make_cf(p.sigma, p.k));
}

double m2_cos_form(const Mat3& sigma) {
  return cf_integral(make_cf(sigma, 0.0));
}

double m2_ab_form(const Mat3& sigma) {
  Vec3 dl = det_form_eigenvalues(sigma);
  auto g = [&](double t) {
    double A[3], B[3];
    double prod = 1.0;
    for (int j = 0; j < 3; ++j) {
      A[j] = 1.0 / std::sqrt(1.0 + 4.0 * dl[j] * dl[j] * t * t);
      // B_j carries the sign of Δ_j (tan of the half-angle)
      double s = dl[j] >= 0 ? 1.0 : -1.0;
      B[j] = s * std::sqrt((1.0 - A[j]) / (1.0 + A[j]));
      prod *= std::sqrt(A[j] * (1.0 + A[j]));
    }
    double core = std::pow(2.0, -1.5) * prod *
                  (1.0 - B[0] * B[1] - B[1] * B[2] - B[2] * B[0]);
    return 1.0 - core;
  };
  // same small-t limit as the cos-form at k = 0, b = 0
  double sA = 0.0, sD = 0.0;
  for (int j = 0; j < 3; ++j) {
    sA += dl[j] * dl[j];
    sD += dl[j];
  }
  double g0 = sA + 0.5 * sD * sD;
  double c0 = std::sqrt(g0);
  auto gs = [&](double s) { return g(s / c0); };
  QuadResult q = integrate_origin_singular(gs, 1.0, 1e-11, 1e-3);
  return (2.0 / M_PI) * c0 * q.value;
}

double m2_coefficient(const Mat3& sigma) {
  double a = m2_cos_form(sigma);
  double b = m2_ab_form(sigma);
  if (std::fabs(a - b) > 1e-6 * std::max(1.0, std::fabs(a)))
    throw ModelError("m2_coefficient: cos-form " + std::to_string(a) +
                     " disagrees with A/B-form " + std::to_string(b));
  return a;
}

double sp2d_intensity(const Spec2DProblem& p, double x, double y) {
  double det = p.l20 * p.l02 - p.l11 * p.l11;
  if (det <= 0) throw ModelError("sp2d: singular gradient covariance");
  double ed = abs_det_expectation(p);
  double u = p.k * x, v = p.k * y;
  double q = (p.l02 * u * u - 2.0 * p.l11 * u * v + p.l20 * v * v) / det;
  return ed * std::exp(-0.5 * q) / (2.0 * M_PI * std::sqrt(det));
}

double sp2d_expectation_rect(const Spec2DProblem& p, double x0, double x1,
                             double y0, double y1) {
  double ed = abs_det_expectation(p);
  double det = p.l20 * p.l02 - p.l11 * p.l11;
  if (det <= 0) throw ModelError("sp2d: singular gradient covariance");
  auto inner = [&](double x) {
    return gl_fixed(
        [&](double y) {
          double u = p.k * x, v = p.k * y;
          double q =
              (p.l02 * u * u - 2.0 * p.l11 * u * v + p.l20 * v * v) / det;
          return std::exp(-0.5 * q);
        },
        y0, y1, 48);
  };
  return ed * gl_fixed(inner, x0, x1, 64) / (2.0 * M_PI * std::sqrt(det));
}

double sp2d_expectation_total(const Spec2DProblem& p) {
  if (p.k <= 0) throw ModelError("sp2d total-plane: k must be > 0");
  return abs_det_expectation(p) / (p.k * p.k);
}

}  // namespace rice
