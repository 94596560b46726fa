#include "rice/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rice/bessel.hpp"
#include "rice/quadrature.hpp"

namespace rice {

namespace {

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

std::vector<double> poly_diff(const std::vector<double>& c) {
  std::vector<double> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * double(i));
  if (d.empty()) d.push_back(0.0);
  return d;
}

// probabilists' Hermite He_n
double hermite(int n, double x) {
  double h0 = 1.0, h1 = x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    double h2 = x * h1 - k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double simpson_grid(const std::vector<double>& x, const std::vector<double>& y) {
  // composite trapezoid-corrected Simpson for possibly non-uniform grids:
  // integrate the piecewise quadratic through consecutive triples.
  double s = 0.0;
  size_t n = x.size();
  size_t i = 0;
  for (; i + 2 < n; i += 2) {
    double h0 = x[i + 1] - x[i], h1 = x[i + 2] - x[i + 1];
    double hs = h0 + h1;
    s += hs / 6.0 *
         ((2.0 - h1 / h0) * y[i] + hs * hs / (h0 * h1) * y[i + 1] +
          (2.0 - h0 / h1) * y[i + 2]);
  }
  if (i + 1 < n)  // leftover interval: trapezoid
    s += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
  return s;
}

}  // namespace

CovarianceModel1D CovarianceModel1D::gaussian(double variance,
                                              double length_scale) {
  if (variance <= 0 || length_scale <= 0)
    throw ModelError("gaussian model: variance and length-scale must be > 0");
  CovarianceModel1D m;
  m.kind_ = "gaussian";
  m.var_ = variance;
  m.ell_ = length_scale;
  return m;
}

CovarianceModel1D CovarianceModel1D::compact_bump(double delta, int exponent) {
  if (delta <= 0) throw ModelError("compact-bump: delta must be > 0");
  if (exponent < 5)
    throw ModelError("compact-bump: exponent must be >= 5 (need C^8, λ8 < ∞)");
  CovarianceModel1D m;
  m.kind_ = "compact-bump-convolution";
  m.delta_ = delta;
  m.exponent_ = exponent;
  // g(z) = (1 − (2z/δ)²)^p = Σ C(p,i)(−1)^i (2/δ)^{2i} z^{2i}
  double a2 = 4.0 / (delta * delta);
  std::vector<double> g(2 * exponent + 1, 0.0);
  double binom = 1.0, pw = 1.0;
  for (int i = 0; i <= exponent; ++i) {
    g[2 * i] = (i % 2 ? -1.0 : 1.0) * binom * pw;
    binom *= double(exponent - i) / double(i + 1);
    pw *= a2;
  }
  m.g_derivs_.push_back(g);
  for (int n = 1; n <= 8; ++n) m.g_derivs_.push_back(poly_diff(m.g_derivs_.back()));
  m.bump_scale_ = 1.0;
  double raw = m.gamma_deriv(0.0, 0);
  m.bump_scale_ = 1.0 / raw;
  m.build_sampler_table();
  return m;
}

CovarianceModel1D CovarianceModel1D::tabulated_spectrum(
    std::vector<double> freq, std::vector<double> density) {
  if (freq.size() != density.size() || freq.size() < 3)
    throw ModelError("tabulated spectrum: need matching grids of size >= 3");
  for (size_t i = 1; i < freq.size(); ++i)
    if (freq[i] <= freq[i - 1])
      throw ModelError("tabulated spectrum: frequency grid must increase");
  for (double d : density)
    if (d < 0) throw ModelError("tabulated spectrum: negative density");
  CovarianceModel1D m;
  m.kind_ = "tabulated-spectrum";
  m.freq_ = std::move(freq);
  m.dens_ = std::move(density);
  m.cum_.assign(m.freq_.size(), 0.0);
  for (size_t i = 1; i < m.freq_.size(); ++i)
    m.cum_[i] = m.cum_[i - 1] + 0.5 * (m.dens_[i] + m.dens_[i - 1]) *
                                    (m.freq_[i] - m.freq_[i - 1]);
  m.validate();
  return m;
}

void CovarianceModel1D::validate() const {
  if (spectral_moment(2) <= 0) throw ModelError("degenerate model: λ2 <= 0");
}

double CovarianceModel1D::gamma_deriv(double z, int i) const {
  if (i < 0 || i > 8)
    throw ModelError("gamma_deriv: order must be in 0..8");
  if (kind_ == "gaussian") {
    double x = z / ell_;
    double sgn = (i % 2) ? -1.0 : 1.0;
    return var_ * sgn * std::pow(ell_, -i) * hermite(i, x) *
           std::exp(-0.5 * x * x);
  }
  if (kind_ == "compact-bump-convolution") {
    if (std::fabs(z) > delta_) return 0.0;
    // Γ^{(n)}(z) = c(−1)^{n2} ∫ g^{(n1)}(u) g^{(n2)}(u−z) du, n1+n2 = n,
    // n1, n2 <= p−1 so both factors are continuous: no boundary terms.
    int n1 = i / 2, n2 = i - n1;
    double lo = std::max(-delta_ / 2.0, z - delta_ / 2.0);
    double hi = std::min(delta_ / 2.0, z + delta_ / 2.0);
    if (hi <= lo) return 0.0;
    const std::vector<double>& p1 = g_derivs_[n1];
    const std::vector<double>& p2 = g_derivs_[n2];
    double v = gl_fixed(
        [&](double u) { return poly_eval(p1, u) * poly_eval(p2, u - z); }, lo,
        hi, 64);
    return bump_scale_ * ((n2 % 2) ? -v : v);
  }
  // tabulated: Γ^{(n)}(z) = ∫ ω^n cos(ωz + nπ/2) Π(ω) dω
  std::vector<double> y(freq_.size());
  for (size_t j = 0; j < freq_.size(); ++j)
    y[j] = std::pow(freq_[j], i) * std::cos(freq_[j] * z + i * M_PI / 2.0) *
           dens_[j];
  return simpson_grid(freq_, y);
}

double CovarianceModel1D::spectral_moment(int order) const {
  if (order < 0 || order > 8 || order % 2 != 0)
    throw ModelError("spectral_moment: order must be even in 0..8");
  double sgn = (order / 2) % 2 ? -1.0 : 1.0;
  return sgn * gamma_deriv(0.0, order);
}

double CovarianceModel1D::support_radius() const {
  if (kind_ == "compact-bump-convolution") return delta_;
  return std::numeric_limits<double>::infinity();
}

void CovarianceModel1D::build_sampler_table() {
  // Π(ω) ∝ ĝ(ω)², ĝ(ω) = ∫ g(u) cos(ωu) du over the bump support.
  const int n = 4096;
  double omax = 120.0 / delta_;
  freq_.resize(n);
  dens_.resize(n);
  const std::vector<double>& g = g_derivs_[0];
  double half = delta_ / 2.0;
  for (int j = 0; j < n; ++j) {
    double w = omax * j / (n - 1);
    int segs = std::max(4, int(w * delta_ / 4.0) + 1);
    double ghat = 0.0;
    for (int s = 0; s < segs; ++s) {
      double a = -half + delta_ * s / segs, b = -half + delta_ * (s + 1) / segs;
      ghat += gl_fixed(
          [&](double u) { return poly_eval(g, u) * std::cos(w * u); }, a, b,
          16);
    }
    freq_[j] = w;
    dens_[j] = ghat * ghat;
  }
  cum_.assign(n, 0.0);
  for (int j = 1; j < n; ++j)
    cum_[j] = cum_[j - 1] +
              0.5 * (dens_[j] + dens_[j - 1]) * (freq_[j] - freq_[j - 1]);
}

double CovarianceModel1D::sample_frequency(SplitRng& rng) const {
  if (kind_ == "gaussian") return std::fabs(rng.normal()) / ell_;
  if (cum_.empty())
    throw ModelError("model kind '" + kind_ + "' has no samplable spectrum");
  double u = rng.uniform() * cum_.back();
  auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
  size_t j = std::max<size_t>(1, it - cum_.begin());
  double c0 = cum_[j - 1], c1 = cum_[j];
  double t = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
  return freq_[j - 1] + t * (freq_[j] - freq_[j - 1]);
}

// ---------------------------------------------------------------------------

IsotropicSpectrum2D IsotropicSpectrum2D::ring(double k0) {
  if (k0 <= 0) throw ModelError("ring spectrum: k0 must be > 0");
  IsotropicSpectrum2D s;
  s.kind_ = "ring";
  s.k0_ = k0;
  return s;
}

IsotropicSpectrum2D IsotropicSpectrum2D::gaussian_ring(double k0,
                                                       double width) {
  if (k0 <= 0 || width <= 0)
    throw ModelError("gaussian-ring spectrum: k0, width must be > 0");
  IsotropicSpectrum2D s;
  s.kind_ = "gaussian-ring";
  s.k0_ = k0;
  s.width_ = width;
  return s;
}

IsotropicSpectrum2D IsotropicSpectrum2D::tabulated(
    std::vector<double> k, std::vector<double> density) {
  if (k.size() != density.size() || k.size() < 3)
    throw ModelError("tabulated 2D spectrum: need matching grids, size >= 3");
  IsotropicSpectrum2D s;
  s.kind_ = "tabulated";
  s.k_ = std::move(k);
  s.dens_ = std::move(density);
  // normalize to ∫Π = 1
  std::vector<double> ones(s.k_.size());
  double z = simpson_grid(s.k_, s.dens_);
  if (z <= 0) throw ModelError("tabulated 2D spectrum: zero total mass");
  for (double& d : s.dens_) d /= z;
  s.cum_.assign(s.k_.size(), 0.0);
  for (size_t i = 1; i < s.k_.size(); ++i)
    s.cum_[i] = s.cum_[i - 1] +
                0.5 * (s.dens_[i] + s.dens_[i - 1]) * (s.k_[i] - s.k_[i - 1]);
  return s;
}

namespace {

// kernels: C: J0(kr); E: −k J1(kr); F: −ρ'' = ∫ k²(J0(kr) − J1(kr)/(kr))Π? No:
// ρ''(r) = d/dr ∫ −kJ1(kr)Π dk = −∫k²J1'(kr)Π = −∫k²(J0(kr) − J1(kr)/(kr))Π.
// So F = −ρ'' = ∫ k²(J0(kr) − J1(kr)/(kr)) Π(k) dk ... with the sign fixed by
// F(0) = F0 = ∫ k²/2 Π: J0−J1/x → 1 − 1/2 = 1/2 ✓.
struct Kernels {
  double c, e, f;
};

Kernels eval_kernels(double k, double r) {
  double x = k * r;
  double j0 = bessel_j0(x), j1 = bessel_j1(x);
  double j1_over_x = (std::fabs(x) < 1e-8) ? 0.5 : j1 / x;
  return {j0, -k * j1, k * k * (j0 - j1_over_x)};
}

}  // namespace

RhoDerivs IsotropicSpectrum2D::rho_derivs(double r) const {
  if (r < 0) throw ModelError("rho_derivs: r must be >= 0");
  double C, E, F, F0;
  if (kind_ == "ring") {
    Kernels kn = eval_kernels(k0_, r);
    C = kn.c;
    E = kn.e;
    F = kn.f;
    F0 = 0.5 * k0_ * k0_;
  } else if (kind_ == "gaussian-ring") {
    double lo = std::max(0.0, k0_ - 10.0 * width_), hi = k0_ + 10.0 * width_;
    auto dens = [&](double k) {
      double t = (k - k0_) / width_;
      return std::exp(-0.5 * t * t);
    };
    double z = gl_fixed(dens, lo, hi, 64);
    auto avg = [&](auto kern) {
      return gl_fixed([&](double k) { return kern(k) * dens(k); }, lo, hi, 64) /
             z;
    };
    C = avg([&](double k) { return eval_kernels(k, r).c; });
    E = avg([&](double k) { return eval_kernels(k, r).e; });
    F = avg([&](double k) { return eval_kernels(k, r).f; });
    F0 = avg([&](double k) { return 0.5 * k * k; });
  } else {
    auto integ = [&](auto kern) {
      std::vector<double> y(k_.size());
      for (size_t i = 0; i < k_.size(); ++i) y[i] = kern(k_[i]) * dens_[i];
      return simpson_grid(k_, y);
    };
    C = integ([&](double k) { return eval_kernels(k, r).c; });
    E = integ([&](double k) { return eval_kernels(k, r).e; });
    F = integ([&](double k) { return eval_kernels(k, r).f; });
    F0 = integ([&](double k) { return 0.5 * k * k; });
  }
  double H = (r < 1e-6) ? F0 : -E / r;
  return {C, E, H, F, F0};
}

double IsotropicSpectrum2D::lambda2() const { return rho_derivs(0.0).F0; }

double IsotropicSpectrum2D::sample_modulus(SplitRng& rng) const {
  if (kind_ == "ring") return k0_;
  if (kind_ == "gaussian-ring") {
    for (int i = 0; i < 10000; ++i) {
      double k = k0_ + width_ * rng.normal();
      if (k > 0) return k;
    }
    throw ModelError("gaussian-ring sampling failed (k0/width too extreme)");
  }
  double u = rng.uniform() * cum_.back();
  auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
  size_t j = std::max<size_t>(1, it - cum_.begin());
  double c0 = cum_[j - 1], c1 = cum_[j];
  double t = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
  return k_[j - 1] + t * (k_[j] - k_[j - 1]);
}

Mat3 hessian_cov_matrix(const SpectralMoments& m) {
  double l40 = m.get({4, 0}), l22 = m.get({2, 2}), l31 = m.get({3, 1}),
         l04 = m.get({0, 4}), l13 = m.get({1, 3});
  Mat3 sigma{{{l40, l22, l31}, {l22, l04, l13}, {l31, l13, l22}}};
  Eig3 e = eig_sym3(sigma);
  double tr = l40 + l04 + l22;
  for (double v : e.values)
    if (v < -1e-12 * std::max(tr, 1e-300))
      throw ModelError("hessian covariance is not positive semidefinite");
  return sigma;
}

}  // namespace rice
