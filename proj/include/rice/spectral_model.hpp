#pragma once
// Covariance / spectrum models and the spectral moments consumed by every
// analytic evaluator.
//
// CovarianceModel1D supports:
//   - gaussian(variance, length_scale):      Γ(z) = v·exp(−z²/2ℓ²)
//   - compact_bump(delta, exponent):         Γ = c·(g★g), g(z) = (1−(2z/δ)²)^p
//     on [−δ/2, δ/2]; exactly zero beyond δ, C^{2p−2}, λ8 < ∞ for p ≥ 5.
//   - tabulated spectrum on a frequency grid (composite Simpson).
// All models expose Γ^(i)(z) for i = 0..8, spectral moments, and a sampler
// of the normalized spectral measure (for the simulation oracle).

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rice/linalg.hpp"
#include "rice/rng.hpp"

namespace rice {

class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& m) : std::runtime_error(m) {}
};

class CovarianceModel1D {
 public:
  static CovarianceModel1D gaussian(double variance, double length_scale);
  static CovarianceModel1D compact_bump(double delta, int exponent);
  static CovarianceModel1D tabulated_spectrum(std::vector<double> freq,
                                              std::vector<double> density);

  // i-th derivative of Γ at z, 0 <= i <= 8.
  double gamma_deriv(double z, int i) const;
  double gamma(double z) const { return gamma_deriv(z, 0); }

  // λ_order = (−1)^{order/2} Γ^{(order)}(0) = ∫ ω^order dμ; order even, <= 8.
  double spectral_moment(int order) const;

  // Half-width of the covariance support; +inf for non-compact models.
  double support_radius() const;

  // Draw a frequency from the normalized spectral measure (ω >= 0 half,
  // symmetrized by the caller's cosine representation).
  double sample_frequency(SplitRng& rng) const;

  const std::string& kind() const { return kind_; }

 private:
  CovarianceModel1D() = default;
  void validate() const;

  std::string kind_;
  // gaussian
  double var_ = 0, ell_ = 0;
  // compact bump: coefficient arrays of g^{(n)}, n = 0..8, plus scale
  double delta_ = 0;
  int exponent_ = 0;
  double bump_scale_ = 1.0;
  std::vector<std::vector<double>> g_derivs_;
  // tabulated (also used as the bump's sampler table)
  std::vector<double> freq_, dens_, cum_;
  void build_sampler_table();
};

// 2D radial spectrum with unit field variance (ρ(0) = 1).
struct RhoDerivs {
  double C;   // ρ(r)
  double E;   // ρ'(r)
  double H;   // −E/r  (→ F0 as r → 0)
  double F;   // −ρ''(r)
  double F0;  // −ρ''(0) = λ2
};

class IsotropicSpectrum2D {
 public:
  static IsotropicSpectrum2D ring(double k0);
  static IsotropicSpectrum2D gaussian_ring(double k0, double width);
  static IsotropicSpectrum2D tabulated(std::vector<double> k,
                                       std::vector<double> density);

  RhoDerivs rho_derivs(double r) const;
  double lambda2() const;  // = F0

  // Draw a wavevector modulus from Π(k).
  double sample_modulus(SplitRng& rng) const;

  const std::string& kind() const { return kind_; }

 private:
  IsotropicSpectrum2D() = default;
  std::string kind_;
  double k0_ = 0, width_ = 0;
  std::vector<double> k_, dens_, cum_;
};

// Multi-index spectral moments (1D, 2D or 3D tags).
struct SpectralMoments {
  int dim = 2;
  std::map<std::vector<int>, double> entries;

  double get(std::vector<int> idx) const {
    auto it = entries.find(idx);
    if (it == entries.end()) {
      std::string s;
      for (int v : idx) s += std::to_string(v);
      throw ModelError("missing spectral moment lambda_" + s);
    }
    return it->second;
  }
};

// Σ over (W_xx, W_yy, W_xy) from λ40, λ22, λ31, λ04, λ13; PSD-checked.
Mat3 hessian_cov_matrix(const SpectralMoments& m);

}  // namespace rice
