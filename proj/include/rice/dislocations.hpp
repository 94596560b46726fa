#pragma once
// Wavefront dislocation statistics: mean densities, the pair
// characteristic function T(t1,t2), and the correlation function A(r).

#include "rice/linalg.hpp"
#include "rice/spectral_model.hpp"

namespace rice {

double mean_density_2d(double lambda2);  // d2 = λ2/(2π)
double mean_length_3d(double lambda2);   // d3 = λ2/π

struct PairQuantities {
  RhoDerivs rd;
  Mat2 A;      // conditional covariance of (ξ1(0), ξ1(r,0)) etc.
  Mat2 B;      // [[F0, H],[H, F0]]
  double A1;   // F0(F0 − E²/(1−C²))
  double A2;
  double Z;

  double Z1(double t1) const { return A2 / (1.0 + Z * t1 * t1); }
  double Z2(double t1) const {
    return (1.0 + t1 * t1) / (1.0 + Z * t1 * t1);
  }
};

PairQuantities pair_quantities(const IsotropicSpectrum2D& spec, double r);

// Closed form (1 + 4tr(DBDA) + 16det(DBDA))⁻¹ expanded in the five scalars.
double pair_charfn_T(const PairQuantities& pq, double t1, double t2);
// Independent route: eigenvalues of A^{1/2} D B D A^{1/2}.
double pair_charfn_T_eig(const PairQuantities& pq, double t1, double t2);

// Final single-integral form of the pair correlation.
double correlation_A(const IsotropicSpectrum2D& spec, double r);
// Independent derivation path: direct 2D quadrature of the T-combination.
double correlation_A_quad2d(const IsotropicSpectrum2D& spec, double r,
                            double tol = 1e-9);

}  // namespace rice
