#include "rice/dislocations.hpp"

#include <cmath>

#include "rice/quadrature.hpp"

namespace rice {

double mean_density_2d(double lambda2) {
  if (lambda2 <= 0) throw ModelError("mean_density_2d: λ2 must be > 0");
  return lambda2 / (2.0 * M_PI);
}

double mean_length_3d(double lambda2) {
  if (lambda2 <= 0) throw ModelError("mean_length_3d: λ2 must be > 0");
  return lambda2 / M_PI;
}

PairQuantities pair_quantities(const IsotropicSpectrum2D& spec, double r) {
  if (r <= 0) throw ModelError("pair_quantities: r must be > 0");
  RhoDerivs d = spec.rho_derivs(r);
  double omc2 = 1.0 - d.C * d.C;
  if (omc2 <= 0)
    throw ModelError("pair_quantities: 1 − C² <= 0 at r=" + std::to_string(r));
  double a = d.F0 - d.E * d.E / omc2;
  double b = d.F - d.E * d.E * d.C / omc2;
  PairQuantities pq;
  pq.rd = d;
  pq.A = {{{a, b}, {b, a}}};
  pq.B = {{{d.F0, d.H}, {d.H, d.F0}}};
  if (a <= 0 || d.F0 <= 0 || std::fabs(d.H) > d.F0 || std::fabs(b) > a)
    throw ModelError("pair_quantities: conditional covariance not PSD at r=" +
                     std::to_string(r));
  pq.A1 = d.F0 * a;
  pq.A2 = d.H / d.F0 * (d.F * omc2 - d.E * d.E * d.C) /
          (d.F0 * omc2 - d.E * d.E);
  pq.Z = (d.F0 * d.F0 - d.H * d.H) / (d.F0 * d.F0) *
         (1.0 - b * b / (a * a));
  return pq;
}

double pair_charfn_T(const PairQuantities& pq, double t1, double t2) {
  double a = pq.A[0][0], b = pq.A[0][1];
  double F0 = pq.B[0][0], H = pq.B[0][1];
  double s = t1 * t1 + t2 * t2, p = t1 * t2;
  double denom = 1.0 + s * F0 * a + 2.0 * p * H * b +
                 p * p * (F0 * F0 - H * H) * (a * a - b * b);
  return 1.0 / denom;
}

double pair_charfn_T_eig(const PairQuantities& pq, double t1, double t2) {
  // T = ∏ (1 + 4μ_m)⁻¹, μ_m eigenvalues of A^{1/2} D B D A^{1/2},
  // D = ½ diag(t1, t2).
  Mat2 sa = sqrt_psd2(pq.A);
  Mat2 dbd{{{0.25 * t1 * t1 * pq.B[0][0], 0.25 * t1 * t2 * pq.B[0][1]},
            {0.25 * t1 * t2 * pq.B[1][0], 0.25 * t2 * t2 * pq.B[1][1]}}};
  Mat2 m = mul2(sa, mul2(dbd, sa));
  Eig2 e = eig_sym2(m);
  return 1.0 / ((1.0 + 4.0 * e.values[0]) * (1.0 + 4.0 * e.values[1]));
}

double correlation_A(const IsotropicSpectrum2D& spec, double r) {
  double lc = 2.0 * M_PI / std::sqrt(2.0 * spec.lambda2());  // ~wavelength
  if (r < 1e-3 * lc)
    throw ModelError("correlation_A: r below 1e-3 correlation lengths");
  PairQuantities pq = pair_quantities(spec, r);
  double omc2 = 1.0 - pq.rd.C * pq.rd.C;
  auto g = [&](double t1) {
    double z1 = pq.Z1(t1), z2 = pq.Z2(t1);
    double arg = z2 - z1 * z1 * t1 * t1;
    if (arg <= 0)
      throw ModelError("correlation_A: Z2 − Z1²t1² <= 0 at t1=" +
                       std::to_string(t1));
    double bracket = 1.0 - (z2 - 2.0 * z1 * z1 * t1 * t1) /
                               ((1.0 + t1 * t1) * z2 * std::sqrt(arg));
    return bracket;  // integrand is bracket / t1², handled by the wrapper
  };
  // series limit: bracket/t1² → 1 + (1 − Z)/2 + (3/2)A2² as t1 → 0
  double g0 = 1.0 + 0.5 * (1.0 - pq.Z) + 1.5 * pq.A2 * pq.A2;
  QuadResult q = integrate_origin_singular(g, g0, 1e-11, 1e-2);
  // even integrand: ∫_{-∞}^{∞} = 2∫_0^∞
  return pq.A1 / (4.0 * M_PI * M_PI * M_PI * omc2) * 2.0 * q.value;
}

double correlation_A_quad2d(const IsotropicSpectrum2D& spec, double r,
                            double tol) {
  PairQuantities pq = pair_quantities(spec, r);
  double omc2 = 1.0 - pq.rd.C * pq.rd.C;
  // combination 1 − T(t1,0) − T(0,t2) + ½[T(t1,t2) + T(t1,−t2)],
  // integrated over the quarter plane (×4), each axis /t².
  double a = pq.A[0][0], b = pq.A[0][1];
  double F0 = pq.B[0][0], H = pq.B[0][1];
  auto inner = [&](double t1) {
    auto g2 = [&](double t2) {
      return 1.0 - pair_charfn_T(pq, t1, 0.0) - pair_charfn_T(pq, 0.0, t2) +
             0.5 * (pair_charfn_T(pq, t1, t2) + pair_charfn_T(pq, t1, -t2));
    };
    // series limit of the combination over t2² at fixed t1
    double d0 = 1.0 + t1 * t1 * F0 * a;
    double c2 = F0 * a + t1 * t1 * (F0 * F0 - H * H) * (a * a - b * b);
    double g0 = F0 * a - c2 / (d0 * d0) +
                4.0 * t1 * t1 * H * H * b * b / (d0 * d0 * d0);
    return integrate_origin_singular(g2, g0, tol, 1e-2).value;
  };
  auto outer = [&](double t1) { return inner(t1); };
  // the outer limit has no convenient closed form; read it off at a scale
  // where inner() carries clean digits
  double t0 = 1e-2;
  double g0 = outer(t0) / (t0 * t0);
  double val = integrate_origin_singular(outer, g0, tol * 30, 1e-2).value;
  // ×4 quarter-plane, × pair density, × 1/π² from the |w| representation
  return 4.0 * val / (M_PI * M_PI) / (4.0 * M_PI * M_PI * omc2);
}

}  // namespace rice
