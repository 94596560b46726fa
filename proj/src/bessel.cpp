#include "rice/bessel.hpp"

#include <cmath>

namespace rice {

namespace {

constexpr double kSwitch = 17.0;

double j0_series(double x) {
  double q = -0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= q / (double(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) break;
  }
  return sum;
}

double j1_series(double x) {
  double q = -0.25 * x * x;
  double term = 0.5 * x, sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= q / (double(k) * (k + 1));
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) break;
  }
  return sum;
}

// Hankel expansion: Jν(x) ≈ √(2/πx)[P cos(χ) − Q sin(χ)], χ = x − (2ν+1)π/4.
// P, Q summed while the terms decrease (divergent series, optimal truncation).
void hankel_pq(double nu, double x, double* P, double* Q) {
  double mu = 4.0 * nu * nu;
  double p = 1.0, q = (mu - 1.0) / (8.0 * x);
  double sp = p, sq = q;
  for (int k = 1; k < 20; ++k) {
    double a = mu - (4 * k - 3) * (4 * k - 3);
    double b = mu - (4 * k - 1) * (4 * k - 1);
    // p_k = -p_{k-1}(mu-(4k-3)²)(mu-(4k-1)²)/((2k-1)(2k)(8x)²), similarly q
    double denom = (2.0 * k - 1.0) * (2.0 * k) * 64.0 * x * x;
    double pnew = -p * a * b / denom;
    double c = mu - (4 * k + 1) * (4 * k + 1);
    double denq = (2.0 * k) * (2.0 * k + 1.0) * 64.0 * x * x;
    double qnew = -q * b * c / denq;
    if (std::fabs(pnew) >= std::fabs(p) || std::fabs(qnew) >= std::fabs(q))
      break;
    sp += pnew;
    sq += qnew;
    p = pnew;
    q = qnew;
  }
  *P = sp;
  *Q = sq;
}

double j_asym(double nu, double x) {
  double P, Q;
  hankel_pq(nu, x, &P, &Q);
  double chi = x - (2.0 * nu + 1.0) * M_PI / 4.0;
  return std::sqrt(2.0 / (M_PI * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  x = std::fabs(x);
  return x <= kSwitch ? j0_series(x) : j_asym(0.0, x);
}

double bessel_j1(double x) {
  double s = x < 0 ? -1.0 : 1.0;
  x = std::fabs(x);
  return s * (x <= kSwitch ? j1_series(x) : j_asym(1.0, x));
}

}  // namespace rice
