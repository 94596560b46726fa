#pragma once
// Deterministic 1D integration: adaptive Simpson on finite intervals,
// algebraic maps for half-line / full-line domains, and a helper for
// integrands of the form g(t)/t^2 with a removable singularity at 0.

#include <functional>
#include <stdexcept>
#include <string>

namespace rice {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   // estimate of the absolute error actually achieved
  bool converged = true;
};

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& msg) : std::runtime_error(msg) {}
};

using Fn = std::function<double(double)>;

// Adaptive Simpson on [a, b] with absolute tolerance `tol`.
// Throws QuadratureError on NaN from f; returns converged=false (with the
// best estimate) if the recursion cap is hit.
QuadResult integrate_finite(const Fn& f, double a, double b, double tol,
                            int max_depth = 48);

// ∫_a^∞ f, via t = a + u/(1-u), u ∈ [0,1).
QuadResult integrate_half_line(const Fn& f, double a, double tol);

// ∫_{-∞}^{∞} f.
QuadResult integrate_full_line(const Fn& f, double tol);

// ∫_0^∞ g(t)/t² dt where g(t) = f(t)·t² extends continuously to 0 with the
// supplied limit g0. g must be evaluable for t > 0. [0, eps] is handled by
// the quadratic model g/t² ≈ g0 + g2·t² (g2 read off at eps); callers choose
// eps at their own t-scale, large enough that evaluating g there does not
// lose precision to cancellation.
QuadResult integrate_origin_singular(const Fn& g, double g0, double tol,
                                     double eps = 1e-3);

// Gauss-Legendre nodes/weights on [-1,1]; n in {16, 32, 48, 64}.
// Used where a fixed high-order rule beats adaptivity (smooth integrands).
void gauss_legendre(int n, const double** nodes, const double** weights);

// Fixed-order Gauss-Legendre over [a,b] (no error estimate; n as above).
double gl_fixed(const Fn& f, double a, double b, int n = 48);

}  // namespace rice
