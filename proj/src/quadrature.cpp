#include "rice/quadrature.hpp"

#include <cmath>
#include <vector>

namespace rice {

namespace {

double check(double v, double x) {
  if (std::isnan(v))
    throw QuadratureError("integrand returned NaN at x=" + std::to_string(x));
  return v;
}

struct Simpson {
  const Fn& f;
  int max_depth;
  double worst = 0.0;
  bool converged = true;

  double rec(double a, double b, double fa, double fm, double fb, double whole,
             double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = check(f(lm), lm), frm = check(f(rm), rm);
    double h6 = (b - a) / 12.0;
    double left = h6 * (fa + 4 * flm + fm);
    double right = h6 * (fm + 4 * frm + fb);
    double err = (left + right - whole) / 15.0;
    if (std::fabs(err) <= tol || depth >= max_depth) {
      if (depth >= max_depth && std::fabs(err) > tol) converged = false;
      worst += std::fabs(err);
      return left + right + err;
    }
    return rec(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           rec(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadResult integrate_finite(const Fn& f, double a, double b, double tol,
                            int max_depth) {
  if (!(a < b)) throw QuadratureError("integrate_finite: requires a < b");
  if (!(tol > 0)) throw QuadratureError("integrate_finite: tol must be > 0");
  // Seed with a few panels so symmetric integrands don't fool the estimator.
  const int panels = 8;
  double h = (b - a) / panels;
  Simpson s{f, max_depth};
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
    double f0 = check(f(x0), x0), f1 = check(f(x1), x1), fm = check(f(xm), xm);
    double whole = (x1 - x0) / 6.0 * (f0 + 4 * fm + f1);
    total += s.rec(x0, x1, f0, fm, f1, whole, tol / panels, 0);
  }
  return {total, s.worst, s.converged};
}

QuadResult integrate_half_line(const Fn& f, double a, double tol) {
  // t = a + u/(1-u), dt = du/(1-u)^2
  auto g = [&](double u) {
    double om = 1.0 - u;
    double t = a + u / om;
    return f(t) / (om * om);
  };
  // avoid evaluating exactly at u=1
  return integrate_finite(g, 0.0, 1.0 - 1e-14, tol);
}

QuadResult integrate_full_line(const Fn& f, double tol) {
  QuadResult pos = integrate_half_line(f, 0.0, 0.5 * tol);
  QuadResult neg =
      integrate_half_line([&](double t) { return f(-t); }, 0.0, 0.5 * tol);
  return {pos.value + neg.value, pos.error + neg.error,
          pos.converged && neg.converged};
}

QuadResult integrate_origin_singular(const Fn& g, double g0, double tol,
                                     double eps) {
  auto f = [&](double t) { return g(t) / (t * t); };
  // ∫_0^eps (g0 + g2 t²) dt with g2 fitted at eps
  double g2 = (f(eps) - g0) / (eps * eps);
  double head = g0 * eps + g2 * eps * eps * eps / 3.0;
  QuadResult body = integrate_half_line(f, eps, tol);
  return {body.value + head, body.error, body.converged};
}

namespace {

// Nodes/weights generated by Newton iteration on Legendre polynomials at
// startup; cached per order.
struct GL {
  std::vector<double> x, w;
  explicit GL(int n) : x(n), w(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        double dt = p1 / dp;
        t -= dt;
        if (std::fabs(dt) < 1e-15) break;
      }
      x[i] = -t;
      x[n - 1 - i] = t;
      w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

const GL& gl_cache(int n) {
  static const GL g16(16), g32(32), g48(48), g64(64);
  switch (n) {
    case 16: return g16;
    case 32: return g32;
    case 48: return g48;
    case 64: return g64;
    default: throw QuadratureError("gauss_legendre: unsupported order");
  }
}

}  // namespace

void gauss_legendre(int n, const double** nodes, const double** weights) {
  const GL& g = gl_cache(n);
  *nodes = g.x.data();
  *weights = g.w.data();
}

double gl_fixed(const Fn& f, double a, double b, int n) {
  const GL& g = gl_cache(n);
  double c = 0.5 * (b - a), m = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += g.w[i] * f(m + c * g.x[i]);
  return c * s;
}

}  // namespace rice
