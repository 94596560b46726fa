#pragma once
// Monte Carlo oracle: randomized-spectral (cosine-sum) synthesis of
// stationary Gaussian paths/fields with exact derivatives, plus the
// level-set counting/measuring machinery.

#include <cstdint>
#include <functional>
#include <vector>

#include "rice/spectral_model.hpp"

namespace rice {

// W(x) = amp·Σ cos(ω_j x + φ_j), amp = √(2λ0/M); derivatives are exact.
struct PathSample {
  std::vector<double> omega, phase;
  double amp = 0.0;

  double deriv(double x, int order) const;  // order 0..high
  double value(double x) const { return deriv(x, 0); }

  // Evaluate W^{(order)} on the uniform grid x0 + i·h, i = 0..n-1, using a
  // per-harmonic rotation recurrence (O(M·n) flops, no trig in the loop).
  std::vector<double> grid_deriv(double x0, double h, int n, int order) const;
};

PathSample sample_path_1d(const CovarianceModel1D& model, int M, uint64_t seed,
                          uint64_t stream = 0);

// W(x,y) = amp·Σ cos(kx_j x + ky_j y + φ_j); isotropic: |k| from the radial
// spectrum, direction uniform.
struct FieldSample2D {
  std::vector<double> kx, ky, phase;
  double amp = 0.0;

  // dx + dy <= 2 supported
  double deriv(double x, double y, int dx, int dy) const;
  double value(double x, double y) const { return deriv(x, y, 0, 0); }

  // Row-wise rotation recurrence evaluation of the (dx,dy) derivative on
  // the grid {x0+i·hx} × {y0+j·hy}; result[j][i].
  std::vector<std::vector<double>> grid_deriv(double x0, double hx, int nx,
                                              double y0, double hy, int ny,
                                              int dx, int dy) const;
};

FieldSample2D sample_field_2d(const IsotropicSpectrum2D& spectrum, int M,
                              uint64_t seed, uint64_t stream = 0);
// Anisotropic variant: axis-stretched ring spectrum, wavevector
// (a·k0 cosθ, b·k0 sinθ), θ uniform. Gradient covariance diag entries
// k0²a²/2, k0²b²/2 (used for the Palm-angle verification).
FieldSample2D sample_field_2d_stretched(double k0, double ax, double by, int M,
                                        uint64_t seed, uint64_t stream = 0);

struct ZeroCountResult {
  long count = 0;
  std::vector<double> locations;          // empty when refine = false
  std::vector<bool> converged;
};

// Sign-change counting on a uniform grid with optional bisection refinement
// to |interval| < 1e-12. Double roots inside one cell are missed by
// construction; control with the step.
ZeroCountResult count_zeros_1d(const std::function<double(double)>& f,
                               double a, double b, double step,
                               bool refine = true);
long count_sign_changes(const std::vector<double>& vals);

struct Point2 {
  double x, y;
};

// Joint zeros of (f, g) on a rectangle: per-cell sign screening, 2D Newton
// refinement from the cell center (analytic Jacobian), sign-degree fallback.
struct VectorZeroResult {
  long count = 0;
  std::vector<Point2> locations;
  long fallback_cells = 0;
};

using Field2 = std::function<double(double, double)>;

VectorZeroResult count_vector_zeros_2d(
    const Field2& f, const Field2& g, const Field2& fx, const Field2& fy,
    const Field2& gx, const Field2& gy, double x0, double x1, double y0,
    double y1, double step);

// Marching-squares level-curve extraction; one segment per crossed cell
// with its length, the normal angle atan2(W_y, W_x) and the gradient
// magnitude |∇W| at the midpoint.
struct CurveSegment {
  double length;
  double angle;
  double grad;
};

struct LevelCurveResult {
  std::vector<CurveSegment> segments;
  double total_length = 0.0;
  long degenerate_cells = 0;
};

LevelCurveResult extract_level_curves(const Field2& w, const Field2& wx,
                                      const Field2& wy, double level,
                                      double x0, double x1, double y0,
                                      double y1, double step);

}  // namespace rice
