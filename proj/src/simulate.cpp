#include "rice/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace rice {

namespace {

double checked(double v, double where) {
  if (!std::isfinite(v))
    throw std::runtime_error("non-finite sample value at x=" +
                             std::to_string(where));
  return v;
}

}  // namespace

double PathSample::deriv(double x, int order) const {
  double s = 0.0;
  double shift = order * M_PI / 2.0;
  for (size_t j = 0; j < omega.size(); ++j)
    s += std::pow(omega[j], order) * std::cos(omega[j] * x + phase[j] + shift);
  return amp * s;
}

std::vector<double> PathSample::grid_deriv(double x0, double h, int n,
                                           int order) const {
  std::vector<double> out(n, 0.0);
  double shift = order * M_PI / 2.0;
  size_t M = omega.size();
  // Phasor rotation along the grid, blocked over harmonics so the inner
  // loops are independent (vectorizable) and the block state stays in
  // cache; a harmonic-outer loop would serialize on the rotation
  // recurrence.
  constexpr size_t B = 2048;
  std::vector<double> c(B), s(B), cr(B), sr(B), sc(B);
  for (size_t j0 = 0; j0 < M; j0 += B) {
    size_t jb = std::min(B, M - j0);
    for (size_t j = 0; j < jb; ++j) {
      double w = omega[j0 + j];
      sc[j] = std::pow(w, order);
      double ang = w * x0 + phase[j0 + j] + shift;
      c[j] = std::cos(ang);
      s[j] = std::sin(ang);
      cr[j] = std::cos(w * h);
      sr[j] = std::sin(w * h);
    }
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (size_t j = 0; j < jb; ++j) acc += sc[j] * c[j];
      out[i] += acc;
      for (size_t j = 0; j < jb; ++j) {
        double cn = c[j] * cr[j] - s[j] * sr[j];
        s[j] = s[j] * cr[j] + c[j] * sr[j];
        c[j] = cn;
      }
    }
  }
  for (double& v : out) v *= amp;
  return out;
}

PathSample sample_path_1d(const CovarianceModel1D& model, int M, uint64_t seed,
                          uint64_t stream) {
  if (M < 1) throw std::invalid_argument("sample_path_1d: M >= 1 required");
  SplitRng rng(seed, stream);
  PathSample p;
  p.omega.resize(M);
  p.phase.resize(M);
  for (int j = 0; j < M; ++j) {
    p.omega[j] = model.sample_frequency(rng);
    p.phase[j] = rng.uniform(0.0, 2.0 * M_PI);
  }
  p.amp = std::sqrt(2.0 * model.spectral_moment(0) / M);
  return p;
}

double FieldSample2D::deriv(double x, double y, int dx, int dy) const {
  double s = 0.0;
  int order = dx + dy;
  double shift = order * M_PI / 2.0;
  for (size_t j = 0; j < kx.size(); ++j) {
    double scale = std::pow(kx[j], dx) * std::pow(ky[j], dy);
    s += scale * std::cos(kx[j] * x + ky[j] * y + phase[j] + shift);
  }
  return amp * s;
}

std::vector<std::vector<double>> FieldSample2D::grid_deriv(
    double x0, double hx, int nx, double y0, double hy, int ny, int dx,
    int dy) const {
  std::vector<std::vector<double>> out(ny, std::vector<double>(nx, 0.0));
  double shift = (dx + dy) * M_PI / 2.0;
  for (size_t j = 0; j < kx.size(); ++j) {
    double scale = std::pow(kx[j], dx) * std::pow(ky[j], dy);
    double crx = std::cos(kx[j] * hx), srx = std::sin(kx[j] * hx);
    for (int r = 0; r < ny; ++r) {
      double ang = kx[j] * x0 + ky[j] * (y0 + r * hy) + phase[j] + shift;
      double c = std::cos(ang), s = std::sin(ang);
      double* row = out[r].data();
      for (int i = 0; i < nx; ++i) {
        row[i] += scale * c;
        double cn = c * crx - s * srx;
        s = s * crx + c * srx;
        c = cn;
      }
    }
  }
  for (auto& row : out)
    for (double& v : row) v *= amp;
  return out;
}

FieldSample2D sample_field_2d(const IsotropicSpectrum2D& spectrum, int M,
                              uint64_t seed, uint64_t stream) {
  if (M < 1) throw std::invalid_argument("sample_field_2d: M >= 1 required");
  SplitRng rng(seed, stream);
  FieldSample2D f;
  f.kx.resize(M);
  f.ky.resize(M);
  f.phase.resize(M);
  for (int j = 0; j < M; ++j) {
    double k = spectrum.sample_modulus(rng);
    double th = rng.uniform(0.0, 2.0 * M_PI);
    f.kx[j] = k * std::cos(th);
    f.ky[j] = k * std::sin(th);
    f.phase[j] = rng.uniform(0.0, 2.0 * M_PI);
  }
  f.amp = std::sqrt(2.0 / M);  // unit variance convention
  return f;
}

FieldSample2D sample_field_2d_stretched(double k0, double ax, double by, int M,
                                        uint64_t seed, uint64_t stream) {
  SplitRng rng(seed, stream);
  FieldSample2D f;
  f.kx.resize(M);
  f.ky.resize(M);
  f.phase.resize(M);
  for (int j = 0; j < M; ++j) {
    double th = rng.uniform(0.0, 2.0 * M_PI);
    f.kx[j] = k0 * ax * std::cos(th);
    f.ky[j] = k0 * by * std::sin(th);
    f.phase[j] = rng.uniform(0.0, 2.0 * M_PI);
  }
  f.amp = std::sqrt(2.0 / M);
  return f;
}

long count_sign_changes(const std::vector<double>& vals) {
  long c = 0;
  for (size_t i = 1; i < vals.size(); ++i) {
    double a = vals[i - 1], b = vals[i];
    if ((a < 0 && b >= 0) || (a >= 0 && b < 0)) ++c;
  }
  return c;
}

ZeroCountResult count_zeros_1d(const std::function<double(double)>& f,
                               double a, double b, double step, bool refine) {
  ZeroCountResult res;
  double prev = checked(f(a), a);
  for (double x = a; x < b; x += step) {
    double xn = std::min(x + step, b);
    double cur = checked(f(xn), xn);
    bool sign_change = (prev < 0 && cur >= 0) || (prev >= 0 && cur < 0);
    if (sign_change) {
      ++res.count;
      if (refine) {
        double lo = x, hi = xn, flo = prev;
        bool ok = false;
        for (int it = 0; it < 200; ++it) {
          double m = 0.5 * (lo + hi);
          double fm = f(m);
          if ((flo < 0) == (fm < 0)) {
            lo = m;
            flo = fm;
          } else {
            hi = m;
          }
          if (hi - lo < 1e-12) {
            ok = true;
            break;
          }
        }
        res.locations.push_back(0.5 * (lo + hi));
        res.converged.push_back(ok);
      }
    }
    prev = cur;
  }
  return res;
}

namespace {

bool newton2(const Field2& f, const Field2& g, const Field2& fx,
             const Field2& fy, const Field2& gx, const Field2& gy, double& x,
             double& y) {
  for (int it = 0; it < 60; ++it) {
    double F = f(x, y), G = g(x, y);
    double a = fx(x, y), b = fy(x, y), c = gx(x, y), d = gy(x, y);
    double det = a * d - b * c;
    if (std::fabs(det) < 1e-300) return false;
    double dx = (d * F - b * G) / det, dy = (a * G - c * F) / det;
    x -= dx;
    y -= dy;
    if (std::fabs(dx) + std::fabs(dy) < 1e-13) return true;
  }
  return false;
}

// winding number of (f,g) around the cell boundary, sampled
int sign_degree(const Field2& f, const Field2& g, double x0, double y0,
                double h) {
  const int m = 8;
  double prev_ang = 0.0;
  double total = 0.0;
  bool first = true;
  auto visit = [&](double x, double y) {
    double ang = std::atan2(g(x, y), f(x, y));
    if (!first) {
      double d = ang - prev_ang;
      while (d > M_PI) d -= 2 * M_PI;
      while (d < -M_PI) d += 2 * M_PI;
      total += d;
    }
    first = false;
    prev_ang = ang;
  };
  for (int i = 0; i < m; ++i) visit(x0 + h * i / m, y0);
  for (int i = 0; i < m; ++i) visit(x0 + h, y0 + h * i / m);
  for (int i = 0; i < m; ++i) visit(x0 + h - h * i / m, y0 + h);
  for (int i = 0; i < m; ++i) visit(x0, y0 + h - h * i / m);
  visit(x0, y0);
  return int(std::lround(total / (2 * M_PI)));
}

}  // namespace

VectorZeroResult count_vector_zeros_2d(const Field2& f, const Field2& g,
                                       const Field2& fx, const Field2& fy,
                                       const Field2& gx, const Field2& gy,
                                       double x0, double x1, double y0,
                                       double y1, double step) {
  VectorZeroResult res;
  int nx = std::max(1, int(std::ceil((x1 - x0) / step)));
  int ny = std::max(1, int(std::ceil((y1 - y0) / step)));
  double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
  // corner values cached row by row
  std::vector<double> frow0(nx + 1), frow1(nx + 1), grow0(nx + 1),
      grow1(nx + 1);
  for (int i = 0; i <= nx; ++i) {
    frow0[i] = f(x0 + i * hx, y0);
    grow0[i] = g(x0 + i * hx, y0);
  }
  for (int r = 0; r < ny; ++r) {
    double ylo = y0 + r * hy, yhi = ylo + hy;
    for (int i = 0; i <= nx; ++i) {
      frow1[i] = f(x0 + i * hx, yhi);
      grow1[i] = g(x0 + i * hx, yhi);
    }
    for (int i = 0; i < nx; ++i) {
      double fs[4] = {frow0[i], frow0[i + 1], frow1[i], frow1[i + 1]};
      double gs[4] = {grow0[i], grow0[i + 1], grow1[i], grow1[i + 1]};
      bool fchange = !((fs[0] > 0 && fs[1] > 0 && fs[2] > 0 && fs[3] > 0) ||
                       (fs[0] < 0 && fs[1] < 0 && fs[2] < 0 && fs[3] < 0));
      bool gchange = !((gs[0] > 0 && gs[1] > 0 && gs[2] > 0 && gs[3] > 0) ||
                       (gs[0] < 0 && gs[1] < 0 && gs[2] < 0 && gs[3] < 0));
      if (!fchange || !gchange) continue;
      double xc = x0 + (i + 0.5) * hx, yc = ylo + 0.5 * hy;
      double rx = xc, ry = yc;
      bool ok = newton2(f, g, fx, fy, gx, gy, rx, ry);
      // accept roots that stay within the (slightly enlarged) cell and
      // inside the window — boundary cells otherwise capture roots up to
      // half a cell outside it, a perimeter-proportional overcount
      if (ok && rx >= xc - hx && rx <= xc + hx && ry >= yc - hy &&
          ry <= yc + hy && rx >= x0 && rx <= x1 && ry >= y0 && ry <= y1) {
        bool dup = false;
        for (const Point2& p : res.locations)
          if (std::fabs(p.x - rx) < step / 10 && std::fabs(p.y - ry) < step / 10)
            dup = true;
        if (!dup) {
          res.locations.push_back({rx, ry});
          ++res.count;
        }
      } else if (!ok) {
        int deg = std::abs(sign_degree(f, g, x0 + i * hx, ylo, hx));
        res.count += deg;
        res.fallback_cells += 1;
      }
    }
    std::swap(frow0, frow1);
    std::swap(grow0, grow1);
  }
  return res;
}

LevelCurveResult extract_level_curves(const Field2& w, const Field2& wx,
                                      const Field2& wy, double level,
                                      double x0, double x1, double y0,
                                      double y1, double step) {
  LevelCurveResult res;
  int nx = std::max(1, int(std::ceil((x1 - x0) / step)));
  int ny = std::max(1, int(std::ceil((y1 - y0) / step)));
  double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
  std::vector<double> row0(nx + 1), row1(nx + 1);
  for (int i = 0; i <= nx; ++i) row0[i] = w(x0 + i * hx, y0) - level;
  for (int r = 0; r < ny; ++r) {
    double ylo = y0 + r * hy, yhi = ylo + hy;
    for (int i = 0; i <= nx; ++i) row1[i] = w(x0 + i * hx, yhi) - level;
    for (int i = 0; i < nx; ++i) {
      double v00 = row0[i], v10 = row0[i + 1], v01 = row1[i], v11 = row1[i + 1];
      if (v00 == 0 && v10 == 0 && v01 == 0 && v11 == 0) {
        ++res.degenerate_cells;
        continue;
      }
      double xlo = x0 + i * hx;
      // collect edge crossings by linear interpolation
      Point2 pts[4];
      int np = 0;
      auto edge = [&](double a, double b, double ax, double ay, double bx,
                      double by) {
        if ((a < 0) != (b < 0)) {
          double t = a / (a - b);
          pts[np++] = {ax + t * (bx - ax), ay + t * (by - ay)};
        }
      };
      edge(v00, v10, xlo, ylo, xlo + hx, ylo);
      edge(v10, v11, xlo + hx, ylo, xlo + hx, yhi);
      edge(v11, v01, xlo + hx, yhi, xlo, yhi);
      edge(v01, v00, xlo, yhi, xlo, ylo);
      auto emit = [&](const Point2& a, const Point2& b) {
        double len = std::hypot(b.x - a.x, b.y - a.y);
        if (len <= 0) return;
        double mx = 0.5 * (a.x + b.x), my = 0.5 * (a.y + b.y);
        double gx = wx(mx, my), gy = wy(mx, my);
        res.segments.push_back({len, std::atan2(gy, gx), std::hypot(gx, gy)});
        res.total_length += len;
      };
      if (np == 2) {
        emit(pts[0], pts[1]);
      } else if (np == 4) {
        // ambiguous saddle: resolve by the center sign
        double c = w(xlo + 0.5 * hx, ylo + 0.5 * hy) - level;
        // pts order: bottom, right, top, left
        if ((c < 0) == (v00 < 0)) {
          emit(pts[0], pts[1]);
          emit(pts[2], pts[3]);
        } else {
          emit(pts[0], pts[3]);
          emit(pts[1], pts[2]);
        }
      }
    }
    std::swap(row0, row1);
  }
  return res;
}

}  // namespace rice
