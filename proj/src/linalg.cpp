#include "rice/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rice {

namespace {

template <int N>
using MatN = std::array<std::array<double, N>, N>;

template <int N>
void jacobi(MatN<N> a, std::array<double, N>* d, MatN<N>* v) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) (*v)[i][j] = (i == j) ? 1.0 : 0.0;
  double norm = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) norm += a[i][j] * a[i][j];
  norm = std::sqrt(norm);
  const double tol = 1e-14 * std::max(norm, 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) off += a[p][q] * a[p][q];
    if (std::sqrt(off) <= tol) break;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) {
        if (std::fabs(a[p][q]) <= tol * 1e-2) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int i = 0; i < N; ++i) {
          double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (int i = 0; i < N; ++i) {
          double api = a[p][i], aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = s * api + c * aqi;
        }
        for (int i = 0; i < N; ++i) {
          double vip = (*v)[i][p], viq = (*v)[i][q];
          (*v)[i][p] = c * vip - s * viq;
          (*v)[i][q] = s * vip + c * viq;
        }
      }
  }
  for (int i = 0; i < N; ++i) (*d)[i] = a[i][i];
  // sort descending, permuting eigenvector columns to match
  for (int i = 0; i < N; ++i) {
    int k = i;
    for (int j = i + 1; j < N; ++j)
      if ((*d)[j] > (*d)[k]) k = j;
    if (k != i) {
      std::swap((*d)[i], (*d)[k]);
      for (int r = 0; r < N; ++r) std::swap((*v)[r][i], (*v)[r][k]);
    }
  }
}

template <int N>
MatN<N> sqrt_psd(const MatN<N>& m) {
  std::array<double, N> d;
  MatN<N> v;
  jacobi<N>(m, &d, &v);
  double tr = 0.0;
  for (int i = 0; i < N; ++i) tr += std::fabs(m[i][i]);
  for (int i = 0; i < N; ++i) {
    if (d[i] < -1e-12 * std::max(tr, 1e-300))
      throw std::domain_error("sqrt_psd: matrix is not positive semidefinite");
    d[i] = std::sqrt(std::max(d[i], 0.0));
  }
  MatN<N> out{};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double s = 0.0;
      for (int k = 0; k < N; ++k) s += v[i][k] * d[k] * v[j][k];
      out[i][j] = s;
    }
  return out;
}

}  // namespace

Eig3 eig_sym3(const Mat3& m) {
  Eig3 e;
  jacobi<3>(m, &e.values, &e.vectors);
  return e;
}

Eig2 eig_sym2(const Mat2& m) {
  Eig2 e;
  jacobi<2>(m, &e.values, &e.vectors);
  return e;
}

Mat3 sqrt_psd3(const Mat3& m) { return sqrt_psd<3>(m); }
Mat2 sqrt_psd2(const Mat2& m) { return sqrt_psd<2>(m); }

Mat3 mul3(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat2 mul2(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat3 transpose3(const Mat3& m) {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

}  // namespace rice
