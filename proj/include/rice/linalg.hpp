#pragma once
// Small dense symmetric linear algebra (2x2 and 3x3) used by the
// characteristic-function evaluators: Jacobi eigendecomposition, matrix
// square root, products.

#include <array>

namespace rice {

using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

struct Eig3 {
  Vec3 values;  // descending
  Mat3 vectors; // columns are eigenvectors
};
struct Eig2 {
  std::array<double, 2> values;  // descending
  Mat2 vectors;
};

// Cyclic Jacobi; off-diagonal reduced below 1e-14 * ||M||.
Eig3 eig_sym3(const Mat3& m);
Eig2 eig_sym2(const Mat2& m);

// Symmetric PSD square root via eigendecomposition; eigenvalues below
// -1e-12*trace rejected (throws), small negatives clamped to zero.
Mat3 sqrt_psd3(const Mat3& m);
Mat2 sqrt_psd2(const Mat2& m);

Mat3 mul3(const Mat3& a, const Mat3& b);
Mat2 mul2(const Mat2& a, const Mat2& b);
Mat3 transpose3(const Mat3& m);

}  // namespace rice
