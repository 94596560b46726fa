#pragma once
// Bessel functions J0, J1 of the first kind. Power series for small
// arguments, Hankel asymptotic (modulus/phase) beyond; absolute error
// below 1e-10 over the tested range (see unit tests vs the integral
// representation).

namespace rice {

double bessel_j0(double x);
double bessel_j1(double x);

}  // namespace rice
