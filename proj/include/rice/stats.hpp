#pragma once
// Summary statistics and the hypothesis tests used by the verification
// harness: running mean/variance, Kolmogorov-Smirnov distance to N(0,1),
// chi-square goodness-of-fit p-value.

#include <vector>

namespace rice {

struct RunningStats {
  void add(double x);
  double mean() const;
  double variance() const;  // unbiased (ddof = 1)
  double stderr_mean() const;
  long count() const { return n_; }

 private:
  long n_ = 0;
  double mean_ = 0.0, m2_ = 0.0;  // Welford
};

// sup_x |F_n(x) − Φ(x)|
double ks_distance_normal(std::vector<double> sample);

// Upper regularized incomplete gamma Q(a, x); used for chi-square tails.
double gamma_q(double a, double x);

// P(X > stat) for X ~ chi-square with dof degrees of freedom.
double chi_square_pvalue(double stat, int dof);

}  // namespace rice
