#pragma once
// Verification harness comparing analytic evaluators to the simulation
// oracle; emits machine-readable reports.

#include <cstdint>
#include <string>
#include <vector>

#include "rice/simulate.hpp"
#include "rice/spectral_model.hpp"

namespace rice {

struct VerificationReport {
  std::string quantity;
  double analytic = 0;
  double mc_mean = 0;
  double mc_stderr = 0;
  long replicates = 0;
  double z = 0;
  double threshold = 0;
  bool pass = false;
  uint64_t seed = 0;
  double wall_seconds = 0;
  double truncation_bound = 0;

  std::string to_json() const;
  std::string to_csv_row() const;
  static std::string csv_header();
};

// crossings of level u for `model` on [a,b]
VerificationReport verify_crossings(const CovarianceModel1D& model, double u,
                                    double a, double b, int replicates,
                                    uint64_t seed, double z_threshold = 3.0,
                                    int M = 2000);

// approximate specular points: zeros of W'(x) − kx over the (truncated) line
VerificationReport verify_sp2_count(const CovarianceModel1D& model, double k,
                                    int replicates, uint64_t seed,
                                    double z_threshold = 3.0, int M = 2000);

// exact specular points: zeros of W'(x) − m1(x, W(x))
VerificationReport verify_sp1_count(const CovarianceModel1D& model, double h1,
                                    double h2, int replicates, uint64_t seed,
                                    double z_threshold = 3.0, int M = 2000);

// dislocations of ring-spectrum fields on a square window
VerificationReport verify_dislocation_count(const IsotropicSpectrum2D& spec,
                                            double window, int replicates,
                                            uint64_t seed,
                                            double z_threshold = 3.0,
                                            int M = 1000);

// |cosΘ|-weighted level-curve length on a square window vs length_intensity
VerificationReport verify_curve_length(const IsotropicSpectrum2D& spec,
                                       double u, double window,
                                       int replicates, uint64_t seed,
                                       double z_threshold = 3.0, int M = 1000);

struct VarianceScalingRow {
  double k;
  double mc_mean_times_k;
  double mc_var_times_k;
  double theta;
  double cv;        // coefficient of variation of the counts
  double cv_pred;   // √(θk)/√(2λ4/π)-style prediction
};

std::vector<VarianceScalingRow> verify_variance_scaling(
    const CovarianceModel1D& model, const std::vector<double>& ks,
    int replicates, uint64_t seed, int M = 4000);

struct CltReport {
  double ks_distance = 0;
  double mean_z = 0;
  long replicates = 0;
  bool pass = false;
  std::vector<double> z_values;
};

// theta: variance coefficient used to studentize the counts.
CltReport verify_clt(const CovarianceModel1D& model, double k, double theta,
                     int replicates, uint64_t seed,
                     double ks_threshold = 0.08, int M = 4000);

struct AngleHistogramReport {
  std::vector<double> bin_edges;
  std::vector<double> observed;   // length-weighted, normalized
  std::vector<double> expected;   // ∫_bin g
  double chi_square = 0;
  double p_value = 0;
  double n_eff = 0;               // (Σw)²/Σw²
  bool pass = false;
};

// Length-weighted normal-angle histogram of u=0 curves of an axis-stretched
// ring-spectrum field vs the Palm angle density.
AngleHistogramReport verify_angle_distribution(double k0, double ax, double by,
                                               int bins, double window,
                                               int replicates, uint64_t seed,
                                               double p_threshold = 0.01,
                                               int M = 600);

}  // namespace rice
