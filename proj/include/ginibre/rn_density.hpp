#pragma once

#include <cstdint>
#include <vector>

#include "ginibre/core.hpp"
#include "ginibre/sampler.hpp"
#include "ginibre/statistics.hpp"

namespace ginibre {

// Shell radii b_0 < b_1 < ...; default b_r = 2^r.
class ShellRadii {
 public:
  ShellRadii() = default;
  // Explicit strictly increasing positive radii b_0, b_1, ...
  explicit ShellRadii(std::vector<double> radii);
  double operator()(int r) const;
  int count_limit() const;  // largest usable index, or -1 if unbounded

 private:
  std::vector<double> radii_;
};

struct ShellIncrement {
  int r = 0;
  double delta_log = 0.0;
};

// Shell 0 is |s| < b_0, shell r >= 1 is b_{r-1} <= |s| < b_r. The truncated
// log product at r is the running sum of shell increments 0..r.
struct TailDiagnostics {
  std::vector<ShellIncrement> log_increments;
  bool converged = false;
  int r_stop = 0;
};

// Per-shell increments of sum_i [sum_j 2 log|x_j - s_i| - 2 log|y_j - s_i|], r = 0..r_max.
std::vector<double> shell_log_increments(const Configuration& config, const PalmAnchor& x, const PalmAnchor& y,
                                         int r_max, const ShellRadii& radii = {});

// Log product over |s| < b_r.
double truncated_log_product(const Configuration& config, const PalmAnchor& x, const PalmAnchor& y, int r,
                             const ShellRadii& radii = {});

struct RnDensityResult {
  double density = 0.0;
  double z_ratio = 1.0;
  TailDiagnostics diag;
};

// density = z_ratio(x,y)^{-1} exp(truncated log product at r_stop), r_stop the
// first r >= 1 with |delta(r-1)|, |delta(r)| < tol; r_max if never reached.
RnDensityResult rn_density(const Configuration& config, const PalmAnchor& x, const PalmAnchor& y, int r_max,
                           double tol = 1e-3, const ShellRadii& radii = {});

struct TailLogProduct {
  double value = 0.0;
  std::size_t skipped_origin = 0;
};

// sum over b_r < |s| <= b_R of 2 log|1 - x/s|; points at the origin are skipped and counted.
TailLogProduct tail_log_product(const Configuration& config, Complex x, int r, int R, const ShellRadii& radii = {});

// Full log product over every point of the configuration.
double full_log_product(const Configuration& config, const PalmAnchor& x, const PalmAnchor& y);

struct ExpectationCheck {
  EstimatorResult mc;
  double exact = 0.0;
  std::size_t collisions_resampled = 0;
  bool within(double k_se) const;
};

// Monte Carlo mean of prod_i |x - s_i|^2 / |y - s_i|^2 over the reduced Palm
// measure of G^{ell+n} at y (n points per sample) against partition_ratio_exact(n, x, y).
ExpectationCheck expectation_consistency(int n, const PalmAnchor& x, const PalmAnchor& y, std::size_t n_samples,
                                         const RngStream& rng, std::size_t workers = 1);

}  // namespace ginibre
