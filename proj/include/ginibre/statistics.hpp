#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "ginibre/core.hpp"
#include "ginibre/kernel.hpp"
#include "ginibre/quadrature.hpp"

namespace ginibre {

struct EstimatorResult {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Sample mean and unbiased variance with compensated summation. Needs >= 2 values.
EstimatorResult estimate(std::span<const double> values, std::uint64_t seed = 0);

// sum_i max(1 - y_i / T, 0) - T / 2
double f_T(const RadialConfiguration& radial, double T);
double F_T(const Configuration& config, double T);

struct EllDetection {
  int ell_hat = 0;
  EstimatorResult estimate;
};

// ell_hat = round(-mean f_T), clamped at 0.
EllDetection ell_detector(std::span<const RadialConfiguration> samples, double T, std::uint64_t seed = 0);

// Test function for linear statistics. Functions of the form
// h(|z|) (|z|/z)^p carry their radial mode, which enables the reduction of
// variances of rotation-invariant kernels to one-dimensional integrals.
class TestFunction {
 public:
  TestFunction(std::function<Complex(Complex)> g, double sup_norm);
  static TestFunction radial_mode(RadialFunction h, int p);

  Complex operator()(Complex z) const { return g_(z); }
  double sup_norm() const { return sup_norm_; }
  const std::optional<RadialFunction>& radial() const { return radial_; }
  int mode() const { return p_; }

 private:
  std::function<Complex(Complex)> g_;
  double sup_norm_;
  std::optional<RadialFunction> radial_;
  int p_ = 0;
};

struct QuadratureSpec {
  std::size_t radial_nodes = 64;   // Gauss-Laguerre nodes in t = |z|^2
  std::size_t angular_nodes = 64;  // trapezoid nodes in angle
  bool force_grid = false;         // skip the mode reduction
};

struct VariancePair {
  double var0 = 0.0;
  double var_repro = 0.0;
};

// var0 = int |g|^2 K(z,z) dm - iint g(z) conj(g(w)) |K(z,w)|^2 dm dm,
// var_repro = 1/2 iint |g(z) - g(w)|^2 |K(z,w)|^2 dm dm.
VariancePair variance_linear_statistic(const KernelSpec& spec, const TestFunction& g, const QuadratureSpec& quad = {});

struct InpResult {
  double sum_form = 0.0;
  double bound = 0.0;
};

InpResult i_n_p(int n, int p, const RadialFunction& h);

// Var^{G^n} + Var^{G_{o_n}} - Var^{G} of the statistic h(|z|)(|z|/z)^p. A
// non-compactly supported h is restricted to a disk containing all modes
// that contribute to I_n(p) up to round-off.
double i_n_p_direct(int n, int p, const RadialFunction& h);

// sum over 1 < |s| <= r of (ceil|s| / s)^alpha
Complex tail_statistic_F(const Configuration& config, int alpha, double r);
// sum over r < |s| <= R of s^{-alpha}
Complex tail_statistic_G(const Configuration& config, int alpha, double r, double R);

}  // namespace ginibre
