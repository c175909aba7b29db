#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ginibre/core.hpp"

namespace ginibre {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;
};

// Gauss-Laguerre rule for integrals of f(t) exp(-t) over (0, inf). Cached.
const QuadratureRule& gauss_laguerre(std::size_t n);

// Gauss-Legendre rule on [-1, 1]. Cached.
const QuadratureRule& gauss_legendre(std::size_t n);

// Bounded function of the radius r = |z|, with the radii where it may be
// discontinuous and, if it vanishes beyond some radius, that radius.
class RadialFunction {
 public:
  RadialFunction(std::function<Complex(double)> f, double sup_norm, std::vector<double> breakpoints = {},
                 std::optional<double> support_radius = std::nullopt);

  static RadialFunction constant(Complex c);
  // 1 on a < r <= b.
  static RadialFunction indicator(double a, double b);

  Complex operator()(double r) const { return f_(r); }
  double sup_norm() const { return sup_norm_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::optional<double>& support_radius() const { return support_radius_; }

  // Restriction to r <= radius.
  RadialFunction windowed(double radius) const;

 private:
  std::function<Complex(double)> f_;
  double sup_norm_;
  std::vector<double> breakpoints_;
  std::optional<double> support_radius_;
};

// (1/Gamma(s+1)) * integral over (0, inf) of h(sqrt t) t^s exp(-t) dt.
Complex regularized_moment(const RadialFunction& h, double s);

// Same with |h|^2 in place of h.
double regularized_moment_abs2(const RadialFunction& h, double s);

}  // namespace ginibre
