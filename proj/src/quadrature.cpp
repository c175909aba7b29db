#include "ginibre/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "ginibre/errors.hpp"

namespace ginibre {

namespace {

constexpr std::size_t kPieceNodes = 24;
constexpr double kPieceWidth = 0.5;

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

QuadratureRule build_laguerre(std::size_t n) {
  // Golub-Welsch for initial nodes, Newton polish in long double.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    jac(i, i) = 2.0 * static_cast<double>(k) + 1.0;
    if (k + 1 < n) {
      jac(i, i + 1) = static_cast<double>(k) + 1.0;
      jac(i + 1, i) = static_cast<double>(k) + 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac, Eigen::EigenvaluesOnly);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double x = es.eigenvalues()(static_cast<Eigen::Index>(k));
    long double lnp1 = 0.0L;
    for (int it = 0; it < 8; ++it) {
      // L_n(x) and L_n'(x) by the three-term recurrence.
      long double p0 = 1.0L, p1 = 1.0L - x;
      for (std::size_t j = 1; j < n; ++j) {
        const long double p2 = ((2.0L * j + 1.0L - x) * p1 - j * p0) / (j + 1.0L);
        p0 = p1;
        p1 = p2;
      }
      const long double dp = n * (p1 - p0) / x;
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) <= 1e-19L * x) break;
    }
    long double p0 = 1.0L, p1 = 1.0L - x;
    for (std::size_t j = 1; j <= n; ++j) {
      const long double p2 = ((2.0L * j + 1.0L - x) * p1 - j * p0) / (j + 1.0L);
      p0 = p1;
      p1 = p2;
    }
    lnp1 = p1;  // L_{n+1}(x)
    const long double logw = std::log(x) - 2.0L * std::log(static_cast<long double>(n) + 1.0L) -
                             2.0L * std::log(std::fabs(lnp1));
    rule.nodes[k] = static_cast<double>(x);
    rule.log_weights[k] = static_cast<double>(logw);
    rule.weights[k] = std::exp(rule.log_weights[k]);
  }
  return rule;
}

QuadratureRule build_legendre(std::size_t n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = x;
      for (std::size_t j = 1; j < n; ++j) {
        const long double p2 = ((2.0L * j + 1.0L) * x * p1 - j * p0) / (j + 1.0L);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    rule.nodes[i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
    rule.log_weights[i] = std::log(rule.weights[i]);
  }
  return rule;
}

template <class F>
const QuadratureRule& cached(std::map<std::size_t, QuadratureRule>& cache, std::size_t n, F build) {
  if (n == 0) throw InvalidArgument("quadrature: node count must be positive");
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build(n)).first;
  return it->second;
}

// integral of f(r) r^{2s+1} exp(-r^2) * 2 dr / Gamma(s+1), piecewise Gauss-Legendre in r.
template <class T, class F>
T radial_integral(const RadialFunction& h, double s, F f) {
  if (!(s >= 0.0)) throw InvalidArgument("regularized_moment: s must be non-negative");
  const double t_hi = s + 1.0 + 16.0 * std::sqrt(s + 1.0) + 60.0;
  double r_hi = std::sqrt(t_hi);
  if (h.support_radius()) r_hi = std::min(r_hi, *h.support_radius());
  std::vector<double> cuts{0.0};
  for (double b : h.breakpoints()) {
    if (b > 0.0 && b < r_hi) cuts.push_back(b);
  }
  cuts.push_back(r_hi);
  std::sort(cuts.begin(), cuts.end());
  const QuadratureRule& gl = gauss_legendre(kPieceNodes);
  const double log_norm = std::log(2.0) - std::lgamma(s + 1.0);
  T total{};
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c], b = cuts[c + 1];
    if (!(b > a)) continue;
    const auto pieces = static_cast<std::size_t>(std::ceil((b - a) / kPieceWidth));
    const double width = (b - a) / static_cast<double>(pieces);
    for (std::size_t p = 0; p < pieces; ++p) {
      const double lo = a + width * static_cast<double>(p);
      const double half = 0.5 * width, mid = lo + half;
      T piece{};
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double r = mid + half * gl.nodes[q];
        if (r <= 0.0) continue;
        const double w = std::exp((2.0 * s + 1.0) * std::log(r) - r * r + log_norm);
        piece += f(r) * (gl.weights[q] * half * w);
      }
      total += piece;
    }
  }
  return total;
}

}  // namespace

const QuadratureRule& gauss_laguerre(std::size_t n) {
  static std::map<std::size_t, QuadratureRule> cache;
  return cached(cache, n, build_laguerre);
}

const QuadratureRule& gauss_legendre(std::size_t n) {
  static std::map<std::size_t, QuadratureRule> cache;
  return cached(cache, n, build_legendre);
}

RadialFunction::RadialFunction(std::function<Complex(double)> f, double sup_norm, std::vector<double> breakpoints,
                               std::optional<double> support_radius)
    : f_(std::move(f)), sup_norm_(sup_norm), breakpoints_(std::move(breakpoints)), support_radius_(support_radius) {
  if (!f_) throw InvalidArgument("RadialFunction: empty function");
  if (!(sup_norm_ >= 0.0) || !std::isfinite(sup_norm_)) throw InvalidArgument("RadialFunction: invalid sup norm");
  std::sort(breakpoints_.begin(), breakpoints_.end());
}

RadialFunction RadialFunction::constant(Complex c) {
  return RadialFunction([c](double) { return c; }, std::abs(c));
}

RadialFunction RadialFunction::indicator(double a, double b) {
  if (!(a >= 0.0 && b > a)) throw InvalidArgument("RadialFunction::indicator: need 0 <= a < b");
  return RadialFunction([a, b](double r) { return (r > a && r <= b) ? Complex(1.0) : Complex(0.0); }, 1.0,
                        a > 0.0 ? std::vector<double>{a, b} : std::vector<double>{b}, b);
}

RadialFunction RadialFunction::windowed(double radius) const {
  auto f = f_;
  std::vector<double> bp = breakpoints_;
  bp.push_back(radius);
  const double support = support_radius_ ? std::min(*support_radius_, radius) : radius;
  return RadialFunction([f, radius](double r) { return r <= radius ? f(r) : Complex(0.0); }, sup_norm_, bp, support);
}

Complex regularized_moment(const RadialFunction& h, double s) {
  return radial_integral<Complex>(h, s, [&h](double r) { return h(r); });
}

double regularized_moment_abs2(const RadialFunction& h, double s) {
  return radial_integral<double>(h, s, [&h](double r) { return std::norm(h(r)); });
}

}  // namespace ginibre
