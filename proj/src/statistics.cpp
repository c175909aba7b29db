#include "ginibre/statistics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ginibre/errors.hpp"
#include "linalg.hpp"

namespace ginibre {

namespace {

// Gamma(l + |p|/2 + 1)^2 / (l! (l + |p|)!)
double log_pair_factor(int l, int ap) {
  const double half = l + 0.5 * ap;
  return 2.0 * std::lgamma(half + 1.0) - std::lgamma(l + 1.0) - std::lgamma(l + ap + 1.0);
}

// |J_l|^2 / (l! (l+|p|)!) with J_l = int h(sqrt t) t^{l+|p|/2} e^{-t} dt.
double pair_term(const RadialFunction& h, int l, int ap) {
  const Complex m = regularized_moment(h, l + 0.5 * ap);
  return std::norm(m) * std::exp(log_pair_factor(l, ap));
}

int mode_cutoff(const RadialFunction& h) {
  if (!h.support_radius()) {
    throw QuadratureFailure("variance_linear_statistic: test function is not supported in a bounded window");
  }
  const double r = *h.support_radius();
  return static_cast<int>(std::ceil(r * r + 16.0 * (r + 1.0) + 60.0));
}

struct ModeVariance {
  // var0 as the unrounded parts of its compensated sums.
  std::array<double, 4> var0_parts;
  double var_repro;
};

ModeVariance mode_variance_parts(int lo, std::optional<int> hi, const RadialFunction& h, int p) {
  const int ap = std::abs(p);
  int K = hi ? *hi : mode_cutoff(h);
  if (hi && h.support_radius()) K = std::min(K, mode_cutoff(h));
  const RadialFunction one = RadialFunction::constant(1.0);
  detail::CompensatedSum<double> hsum, hsum_repro, pairs;
  for (int k = lo; k < K; ++k) {
    const double hk = regularized_moment_abs2(h, k);
    hsum.add(hk);
    hsum_repro.add(hk * regularized_moment(one, k).real());
  }
  for (int l = lo; l + ap < K; ++l) pairs.add(pair_term(h, l, ap));
  return {{hsum.sum(), hsum.compensation(), -pairs.sum(), -pairs.compensation()},
          hsum_repro.value() - pairs.value()};
}

VariancePair mode_variance(int lo, std::optional<int> hi, const RadialFunction& h, int p) {
  const ModeVariance m = mode_variance_parts(lo, hi, h, p);
  detail::CompensatedSum<double> v;
  for (double x : m.var0_parts) v.add(x);
  return {v.value(), m.var_repro};
}

VariancePair grid_variance(const KernelSpec& spec, const TestFunction& g, const QuadratureSpec& quad) {
  const QuadratureRule& gl = gauss_laguerre(quad.radial_nodes);
  const std::size_t na = quad.angular_nodes;
  if (na == 0) throw InvalidArgument("variance_linear_statistic: angular_nodes must be positive");
  std::vector<Complex> nodes;
  std::vector<double> weights;
  std::vector<Complex> gv;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double r = std::sqrt(gl.nodes[i]);
    for (std::size_t j = 0; j < na; ++j) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(na);
      const Complex z = std::polar(r, th);
      nodes.push_back(z);
      weights.push_back(gl.weights[i] / static_cast<double>(na));
      gv.push_back(g(z));
    }
  }
  const PreparedKernel k(spec, nodes);
  detail::CompensatedSum<double> diag, cross, repro;
  const std::size_t N = nodes.size();
  for (std::size_t a = 0; a < N; ++a) {
    if (weights[a] == 0.0) continue;
    const double kaa = k(a, a).real();
    diag.add(weights[a] * std::norm(gv[a]) * kaa);
    cross.add(weights[a] * weights[a] * std::norm(gv[a]) * kaa * kaa);
    double row_cross = 0.0, row_repro = 0.0;
    for (std::size_t b = a + 1; b < N; ++b) {
      if (weights[b] == 0.0) continue;
      const double k2 = std::norm(k(a, b)) * weights[b];
      row_cross += 2.0 * (gv[a] * std::conj(gv[b])).real() * k2;
      row_repro += std::norm(gv[a] - gv[b]) * k2;
    }
    cross.add(weights[a] * row_cross);
    repro.add(weights[a] * row_repro);
  }
  return {diag.value() - cross.value(), repro.value()};
}

}  // namespace

EstimatorResult estimate(std::span<const double> values, std::uint64_t seed) {
  if (values.size() < 2) throw InvalidArgument("estimate: at least two samples are required");
  detail::CompensatedSum<double> s;
  for (double v : values) s.add(v);
  const double n = static_cast<double>(values.size());
  const double mean = s.value() / n;
  detail::CompensatedSum<double> ss;
  for (double v : values) ss.add((v - mean) * (v - mean));
  EstimatorResult r;
  r.mean = mean;
  r.variance = ss.value() / (n - 1.0);
  r.std_error = std::sqrt(r.variance / n);
  r.n_samples = values.size();
  r.seed = seed;
  return r;
}

double f_T(const RadialConfiguration& radial, double T) {
  if (!(T > 0.0)) throw InvalidArgument("f_T: T must be positive");
  detail::CompensatedSum<double> s;
  for (double y : radial.radii_sq()) {
    if (y < T) s.add(1.0 - y / T);
  }
  s.add(-0.5 * T);
  return s.value();
}

double F_T(const Configuration& config, double T) { return f_T(theta(config), T); }

EllDetection ell_detector(std::span<const RadialConfiguration> samples, double T, std::uint64_t seed) {
  if (samples.size() < 2) throw InvalidArgument("ell_detector: at least two samples are required");
  std::vector<double> v;
  v.reserve(samples.size());
  for (const auto& s : samples) v.push_back(f_T(s, T));
  EllDetection d;
  d.estimate = estimate(v, seed);
  d.ell_hat = std::max(0, static_cast<int>(std::lround(-d.estimate.mean)));
  return d;
}

TestFunction::TestFunction(std::function<Complex(Complex)> g, double sup_norm) : g_(std::move(g)), sup_norm_(sup_norm) {
  if (!g_) throw InvalidArgument("TestFunction: empty function");
}

TestFunction TestFunction::radial_mode(RadialFunction h, int p) {
  auto hh = h;
  TestFunction t(
      [hh, p](Complex z) {
        const double r = std::abs(z);
        if (p == 0 || r == 0.0) return p == 0 ? hh(r) : Complex(0.0);
        // (|z|/z)^p = exp(-i p arg z)
        return hh(r) * std::polar(1.0, -p * std::arg(z));
      },
      h.sup_norm());
  t.radial_ = std::move(h);
  t.p_ = p;
  return t;
}

VariancePair variance_linear_statistic(const KernelSpec& spec, const TestFunction& g, const QuadratureSpec& quad) {
  const auto range = spec.mode_range();
  if (range && g.radial() && !quad.force_grid) {
    return mode_variance(range->first, range->second, *g.radial(), g.mode());
  }
  return grid_variance(spec, g, quad);
}

InpResult i_n_p(int n, int p, const RadialFunction& h) {
  if (n < 1) throw InvalidArgument("i_n_p: n must be positive");
  const int ap = std::abs(p);
  InpResult r;
  r.bound = ap * h.sup_norm() * h.sup_norm();
  detail::CompensatedSum<double> s;
  for (int l = std::max(0, n - ap); l < n; ++l) s.add(pair_term(h, l, ap));
  r.sum_form = s.value();
  return r;
}

double i_n_p_direct(int n, int p, const RadialFunction& h) {
  if (n < 1) throw InvalidArgument("i_n_p_direct: n must be positive");
  if (p == 0) return 0.0;
  const int ap = std::abs(p);
  const double top = n + ap;
  const double window = std::sqrt(top + 20.0 * std::sqrt(top + 1.0) + 60.0);
  const RadialFunction hw = h.support_radius() ? h : h.windowed(window);
  const TestFunction g = TestFunction::radial_mode(hw, p);
  // The three variances are O(1) while their combination can be far below
  // double resolution, so they are combined before rounding.
  detail::CompensatedSum<double> total;
  const auto add = [&](const KernelSpec& spec, double sign) {
    const auto range = spec.mode_range();
    if (range && g.radial()) {
      for (double x : mode_variance_parts(range->first, range->second, *g.radial(), g.mode()).var0_parts) {
        total.add(sign * x);
      }
    } else {
      total.add(sign * variance_linear_statistic(spec, g).var0);
    }
  };
  add(KernelSpec::truncated(n), 1.0);
  add(KernelSpec::origin_palm(n), 1.0);
  add(KernelSpec::infinite(), -1.0);
  return total.value();
}

namespace {

Complex ipow(Complex b, int e) {
  Complex r = 1.0;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

}  // namespace

Complex tail_statistic_F(const Configuration& config, int alpha, double r) {
  if (alpha < 1) throw InvalidArgument("tail_statistic_F: alpha must be positive");
  detail::CompensatedSum<Complex> s;
  for (const auto& z : config.points()) {
    const double m = std::abs(z);
    if (m > 1.0 && m <= r) s.add(ipow(std::ceil(m) / z, alpha));
  }
  return s.value();
}

Complex tail_statistic_G(const Configuration& config, int alpha, double r, double R) {
  if (alpha < 1) throw InvalidArgument("tail_statistic_G: alpha must be positive");
  if (!(r < R)) throw InvalidArgument("tail_statistic_G: need r < R");
  detail::CompensatedSum<Complex> s;
  for (const auto& z : config.points()) {
    const double m = std::abs(z);
    if (m > r && m <= R) s.add(ipow(1.0 / z, alpha));
  }
  return s.value();
}

}  // namespace ginibre
