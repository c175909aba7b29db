#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "doctest.h"
#include "ginibre/errors.hpp"
#include "ginibre/kernel.hpp"
#include "ginibre/sampler.hpp"
#include "ginibre/statistics.hpp"
#include "support.hpp"

using namespace ginibre;

namespace {

// Var of the number of points in the disk of radius r for modes k in [lo, hi):
// the counts of distinct modes are uncorrelated Bernoulli(P_k).
double disk_count_variance(int lo, int hi, double r) {
  double s = 0.0;
  for (int k = lo; k < hi; ++k) {
    const double p = boost::math::gamma_p(k + 1.0, r * r);
    s += p * (1.0 - p);
  }
  return s;
}

// Independent evaluation of the I_n(p) sum with incomplete gamma moments of
// h = 1_(a,b].
double i_n_p_indicator_oracle(int n, int p, double a, double b) {
  const int ap = std::abs(p);
  double s = 0.0;
  for (int l = std::max(0, n - ap); l < n; ++l) {
    const double e = l + 0.5 * ap + 1.0;
    const double j = std::tgamma(e) * (boost::math::gamma_p(e, b * b) - boost::math::gamma_p(e, a * a));
    s += j * j / (std::tgamma(l + 1.0) * std::tgamma(l + ap + 1.0));
  }
  return s;
}

}  // namespace

TEST_CASE("estimator") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto r = estimate(v, 9);
  CHECK(r.mean == doctest::Approx(2.5));
  CHECK(r.variance == doctest::Approx(5.0 / 3.0));
  CHECK(r.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));
  CHECK(r.n_samples == 4);
  CHECK(r.seed == 9);
  CHECK_THROWS_AS(estimate(std::vector<double>{1.0}), InvalidArgument);
}

TEST_CASE("f_T closed forms") {
  CHECK(f_T(RadialConfiguration{}, 10.0) == doctest::Approx(-5.0));
  CHECK(f_T(RadialConfiguration(std::vector<double>{0.0}), 10.0) == doctest::Approx(1.0 - 5.0));
  CHECK(f_T(RadialConfiguration(std::vector<double>{2.5, 20.0}), 10.0) == doctest::Approx(0.75 - 5.0));
  CHECK(F_T(Configuration{}, 10.0) == doctest::Approx(-5.0));
  CHECK(F_T(Configuration(std::vector<Complex>{{1.0, 1.0}}), 4.0) == doctest::Approx(0.5 - 2.0));
  CHECK_THROWS_AS(f_T(RadialConfiguration{}, 0.0), InvalidArgument);
}

TEST_CASE("f_T has mean zero under eta_0 and detects ell") {
  for (int ell : {0, 1, 3}) {
    const double T = 1024.0;
    const std::function<RadialConfiguration(RngStream&, std::size_t)> fn = [&](RngStream& s, std::size_t) {
      return sample_radial_palm(ell, T, s);
    };
    const auto samples = monte_carlo<RadialConfiguration>(300, RngStream(21, static_cast<std::uint64_t>(ell)), 1, fn);
    const auto d = ell_detector(samples, T, 21);
    // Bias of the mean is sum_{i <= ell} E max(1 - Y_i/T, 0) ~ ell.
    double expected = 0.0;
    for (int i = 1; i <= ell; ++i) expected -= 1.0 - i / T;
    CHECK(std::abs(d.estimate.mean - expected) <= 4.0 * d.estimate.std_error);
    CHECK(d.ell_hat == ell);
  }
  std::vector<RadialConfiguration> empty(2);
  CHECK(ell_detector(empty, 4.0).ell_hat == 2);
  // Positive means clamp to zero.
  std::vector<RadialConfiguration> crowded(2, RadialConfiguration(std::vector<double>{0.0, 0.0, 0.0, 0.0}));
  const auto c = ell_detector(crowded, 2.0);
  CHECK(c.estimate.mean == doctest::Approx(3.0));
  CHECK(c.ell_hat == 0);
}

TEST_CASE("I_n(p) sum form") {
  const auto one = RadialFunction::constant(1.0);
  for (int n : {1, 2, 5, 20}) {
    CHECK(i_n_p(n, 0, one).sum_form == 0.0);
    const double closed = std::exp(2.0 * std::lgamma(n + 0.5) - std::lgamma(n) - std::lgamma(n + 1.0));
    CHECK(i_n_p(n, 1, one).sum_form == doctest::Approx(closed).epsilon(1e-10));
  }
  CHECK(i_n_p(1, 1, one).sum_form == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
  for (int n = 1; n <= 20; ++n) {
    for (int p : {-4, -2, 1, 3, 4}) {
      const double o = i_n_p_indicator_oracle(n, p, 1.0, 2.0);
      const auto r = i_n_p(n, p, RadialFunction::indicator(1.0, 2.0));
      CHECK(r.sum_form == doctest::Approx(o).epsilon(1e-9));
      CHECK(r.sum_form <= r.bound);
      CHECK(i_n_p(n, p, one).sum_form <= std::abs(p) * 1.0);
    }
  }
  // For h = 1 the sum grows with n towards |p|.
  for (int p : {1, 2, 4}) {
    double prev = 0.0;
    for (int n = 1; n <= 40; ++n) {
      const double v = i_n_p(n, p, one).sum_form;
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(prev <= p);
  }
}

TEST_CASE("I_n(p) direct form agrees with the sum form") {
  for (const auto& h : {RadialFunction::constant(1.0), RadialFunction::indicator(1.0, 2.0)}) {
    for (int n : {1, 4, 11, 20}) {
      for (int p : {-3, 1, 2, 4}) {
        const double s = i_n_p(n, p, h).sum_form;
        CHECK(i_n_p_direct(n, p, h) == doctest::Approx(s).epsilon(1e-6));
      }
      CHECK(i_n_p_direct(n, 0, h) == 0.0);
    }
  }
}

TEST_CASE("disk count variance: mode reduction, grid, closed form") {
  for (double r : {1.0, 2.0, 3.0}) {
    const auto g = TestFunction::radial_mode(RadialFunction::indicator(0.0, r), 0);
    const auto mode = variance_linear_statistic(KernelSpec::truncated(16), g);
    CHECK(mode.var0 == doctest::Approx(disk_count_variance(0, 16, r)).epsilon(1e-10));
    CHECK(mode.var_repro == doctest::Approx(mode.var0).epsilon(1e-10));
    const auto inf = variance_linear_statistic(KernelSpec::infinite(), g);
    CHECK(inf.var0 == doctest::Approx(disk_count_variance(0, 400, r)).epsilon(1e-10));
    const auto tail = variance_linear_statistic(KernelSpec::origin_palm(3), g);
    CHECK(tail.var0 == doctest::Approx(disk_count_variance(3, 400, r)).epsilon(1e-10));
  }
}

TEST_CASE("grid variance of smooth statistics agrees with the mode reduction") {
  const RadialFunction h([](double r) { return Complex(std::exp(-r * r / 3.0)); }, 1.0);
  QuadratureSpec grid;
  grid.force_grid = true;
  // Even modes are polynomial in t = |z|^2 against exp(-t), where the grid is exact up to exp(-t/3).
  for (int p : {0, 2}) {
    const auto g = TestFunction::radial_mode(h, p);
    for (const auto& spec : {KernelSpec::truncated(8), KernelSpec::palm(KernelSpec::truncated(10), PalmAnchor::origin(2))}) {
      const auto a = variance_linear_statistic(spec, g);
      const auto b = variance_linear_statistic(spec, g, grid);
      CHECK(b.var0 == doctest::Approx(a.var0).epsilon(1e-6));
      CHECK(b.var_repro == doctest::Approx(a.var0).epsilon(1e-6));
    }
  }
  // Odd modes carry sqrt(t) factors; the grid converges to the mode value as nodes grow.
  {
    const auto g = TestFunction::radial_mode(h, 1);
    const double exact = variance_linear_statistic(KernelSpec::truncated(8), g).var0;
    double prev = 1e300;
    for (std::size_t nodes : {16u, 32u, 64u}) {
      QuadratureSpec q = grid;
      q.radial_nodes = nodes;
      const double err = std::abs(variance_linear_statistic(KernelSpec::truncated(8), g, q).var0 - exact);
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev <= 1e-3 * exact);
  }
  // Palm kernel at a generic anchor: only the grid applies; both forms agree.
  const TestFunction g([](Complex z) { return Complex(std::exp(-std::norm(z - Complex(0.5, 0.0)) / 2.0)); }, 1.0);
  const auto v = variance_linear_statistic(KernelSpec::palm(KernelSpec::truncated(8), PalmAnchor(std::vector<Complex>{{0.3, 0.1}})), g);
  CHECK(v.var0 == doctest::Approx(v.var_repro).epsilon(1e-6));
  CHECK(v.var0 > 0.0);
  // A constant statistic does not fluctuate under a projection kernel.
  const TestFunction c([](Complex) { return Complex(2.0); }, 2.0);
  const auto cv = variance_linear_statistic(KernelSpec::truncated(6), c);
  CHECK(cv.var_repro == 0.0);
  CHECK(std::abs(cv.var0) <= 1e-8);
}

TEST_CASE("tail statistics") {
  CHECK(tail_statistic_F(Configuration{}, 1, 5.0) == Complex(0.0));
  const Complex s(0.0, 2.0);
  const Complex f = tail_statistic_F(Configuration(std::vector<Complex>{s}), 3, 5.0);
  CHECK(std::abs(f) == doctest::Approx(1.0));
  CHECK(std::abs(f - std::pow(2.0 / s, 3)) < 1e-14);
  CHECK(tail_statistic_F(Configuration(std::vector<Complex>{{0.5, 0.0}}), 1, 5.0) == Complex(0.0));
  CHECK(tail_statistic_G(Configuration{}, 1, 1.0, 3.0) == Complex(0.0));
  CHECK(std::abs(tail_statistic_G(Configuration(std::vector<Complex>{2.0}), 1, 1.0, 3.0) - 0.5) < 1e-15);
  CHECK(tail_statistic_G(Configuration(std::vector<Complex>{4.0}), 1, 1.0, 3.0) == Complex(0.0));
}
