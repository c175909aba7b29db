#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "ginibre/errors.hpp"
#include "ginibre/kernel.hpp"
#include "ginibre/quadrature.hpp"
#include "ginibre/sampler.hpp"
#include "ginibre/statistics.hpp"
#include "support.hpp"

using namespace ginibre;

namespace {

struct MeanSe {
  double mean, se;
};

MeanSe mean_se(const std::vector<double>& v) {
  const auto r = estimate(v);
  return {r.mean, r.std_error};
}

// Expected number of points of G^n in the closed disk of radius r.
double ginibre_disk_mean(int n, double r) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += boost::math::gamma_p(k + 1.0, r * r);
  return s;
}

}  // namespace

TEST_CASE("streams are deterministic and substreams differ") {
  RngStream a(42, 0), b(42, 0), c(42, 1);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(a.substream(3).uniform() == b.substream(3).uniform());
  CHECK(a.substream(3).uniform() != a.substream(4).uniform());
  RngStream a2(42, 0);
  CHECK(a2.uniform() != c.uniform());
  CHECK(RngStream(1, 0).substream(2).substream(5).uniform() == RngStream(1, 0).substream(2).substream(5).uniform());
}

TEST_CASE("gamma draws have the right mean") {
  RngStream s(5, 0);
  for (double shape : {1.0, 2.0, 7.5, 50.0}) {
    std::vector<double> v(4000);
    for (auto& x : v) x = s.gamma(shape);
    const auto m = mean_se(v);
    CHECK(std::abs(m.mean - shape) <= 4.0 * m.se);
  }
}

TEST_CASE("radial truncation index") {
  CHECK_THROWS_AS(radial_truncation_index(0.0), InvalidArgument);
  for (double t : {1e-3, 1.0, 100.0, 4096.0}) {
    CHECK(radial_truncation_index(t) == static_cast<std::size_t>(std::ceil(t + 12.0 * std::sqrt(t + 1.0) + 50.0)));
  }
}

TEST_CASE("radial Palm samples: support and mean counts") {
  const double T = 60.0;
  for (int ell : {0, 2}) {
    std::vector<double> counts;
    for (int i = 0; i < 800; ++i) {
      RngStream s = RngStream(9, static_cast<std::uint64_t>(ell)).substream(static_cast<std::uint64_t>(i));
      const auto r = sample_radial_palm(ell, 100.0, s);
      double c = 0;
      for (double y : r.radii_sq()) {
        CHECK(y <= 100.0);
        if (y <= T) ++c;
      }
      counts.push_back(c);
    }
    double expected = 0.0;
    for (int k = ell + 1; k < 400; ++k) expected += boost::math::gamma_p(static_cast<double>(k), T);
    const auto m = mean_se(counts);
    CHECK(std::abs(m.mean - expected) <= 4.0 * m.se);
    if (ell == 0) CHECK(expected == doctest::Approx(T).epsilon(1e-9));
  }
}

TEST_CASE("radial coupling via shared draws") {
  RngStream s(12, 0);
  const double T = 40.0;
  const auto draws = kostlan_draws(radial_truncation_index(T), s);
  for (int ell : {0, 1, 3}) {
    for (int n : {ell, ell + 2, ell + 7}) {
      const auto a = eta_from_draws(draws, ell, T);
      const auto b = eta_from_draws(draws, n, T);
      double expected = 0.0;
      for (int i = ell + 1; i <= n; ++i) expected += std::max(1.0 - draws[static_cast<std::size_t>(i - 1)] / T, 0.0);
      const double diff = f_T(a, T) - f_T(b, T);
      CHECK(diff == doctest::Approx(expected).epsilon(1e-12));
      CHECK(std::abs(diff) <= static_cast<double>(n - ell));
    }
  }
  // Without conditioning both paths consume the same draws.
  RngStream x(77, 0), y(77, 0);
  CHECK(sample_radial_palm(0, T, x) == eta_from_draws(kostlan_draws(radial_truncation_index(T), y), 0, T));
}

TEST_CASE("radial DPP sampler reproduces the origin-Palm law") {
  const GaussianRadialFamily fam;
  const double tmax = 80.0;
  for (int ell : {0, 1, 3}) {
    const std::size_t imax = radial_truncation_index(tmax);
    std::vector<double> log_coeff(imax, -std::numeric_limits<double>::infinity());
    for (std::size_t j = static_cast<std::size_t>(ell); j < imax; ++j) log_coeff[j] = -std::lgamma(j + 1.0);
    RngStream a(3, 1), b(3, 1);
    CHECK(sample_radial_dpp_log(log_coeff, fam, a, tmax) == sample_radial_palm(ell, tmax, b));
  }
  RngStream s(4, 0);
  std::vector<double> bad{0.5};
  CHECK_THROWS_AS(sample_radial_dpp(bad, fam, s), InvalidArgument);
  std::vector<double> v(3000);
  std::vector<double> coeff{0.0, 0.0, 0.5};  // |a_2|^2 2! = 1
  for (auto& x : v) {
    const auto r = sample_radial_dpp(coeff, fam, s);
    REQUIRE(r.size() == 1);
    x = r[0];
  }
  const auto m = mean_se(v);
  CHECK(std::abs(m.mean - 3.0) <= 4.0 * m.se);
}

TEST_CASE("projection bases reproduce the kernels") {
  const auto g = ProjectionBasis::ginibre(9);
  CHECK(g.rank() == 9);
  const PalmAnchor x({{0.4, -0.2}, {-0.7, 0.5}});
  const auto p = ProjectionBasis::palm(9, x);
  CHECK(p.rank() == 7);
  const auto o = ProjectionBasis::palm(9, PalmAnchor::origin(2));
  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex z = testing_support::in_disk(gen, 2.5), w = testing_support::in_disk(gen, 2.5);
    const double scale = std::exp(std::abs(z) * std::abs(w));
    CHECK(std::abs(g.kernel(z, w) - eval(KernelSpec::truncated(9), z, w)) <= 1e-12 * scale);
    CHECK(std::abs(p.kernel(z, w) - palm_kernel_schur(9, x, z, w)) <= 1e-11 * scale);
    CHECK(std::abs(o.kernel(z, w) - palm_kernel_schur(9, PalmAnchor::origin(2), z, w)) <= 1e-12 * scale);
  }
  CHECK_THROWS_AS(ProjectionBasis::palm(2, x), DimensionMismatch);
}

TEST_CASE("finite Ginibre samples: size, determinism, disk counts") {
  const int n = 24;
  RngStream a(100, 0), b(100, 0);
  const auto c1 = sample_ginibre_n(n, a);
  CHECK(c1.size() == static_cast<std::size_t>(n));
  CHECK(c1 == sample_ginibre_n(n, b));
  const std::function<Configuration(RngStream&, std::size_t)> fn = [&](RngStream& s, std::size_t) {
    return sample_ginibre_n(n, s);
  };
  const auto samples = monte_carlo<Configuration>(600, RngStream(101, 0), 1, fn);
  CHECK(samples == monte_carlo<Configuration>(600, RngStream(101, 0), 3, fn));
  for (double r : {1.0, 2.5, 4.0}) {
    std::vector<double> counts;
    for (const auto& c : samples) counts.push_back(static_cast<double>(count_in_disk(c, r)));
    const auto m = mean_se(counts);
    CHECK(std::abs(m.mean - ginibre_disk_mean(n, r)) <= 4.0 * m.se);
  }
}

TEST_CASE("finite Palm samples: size and one-point density") {
  const int n = 12;
  const PalmAnchor x({{0.5, 0.0}, {-0.3, 0.6}});
  RngStream s0(7, 0);
  CHECK(sample_palm_ginibre_n(n, x, s0).size() == static_cast<std::size_t>(n - 2));
  RngStream s1(7, 1);
  CHECK(sample_palm_ginibre_n(8, PalmAnchor::origin(2), s1).size() == 6u);
  // Oracle: integral of K^n_x(z,z) g(z) over the disk |z| <= R by a polar product rule.
  const double R = 1.5;
  const auto& gl = gauss_legendre(40);
  double expected = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double r = 0.5 * R * (gl.nodes[i] + 1.0);
    for (int j = 0; j < 64; ++j) {
      const Complex z = std::polar(r, 2.0 * M_PI * j / 64.0);
      expected += 0.5 * R * gl.weights[i] * (2.0 * M_PI / 64.0) * r * palm_kernel_det(KernelSpec::truncated(n), x, z, z).real() *
                  gaussian_weight(z);
    }
  }
  const std::function<double(RngStream&, std::size_t)> fn = [&](RngStream& s, std::size_t) {
    return static_cast<double>(count_in_disk(sample_palm_ginibre_n(n, x, s), R));
  };
  const auto counts = monte_carlo<double>(1500, RngStream(8, 0), 1, fn);
  const auto m = mean_se(counts);
  CHECK(std::abs(m.mean - expected) <= 4.0 * m.se);
}

TEST_CASE("rejection budget") {
  ProjectionSamplerOptions opt;
  opt.max_trials_per_point = 1;
  RngStream s(1, 0);
  CHECK_THROWS_AS(sample_ginibre_n(50, s, opt), RejectionBudgetExceeded);
}
