#include <algorithm>
#include <limits>
#include <random>

#include "doctest.h"
#include "ginibre/core.hpp"
#include "ginibre/errors.hpp"
#include "support.hpp"

using namespace ginibre;

TEST_CASE("theta on small configurations") {
  CHECK(theta(Configuration{}).empty());
  const auto one = theta(Configuration(std::vector<Complex>{{1.0, 1.0}}));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(2.0));
  const auto three = theta(Configuration(std::vector<Complex>{3.0, {0.0, 4.0}, 0.0}));
  REQUIRE(three.size() == 3);
  CHECK(three[0] == 0.0);
  CHECK(three[1] == doctest::Approx(9.0));
  CHECK(three[2] == doctest::Approx(16.0));
}

TEST_CASE("count_in_disk examples") {
  const Configuration c(std::vector<Complex>{{1.0, 1.0}});
  CHECK(count_in_disk(c, 1.0) == 0);
  CHECK(count_in_disk(c, 1.5) == 1);
  CHECK(count_in_disk(Configuration{}, 10.0) == 0);
  CHECK(count_in_disk(Configuration(std::vector<Complex>{2.0}), 2.0) == 1);  // closed disk
  CHECK_THROWS_AS(count_in_disk(c, -1.0), InvalidArgument);
}

TEST_CASE("theta is permutation invariant and counts agree with it") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Complex> pts;
    const int n = 1 + trial % 17;
    for (int i = 0; i < n; ++i) pts.push_back(testing_support::in_disk(gen, 4.0));
    auto shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    const Configuration a(pts), b(shuffled);
    CHECK(theta(a) == theta(b));
    CHECK(theta(a).size() == a.size());
    for (double r : {0.5, 1.0, 2.0, 3.5, 5.0}) {
      const auto t = theta(a);
      const auto expected =
          static_cast<std::size_t>(std::count_if(t.radii_sq().begin(), t.radii_sq().end(), [&](double y) { return y <= r * r; }));
      CHECK(count_in_disk(a, r) == expected);
      CHECK(count_in_disk(b, r) == expected);
    }
  }
}

TEST_CASE("containers reject invalid input") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Configuration(std::vector<Complex>{{nan, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(RadialConfiguration(std::vector<double>{-1.0}), InvalidArgument);
  CHECK_THROWS_AS(RadialConfiguration(std::vector<double>{std::numeric_limits<double>::infinity()}), InvalidArgument);
  CHECK_THROWS_AS(PalmAnchor(std::vector<Complex>{{0.0, nan}}), InvalidArgument);
  const RadialConfiguration r({3.0, 1.0, 2.0});
  CHECK(std::is_sorted(r.radii_sq().begin(), r.radii_sq().end()));
}

TEST_CASE("partitions") {
  CHECK_THROWS_AS(Partition(std::vector<int>{1, 2}), InvalidArgument);
  CHECK_THROWS_AS(Partition(std::vector<int>{2, -1}), InvalidArgument);
  const Partition p({3, 1, 0, 0});
  CHECK(p.length() == 2);
  CHECK(p.weight() == 4);
  CHECK(p == Partition(std::vector<int>{3, 1}));
  CHECK(p.part(5) == 0);
  CHECK(p.conjugate() == Partition(std::vector<int>{2, 1, 1}));
  CHECK(p.conjugate().conjugate() == p);
  CHECK(Partition{}.conjugate() == Partition{});
}

TEST_CASE("origin anchor") {
  const auto o = PalmAnchor::origin(3);
  CHECK(o.ell() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(o[i] == Complex(0.0));
  CHECK(PalmAnchor::origin(0).ell() == 0);
}
