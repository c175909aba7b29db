#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "ginibre/errors.hpp"
#include "ginibre/schur.hpp"
#include "support.hpp"

using namespace ginibre;
using testing_support::in_disk;

namespace {

std::vector<Partition> brute_partitions(int weight_max, int parts_max) {
  // All weakly decreasing tuples with entries in [0, weight_max].
  std::set<std::vector<int>> seen;
  std::vector<Partition> out;
  std::vector<int> cur(static_cast<std::size_t>(parts_max), 0);
  std::function<void(int, int, int)> rec = [&](int pos, int max_part, int left) {
    if (pos == parts_max) {
      std::vector<int> nz;
      for (int v : cur) {
        if (v > 0) nz.push_back(v);
      }
      if (seen.insert(nz).second) out.emplace_back(nz);
      return;
    }
    for (int v = 0; v <= std::min(max_part, left); ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, v, left - v);
    }
  };
  rec(0, weight_max, weight_max);
  return out;
}

}  // namespace

TEST_CASE("vandermonde") {
  const std::vector<Complex> a{2.0, 1.0};
  CHECK(vandermonde(a) == Complex(1.0));
  const std::vector<Complex> rep{{0.3, 0.1}, {0.3, 0.1}, 2.0};
  CHECK(std::abs(vandermonde(rep)) == 0.0);
  const std::vector<Complex> single{{5.0, 1.0}};
  CHECK(vandermonde(single) == Complex(1.0));
  const std::vector<Complex> three{1.0, 2.0, 4.0};
  CHECK(vandermonde(three).real() == doctest::Approx((1.0 - 2.0) * (1.0 - 4.0) * (2.0 - 4.0)));
}

TEST_CASE("elementary symmetric polynomials against subset enumeration") {
  const std::vector<Complex> x{1.0, 2.0, 3.0};
  CHECK(elementary_symmetric(0, x) == Complex(1.0));
  CHECK(elementary_symmetric(2, x).real() == doctest::Approx(11.0));
  CHECK(elementary_symmetric(3, std::vector<Complex>{1.0, 2.0}) == Complex(0.0));
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Complex> y;
    for (int i = 0; i < 1 + trial % 7; ++i) y.push_back(in_disk(gen, 2.0));
    const auto all = elementary_symmetric_all(y);
    REQUIRE(all.size() == y.size() + 1);
    for (std::size_t k = 0; k <= y.size(); ++k) {
      const Complex b = testing_support::elementary_brute(k, y);
      CHECK(std::abs(all[k] - b) <= 1e-12 * (1.0 + std::abs(b)));
    }
  }
}

TEST_CASE("complete homogeneous: generating-function oracle") {
  // h_k(x) = sum over multisets; check through sum_{j} (-1)^j e_j h_{k-j} = 0 for k >= 1.
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> y;
    for (int i = 0; i < 1 + trial % 5; ++i) y.push_back(in_disk(gen, 1.5));
    const auto h = complete_homogeneous(8, y);
    const auto e = elementary_symmetric_all(y);
    CHECK(h[0] == Complex(1.0));
    for (int k = 1; k <= 8; ++k) {
      Complex s = 0.0;
      for (int j = 0; j <= std::min<int>(k, static_cast<int>(y.size())); ++j) {
        s += (j % 2 ? -1.0 : 1.0) * e[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(k - j)];
      }
      CHECK(std::abs(s) <= 1e-12 * (1.0 + std::abs(h[static_cast<std::size_t>(k)])));
    }
  }
}

TEST_CASE("schur examples") {
  const Complex x1(0.3, -0.7), x2(1.1, 0.2);
  const std::vector<Complex> x{x1, x2};
  CHECK(std::abs(schur_eval(Partition(std::vector<int>{1}), x) - (x1 + x2)) < 1e-14);
  CHECK(std::abs(schur_eval(Partition(std::vector<int>{2}), x) - (x1 * x1 + x1 * x2 + x2 * x2)) < 1e-14);
  const Complex a(0.4, 0.9);
  const std::vector<Complex> aa{a, a};
  CHECK(std::abs(schur_eval(Partition(std::vector<int>{1, 1}), aa) - a * a) < 1e-14);
  CHECK_THROWS_AS(schur_bialternant(Partition(std::vector<int>{1, 1}), aa), InvalidArgument);
  CHECK(schur_eval(Partition(std::vector<int>{1, 1, 1}), x) == Complex(0.0));
  const std::vector<Complex> zeros(3, 0.0);
  CHECK(schur_eval(Partition{}, zeros) == Complex(1.0));
  CHECK(schur_eval(Partition(std::vector<int>{2, 1}), zeros) == Complex(0.0));
}

TEST_CASE("schur matches the SSYT oracle for |lambda| <= 4, ell <= 4") {
  std::mt19937_64 gen(17);
  for (int ell = 1; ell <= 4; ++ell) {
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Complex> x;
      for (int i = 0; i < ell; ++i) x.push_back(in_disk(gen, 1.5));
      if (trial == 0 && ell > 1) x[1] = x[0];  // coincident pair
      for (const auto& lambda : partitions_up_to(4, ell)) {
        std::vector<int> parts(lambda.parts().begin(), lambda.parts().end());
        const Complex oracle = testing_support::schur_ssyt(parts, x);
        const Complex v = schur_eval(lambda, x);
        CHECK(std::abs(v - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
      }
    }
  }
}

TEST_CASE("schur is symmetric and branches agree") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t ell = 1 + static_cast<std::size_t>(trial % 4);
    auto x = testing_support::separated(gen, ell, 1.5, 0.2);
    auto perm = x;
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<Complex> ax;
    for (const auto& v : x) ax.push_back(std::abs(v));
    for (const auto& lambda : partitions_up_to(6, static_cast<int>(ell))) {
      const double scale = std::max(1e-300, std::abs(schur_jacobi_trudi(lambda, ax)));
      const Complex a = schur_eval(lambda, x), b = schur_eval(lambda, perm);
      CHECK(std::abs(a - b) <= 1e-12 * scale);
      CHECK(std::abs(schur_bialternant(lambda, x) - schur_jacobi_trudi(lambda, x)) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("partition enumeration") {
  CHECK(partitions_up_to(0, 3) == std::vector<Partition>{Partition{}});
  CHECK(partitions_up_to(2, 1) == std::vector<Partition>{Partition{}, Partition(std::vector<int>{1}), Partition(std::vector<int>{2})});
  CHECK(partitions_up_to(2, 2) ==
        std::vector<Partition>{Partition{}, Partition(std::vector<int>{1}), Partition(std::vector<int>{2}), Partition(std::vector<int>{1, 1})});
  for (int w = 0; w <= 7; ++w) {
    for (int m = 1; m <= 4; ++m) {
      auto got = partitions_up_to(w, m);
      auto want = brute_partitions(w, m);
      CHECK(got.size() == want.size());
      for (const auto& p : want) CHECK(std::find(got.begin(), got.end(), p) != got.end());
      for (const auto& p : got) {
        CHECK(p.weight() <= w);
        CHECK(p.length() <= static_cast<std::size_t>(m));
      }
    }
  }
  // Box enumeration: all partitions of the box, no duplicates.
  const auto box = partitions_in_box(3, 2);
  CHECK(box.size() == 10);  // binomial(5, 2)
  for (const auto& p : box) {
    CHECK(p.length() <= 3);
    CHECK(p.part(0) <= 2);
  }
  for (const auto& p : partitions_of(5, 3, 3)) {
    CHECK(p.weight() == 5);
    CHECK(p.part(0) <= 3);
  }
}

TEST_CASE("index sets map to partitions") {
  const std::vector<int> I{0, 1, 2};
  CHECK(partition_from_index_set(I) == Partition{});
  const std::vector<int> J{1, 3, 4};
  CHECK(partition_from_index_set(J) == Partition(std::vector<int>{2, 2, 1}));
}

TEST_CASE("schur sum bound") {
  const std::vector<Complex> zeros(3, 0.0);
  const auto z = schur_sum_bound(zeros, 3);
  CHECK(z.lhs == doctest::Approx(1.0));
  CHECK(z.rhs == doctest::Approx(1.0));
  const std::vector<Complex> one{1.0};
  const auto o = schur_sum_bound(one, 1);
  CHECK(o.lhs == doctest::Approx(2.0));
  CHECK(o.rhs == doctest::Approx(4.0));
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> x;
    for (int i = 0; i < 1 + trial % 4; ++i) x.push_back(in_disk(gen, 1.0));
    const auto b = schur_sum_bound(x, trial % 5);
    CHECK(b.lhs <= b.rhs);
  }
}

TEST_CASE("generating coefficient counts tableaux of the conjugate shape") {
  for (int i = 0; i <= 4; ++i) {
    for (const auto& lambda : partitions_in_box(3, i)) {
      const Partition c = lambda.conjugate();
      std::vector<int> parts(c.parts().begin(), c.parts().end());
      CHECK(static_cast<double>(generating_coefficient(i, lambda)) == testing_support::ssyt_count(parts, i));
    }
  }
  CHECK(generating_coefficient(2, Partition(std::vector<int>{3})) == 0);
}

TEST_CASE("generating identity residual") {
  const std::vector<Complex> zero{0.0};
  CHECK(generating_identity_residual(zero, 2, Complex(0.7, 0.1)) <= 1e-15);
  const std::vector<Complex> ones{1.0, 1.0};
  CHECK(generating_identity_residual(ones, 1, 1.0) <= 1e-14);
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Complex> x;
    for (int k = 0; k < 1 + trial % 4; ++k) x.push_back(in_disk(gen, 1.0));
    CHECK(generating_identity_residual(x, 1 + trial % 3, 1.0) <= 1e-10);
  }
}
