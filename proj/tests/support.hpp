#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "ginibre/core.hpp"

namespace testing_support {

using ginibre::Complex;

inline Complex in_disk(std::mt19937_64& gen, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(gen));
  const double th = 2.0 * M_PI * u(gen);
  return std::polar(r, th);
}

// Points uniform in |x| <= radius with pairwise distance >= gap.
inline std::vector<Complex> separated(std::mt19937_64& gen, std::size_t ell, double radius, double gap) {
  while (true) {
    std::vector<Complex> x;
    for (std::size_t i = 0; i < ell; ++i) x.push_back(in_disk(gen, radius));
    bool ok = true;
    for (std::size_t i = 0; i < ell && ok; ++i) {
      for (std::size_t j = i + 1; j < ell && ok; ++j) ok = std::abs(x[i] - x[j]) >= gap;
    }
    if (ok) return x;
  }
}

// Schur polynomial as the sum over semistandard Young tableaux of shape lambda
// with entries 1..x.size(), filled cell by cell in row-major order.
inline Complex schur_ssyt(const std::vector<int>& lambda, const std::vector<Complex>& x) {
  const int m = static_cast<int>(x.size());
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < static_cast<int>(lambda.size()); ++r) {
    for (int c = 0; c < lambda[r]; ++c) cells.emplace_back(r, c);
  }
  if (static_cast<int>(lambda.size()) > m) return 0.0;
  std::vector<std::vector<int>> t(lambda.size());
  for (std::size_t r = 0; r < lambda.size(); ++r) t[r].assign(static_cast<std::size_t>(lambda[r]), 0);
  Complex total = 0.0;
  std::function<void(std::size_t, Complex)> fill = [&](std::size_t k, Complex mono) {
    if (k == cells.size()) {
      total += mono;
      return;
    }
    const auto [r, c] = cells[k];
    int lo = 1;
    if (c > 0) lo = std::max(lo, t[r][c - 1]);
    if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);
    for (int v = lo; v <= m; ++v) {
      t[r][c] = v;
      fill(k + 1, mono * x[static_cast<std::size_t>(v - 1)]);
    }
  };
  fill(0, 1.0);
  return total;
}

// Number of SSYT of the given shape with entries 1..m, i.e. s_lambda(1^m).
inline double ssyt_count(const std::vector<int>& lambda, int m) {
  return schur_ssyt(lambda, std::vector<Complex>(static_cast<std::size_t>(m), 1.0)).real();
}

// e_k by brute-force enumeration of k-subsets.
inline Complex elementary_brute(std::size_t k, const std::vector<Complex>& x) {
  Complex total = 0.0;
  const std::size_t n = x.size();
  if (k > n) return 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    Complex p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) p *= x[i];
    }
    total += p;
  }
  return total;
}

inline double factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace testing_support
