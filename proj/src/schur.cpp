#include "ginibre/schur.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "ginibre/errors.hpp"
#include "linalg.hpp"

namespace ginibre {

namespace {

constexpr double kSeparationFactor = 1e-4;
constexpr std::size_t kGeneratingBudget = 200000;

Complex ipow(Complex base, int e) {
  Complex r = 1.0;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace

Complex vandermonde(std::span<const Complex> x) {
  Complex v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) v *= x[i] - x[j];
  }
  return v;
}

std::vector<Complex> elementary_symmetric_all(std::span<const Complex> x) {
  std::vector<Complex> e(x.size() + 1, Complex(0.0));
  e[0] = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t m = j + 1; m >= 1; --m) e[m] += x[j] * e[m - 1];
  }
  return e;
}

Complex elementary_symmetric(std::size_t k, std::span<const Complex> x) {
  if (k > x.size()) return 0.0;
  return elementary_symmetric_all(x)[k];
}

std::vector<Complex> complete_homogeneous(std::size_t k_max, std::span<const Complex> x) {
  std::vector<Complex> h(k_max + 1, Complex(0.0));
  h[0] = 1.0;
  // Adding one variable at a time: h_k(x_1..x_m) = h_k(x_1..x_{m-1}) + x_m h_{k-1}(x_1..x_m).
  for (const Complex& xm : x) {
    for (std::size_t k = 1; k <= k_max; ++k) h[k] += xm * h[k - 1];
  }
  return h;
}

bool well_separated(std::span<const Complex> x) {
  if (x.size() < 2) return true;
  double max_abs = 0.0;
  for (const auto& v : x) max_abs = std::max(max_abs, std::abs(v));
  const double threshold = kSeparationFactor * (1.0 + max_abs);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (!(std::abs(x[i] - x[j]) > threshold)) return false;
    }
  }
  return true;
}

Complex schur_bialternant(const Partition& lambda, std::span<const Complex> x) {
  const std::size_t n = x.size();
  if (lambda.length() > n) return 0.0;
  if (n == 0) return 1.0;
  const Complex vdm = vandermonde(x);
  if (vdm == Complex(0.0)) throw InvalidArgument("schur_bialternant: coincident arguments");
  const int max_exp = lambda.part(0) + static_cast<int>(n) - 1;
  detail::Matrix a(n, n);
  std::vector<Complex> powers(static_cast<std::size_t>(max_exp) + 1);
  for (std::size_t i = 0; i < n; ++i) {
    powers[0] = 1.0;
    for (int e = 1; e <= max_exp; ++e) powers[static_cast<std::size_t>(e)] = powers[static_cast<std::size_t>(e) - 1] * x[i];
    for (std::size_t j = 0; j < n; ++j) {
      const int e = lambda.part(j) + static_cast<int>(n - 1 - j);
      a(i, j) = powers[static_cast<std::size_t>(e)];
    }
  }
  return detail::determinant(std::move(a)) / vdm;
}

Complex schur_jacobi_trudi(const Partition& lambda, std::span<const Complex> x) {
  const std::size_t m = lambda.length();
  if (m == 0) return 1.0;
  if (m > x.size()) return 0.0;
  const std::size_t k_max = static_cast<std::size_t>(lambda.part(0)) + m - 1;
  const std::vector<Complex> h = complete_homogeneous(k_max, x);
  detail::Matrix a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const long k = static_cast<long>(lambda.part(i)) - static_cast<long>(i) + static_cast<long>(j);
      a(i, j) = k < 0 ? Complex(0.0) : h[static_cast<std::size_t>(k)];
    }
  }
  return detail::determinant(std::move(a));
}

Complex schur_eval(const Partition& lambda, std::span<const Complex> x) {
  if (lambda.length() > x.size()) return 0.0;
  if (lambda.length() == 0) return 1.0;
  if (well_separated(x)) return schur_bialternant(lambda, x);
  return schur_jacobi_trudi(lambda, x);
}

std::vector<Partition> partitions_of(int weight, int parts_max, int max_part) {
  std::vector<Partition> out;
  if (weight < 0 || parts_max < 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int bound) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == parts_max) return;
    for (int p = std::min(remaining, bound); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(weight, max_part);
  return out;
}

std::vector<Partition> partitions_up_to(int weight_max, int parts_max) {
  std::vector<Partition> out;
  for (int w = 0; w <= weight_max; ++w) {
    auto part = partitions_of(w, parts_max, w);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<Partition> partitions_in_box(int parts_max, int max_part) {
  std::vector<Partition> out;
  for (int w = 0; w <= parts_max * max_part; ++w) {
    auto part = partitions_of(w, parts_max, max_part);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Partition partition_from_index_set(std::span<const int> index_set) {
  const std::size_t m = index_set.size();
  std::vector<int> parts(m);
  for (std::size_t j = 0; j < m; ++j) {
    // Largest index first, reduced by its position from the bottom.
    parts[j] = index_set[m - 1 - j] - static_cast<int>(m - 1 - j);
  }
  return Partition(std::move(parts));
}

SchurSumBound schur_sum_bound(std::span<const Complex> x, int i) {
  if (i < 0) throw InvalidArgument("schur_sum_bound: i must be non-negative");
  SchurSumBound out;
  detail::CompensatedSum<double> lhs;
  for (const auto& lambda : partitions_up_to(i, static_cast<int>(x.size()))) {
    lhs.add(std::norm(schur_eval(lambda, x)));
  }
  out.lhs = lhs.value();
  double c = 1.0;
  for (const auto& v : x) c *= 1.0 + std::abs(v);
  out.rhs = std::pow(c, 2.0 * i);
  return out;
}

namespace {

void add_factorization(std::map<int, int>& exps, int value, int sign) {
  for (int p = 2; p * p <= value; ++p) {
    while (value % p == 0) {
      exps[p] += sign;
      value /= p;
    }
  }
  if (value > 1) exps[value] += sign;
}

}  // namespace

std::uint64_t generating_coefficient(int i, const Partition& lambda) {
  if (i < 0) throw InvalidArgument("generating_coefficient: i must be non-negative");
  if (lambda.length() == 0) return 1;
  if (lambda.part(0) > i) return 0;
  const Partition conj = lambda.conjugate();
  std::map<int, int> exps;
  for (std::size_t a = 0; a < lambda.length(); ++a) {
    for (int b = 0; b < lambda.part(a); ++b) {
      const int content = b - static_cast<int>(a);
      const int hook = (lambda.part(a) - b - 1) + (conj.part(static_cast<std::size_t>(b)) - static_cast<int>(a) - 1) + 1;
      add_factorization(exps, i - content, +1);
      add_factorization(exps, hook, -1);
    }
  }
  std::uint64_t value = 1;
  for (const auto& [prime, e] : exps) {
    if (e < 0) throw BudgetExceeded("generating_coefficient: non-integral intermediate");
    for (int k = 0; k < e; ++k) {
      if (__builtin_mul_overflow(value, static_cast<std::uint64_t>(prime), &value)) {
        throw BudgetExceeded("generating_coefficient: exceeds 64-bit range");
      }
    }
  }
  return value;
}

double generating_identity_residual(std::span<const Complex> x, int i, Complex t) {
  if (i < 0) throw InvalidArgument("generating_identity_residual: i must be non-negative");
  const int ell = static_cast<int>(x.size());
  // Number of partitions in an ell x i box is binom(i + ell, ell).
  double count = 1.0;
  for (int k = 1; k <= ell; ++k) count = count * (i + k) / k;
  if (count > static_cast<double>(kGeneratingBudget)) {
    throw BudgetExceeded("generating_identity_residual: enumeration budget exceeded");
  }
  detail::CompensatedSum<Complex> lhs;
  for (const auto& lambda : partitions_in_box(ell, i)) {
    const double c = static_cast<double>(generating_coefficient(i, lambda));
    lhs.add(c * schur_eval(lambda, x) * ipow(t, lambda.weight()));
  }
  Complex base = 1.0;
  for (const auto& v : x) base *= 1.0 + v * t;
  return std::abs(lhs.value() - ipow(base, i));
}

}  // namespace ginibre
