#include "ginibre/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ginibre/errors.hpp"
#include "ginibre/schur.hpp"
#include "linalg.hpp"

namespace ginibre {

namespace {

constexpr double kDegeneracyRatio = 1e-10;
// Hadamard ratio det M / prod M_ii above which Z is taken from the determinant.
constexpr double kDetFormRatio = 1e-4;
constexpr double kSeriesRelTol = 1e-12;
constexpr int kSeriesMaxWeight = 4000;
constexpr std::size_t kSeriesMaxTerms = 5'000'000;
constexpr double kSubsetCap = 2e6;

bool all_zero(const PalmAnchor& x) {
  return std::all_of(x.anchors().begin(), x.anchors().end(), [](const Complex& v) { return v == Complex(0.0); });
}

Complex base_analytic(const std::optional<int>& n, Complex z, Complex w) {
  const Complex u = z * std::conj(w);
  return n ? exp_partial(*n, u) : std::exp(u);
}

struct PalmSystem {
  detail::Matrix m;
  double det = 0.0;
  double diag_prod = 1.0;
};

PalmSystem palm_system(const std::optional<int>& n, const PalmAnchor& x) {
  const std::size_t ell = x.ell();
  PalmSystem s{detail::Matrix(ell, ell)};
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t j = 0; j < ell; ++j) s.m(i, j) = base_analytic(n, x[i], x[j]);
    s.diag_prod *= s.m(i, i).real();
  }
  s.det = detail::determinant(s.m).real();
  return s;
}

// K(z,x) K(x,x)^{-1} K(x,w) for the base kernel.
Complex palm_correction(const std::optional<int>& n, const PalmAnchor& x, Complex z, Complex w) {
  const std::size_t ell = x.ell();
  if (ell == 0) return 0.0;
  PalmSystem s = palm_system(n, x);
  if (!(s.det > kDegeneracyRatio * s.diag_prod)) {
    throw PalmDegeneracy("palm_kernel_det: det K(x,x) below degeneracy threshold");
  }
  std::vector<Complex> c(ell);
  for (std::size_t j = 0; j < ell; ++j) c[j] = base_analytic(n, x[j], w);
  if (!detail::solve(s.m, c)) throw PalmDegeneracy("palm_kernel_det: singular anchor matrix");
  detail::CompensatedSum<Complex> acc;
  for (std::size_t i = 0; i < ell; ++i) acc.add(base_analytic(n, z, x[i]) * c[i]);
  return acc.value();
}

Complex q_of(const PalmAnchor& x, Complex z) {
  Complex q = 1.0;
  for (const auto& a : x.anchors()) q *= z - a;
  return q;
}

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// Calls f on every strictly increasing m-subset of [0, n).
template <class F>
void for_each_subset(int n, int m, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) idx[static_cast<std::size_t>(j)] = j;
  if (m > n) return;
  while (true) {
    f(std::span<const int>(idx));
    int j = m - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] == n - m + j) --j;
    if (j < 0) return;
    ++idx[static_cast<std::size_t>(j)];
    for (int k = j + 1; k < m; ++k) idx[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k) - 1] + 1;
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

double log_index_factorial(std::span<const int> idx) {
  double s = 0.0;
  for (int i : idx) s += log_factorial(i);
  return s;
}

// Sum over ell-subsets I of |s_{I-delta}(x)|^2 / I!, restricted to max(I) < N when N is given.
double z_series_impl(const std::optional<int>& N, const PalmAnchor& x) {
  const int ell = static_cast<int>(x.ell());
  if (ell == 0) return 1.0;
  const int max_part = N ? *N - ell : kSeriesMaxWeight;
  if (max_part < 0) return 0.0;
  double r = 0.0;
  for (const auto& v : x.anchors()) r = std::max(r, std::abs(v));
  const double a = ell * r * r;
  double log_pref = 0.0;
  for (int k = 1; k < ell; ++k) log_pref -= log_factorial(k);
  detail::CompensatedSum<double> sum;
  std::size_t terms = 0;
  std::vector<int> idx(static_cast<std::size_t>(ell));
  for (int W = 0; W <= kSeriesMaxWeight; ++W) {
    if (W > ell * max_part) return sum.value();
    for (const auto& lambda : partitions_of(W, ell, max_part)) {
      for (int j = 0; j < ell; ++j) idx[static_cast<std::size_t>(j)] = lambda.part(static_cast<std::size_t>(j)) + ell - 1 - j;
      sum.add(std::norm(schur_eval(lambda, x.anchors())) * std::exp(-log_index_factorial(idx)));
      if (++terms > kSeriesMaxTerms) throw ConvergenceFailure("z_of: series term budget exceeded");
    }
    // Shell W' is bounded by (ell r^2)^{W'} / (W'! prod_{k<ell} k!).
    if (a == 0.0) return sum.value();
    if (W + 2 > 2.0 * a) {
      const double log_next = (W + 1) * std::log(a) - log_factorial(W + 1) + log_pref;
      const double tail = std::exp(log_next) / (1.0 - a / (W + 2));
      if (tail < kSeriesRelTol * sum.value()) return sum.value();
    }
  }
  throw ConvergenceFailure("z_of: series weight budget exceeded");
}

double z_det_impl(const std::optional<int>& N, const PalmAnchor& x) {
  const Complex vdm = vandermonde(x.anchors());
  if (vdm == Complex(0.0)) throw InvalidArgument("z_of_det: coincident anchors");
  return palm_system(N, x).det / std::norm(vdm);
}

double z_auto(const std::optional<int>& N, const PalmAnchor& x) {
  const std::size_t ell = x.ell();
  if (ell == 0) return 1.0;
  if (ell == 1) return N ? exp_partial(*N, Complex(std::norm(x[0]))).real() : std::exp(std::norm(x[0]));
  if (well_separated(x.anchors())) {
    const PalmSystem s = palm_system(N, x);
    if (s.det > kDetFormRatio * s.diag_prod) return s.det / std::norm(vandermonde(x.anchors()));
  }
  return z_series_impl(N, x);
}

void require_truncation(int N, const PalmAnchor& x, const char* what) {
  if (N < static_cast<int>(x.ell())) throw InvalidArgument(std::string(what) + ": N must be at least ell");
}

}  // namespace

KernelSpec KernelSpec::infinite(Gauge gauge) { return KernelSpec(InfiniteK{}, gauge); }

KernelSpec KernelSpec::truncated(int n, Gauge gauge) {
  if (n < 1) throw InvalidArgument("TruncatedK: n must be positive");
  return KernelSpec(TruncatedK{n}, gauge);
}

KernelSpec KernelSpec::origin_palm(int ell, Gauge gauge) {
  if (ell < 0) throw InvalidArgument("OriginPalmK: ell must be non-negative");
  return KernelSpec(OriginPalmK{ell}, gauge);
}

KernelSpec KernelSpec::palm(const KernelSpec& base, const PalmAnchor& anchors) {
  std::optional<int> n;
  std::vector<Complex> flat;
  if (std::holds_alternative<TruncatedK>(base.family_)) {
    n = std::get<TruncatedK>(base.family_).n;
  } else if (const auto* p = std::get_if<PalmK>(&base.family_)) {
    n = p->n;
    flat.assign(p->anchors.anchors().begin(), p->anchors.anchors().end());
  } else if (const auto* o = std::get_if<OriginPalmK>(&base.family_)) {
    flat.assign(static_cast<std::size_t>(o->ell), Complex(0.0));
  }
  flat.insert(flat.end(), anchors.anchors().begin(), anchors.anchors().end());
  if (n && *n <= static_cast<int>(flat.size())) {
    throw InvalidArgument("PalmK: truncated base requires n > ell");
  }
  return KernelSpec(PalmK{n, PalmAnchor(std::move(flat))}, base.gauge_);
}

KernelSpec KernelSpec::with_gauge(Gauge gauge) const { return KernelSpec(family_, gauge); }

std::optional<std::pair<int, std::optional<int>>> KernelSpec::mode_range() const {
  using Range = std::pair<int, std::optional<int>>;
  if (std::holds_alternative<InfiniteK>(family_)) return Range{0, std::nullopt};
  if (const auto* t = std::get_if<TruncatedK>(&family_)) return Range{0, t->n};
  if (const auto* o = std::get_if<OriginPalmK>(&family_)) return Range{o->ell, std::nullopt};
  const auto& p = std::get<PalmK>(family_);
  if (all_zero(p.anchors)) return Range{static_cast<int>(p.anchors.ell()), p.n};
  return std::nullopt;
}

std::optional<int> KernelSpec::rank() const {
  if (const auto* t = std::get_if<TruncatedK>(&family_)) return t->n;
  if (const auto* p = std::get_if<PalmK>(&family_)) {
    if (p->n) return *p->n - static_cast<int>(p->anchors.ell());
  }
  return std::nullopt;
}

double gaussian_weight(Complex z) { return std::exp(-std::norm(z)) / std::numbers::pi; }

Complex exp_partial(int n, Complex u) {
  detail::CompensatedSum<Complex> acc;
  Complex term = 1.0;
  for (int k = 0; k < n; ++k) {
    if (k > 0) term *= u / static_cast<double>(k);
    acc.add(term);
  }
  return acc.value();
}

namespace {

// sum_{lo <= k < hi} u^k / k!
Complex exp_range(int lo, int hi, Complex u) {
  Complex term = 1.0;
  for (int k = 1; k <= lo; ++k) term *= u / static_cast<double>(k);
  detail::CompensatedSum<Complex> acc;
  for (int k = lo; k < hi; ++k) {
    if (k > lo) term *= u / static_cast<double>(k);
    acc.add(term);
  }
  return acc.value();
}

}  // namespace

Complex exp_tail(int ell, Complex u) {
  if (ell <= 0) return std::exp(u);
  if (std::abs(u) < 0.5 * ell) {
    Complex term = 1.0;
    for (int k = 1; k <= ell; ++k) term *= u / static_cast<double>(k);
    detail::CompensatedSum<Complex> acc;
    acc.add(term);
    for (int k = ell + 1; k < ell + 2000; ++k) {
      term *= u / static_cast<double>(k);
      acc.add(term);
      if (std::abs(term) <= 1e-18 * std::abs(acc.value())) break;
    }
    return acc.value();
  }
  return std::exp(u) - exp_partial(ell, u);
}

Complex palm_kernel_det(const KernelSpec& base, const PalmAnchor& x, Complex z, Complex w) {
  const KernelSpec spec = KernelSpec::palm(base, x);
  const auto& p = std::get<PalmK>(spec.family());
  Complex v = base_analytic(p.n, z, w) - palm_correction(p.n, p.anchors, z, w);
  if (base.gauge() == Gauge::Lebesgue) v *= std::sqrt(gaussian_weight(z) * gaussian_weight(w));
  return v;
}

Complex palm_kernel_schur_l(int n, const PalmAnchor& x, Complex z, Complex w) {
  const int ell = static_cast<int>(x.ell());
  if (n <= ell) throw InvalidArgument("palm_kernel_schur: n must exceed ell");
  if (binomial(n, ell + 1) > kSubsetCap) throw BudgetExceeded("palm_kernel_schur: index-set enumeration cap exceeded");
  std::vector<Complex> yz{z}, yw{w};
  yz.insert(yz.end(), x.anchors().begin(), x.anchors().end());
  yw.insert(yw.end(), x.anchors().begin(), x.anchors().end());
  detail::CompensatedSum<Complex> num;
  for_each_subset(n, ell + 1, [&](std::span<const int> idx) {
    const Partition lambda = partition_from_index_set(idx);
    const double weight = std::exp(-log_index_factorial(idx));
    num.add(schur_eval(lambda, yz) * std::conj(schur_eval(lambda, yw)) * weight);
  });
  detail::CompensatedSum<double> den;
  for_each_subset(n, ell, [&](std::span<const int> idx) {
    const Partition lambda = partition_from_index_set(idx);
    den.add(std::norm(schur_eval(lambda, x.anchors())) * std::exp(-log_index_factorial(idx)));
  });
  return num.value() / den.value();
}

Complex palm_kernel_schur(int n, const PalmAnchor& x, Complex z, Complex w) {
  return q_of(x, z) * std::conj(q_of(x, w)) * palm_kernel_schur_l(n, x, z, w);
}

Complex eval(const KernelSpec& spec, Complex z, Complex w) {
  const Complex u = z * std::conj(w);
  Complex v;
  const auto& fam = spec.family();
  if (std::holds_alternative<InfiniteK>(fam)) {
    v = std::exp(u);
  } else if (const auto* t = std::get_if<TruncatedK>(&fam)) {
    v = exp_partial(t->n, u);
  } else if (const auto* o = std::get_if<OriginPalmK>(&fam)) {
    v = exp_tail(o->ell, u);
  } else {
    const auto& p = std::get<PalmK>(fam);
    try {
      v = base_analytic(p.n, z, w) - palm_correction(p.n, p.anchors, z, w);
    } catch (const PalmDegeneracy&) {
      const int ell = static_cast<int>(p.anchors.ell());
      if (p.n) {
        v = palm_kernel_schur(*p.n, p.anchors, z, w);
      } else if (all_zero(p.anchors)) {
        v = exp_tail(ell, u);
      } else {
        throw;
      }
    }
  }
  if (spec.gauge() == Gauge::Lebesgue) v *= std::sqrt(gaussian_weight(z) * gaussian_weight(w));
  return v;
}

double z_of(const PalmAnchor& x) { return z_auto(std::nullopt, x); }
double z_of_det(const PalmAnchor& x) { return x.ell() == 0 ? 1.0 : z_det_impl(std::nullopt, x); }
double z_of_series(const PalmAnchor& x) { return z_series_impl(std::nullopt, x); }

double z_truncated(int N, const PalmAnchor& x) {
  require_truncation(N, x, "z_truncated");
  return z_auto(N, x);
}
double z_truncated_det(int N, const PalmAnchor& x) {
  require_truncation(N, x, "z_truncated_det");
  return x.ell() == 0 ? 1.0 : z_det_impl(N, x);
}
double z_truncated_series(int N, const PalmAnchor& x) {
  require_truncation(N, x, "z_truncated_series");
  return z_series_impl(N, x);
}

double z_ratio(const PalmAnchor& x, const PalmAnchor& y) {
  if (x.ell() != y.ell()) throw DimensionMismatch("z_ratio: anchor counts differ");
  if (x == y) return 1.0;
  return z_of(x) / z_of(y);
}

double partition_ratio_exact(int n, const PalmAnchor& x, const PalmAnchor& y) {
  if (x.ell() != y.ell()) throw DimensionMismatch("partition_ratio_exact: anchor counts differ");
  if (n < 1) throw InvalidArgument("partition_ratio_exact: n must be positive");
  if (x == y) return 1.0;
  const int N = n + static_cast<int>(x.ell());
  return z_auto(N, x) / z_auto(N, y);
}

double correlation_det(const KernelSpec& spec, const Configuration& points) {
  const std::size_t k = points.size();
  if (k == 0) return 1.0;
  detail::Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m(i, j) = eval(spec, points[i], points[j]);
  }
  return detail::determinant(std::move(m)).real();
}

double cramer_coeff(const PalmAnchor& x, int i) {
  const int ell = static_cast<int>(x.ell());
  if (ell < 1) throw InvalidArgument("cramer_coeff: ell must be at least 1");
  if (i < 0) throw InvalidArgument("cramer_coeff: i must be non-negative");
  if (i < ell) return 1.0;
  detail::CompensatedSum<double> acc;
  for (int p = 0; p < ell; ++p) {
    std::vector<int> parts{i - ell + 1};
    parts.insert(parts.end(), static_cast<std::size_t>(ell - 1 - p), 1);
    const double s2 = std::norm(schur_eval(Partition(parts), x.anchors()));
    acc.add(std::exp(log_factorial(p) - log_factorial(i)) * s2);
  }
  return acc.value();
}

double cramer_coeff_solve(const PalmAnchor& x, int i) {
  const std::size_t ell = x.ell();
  if (ell < 1) throw InvalidArgument("cramer_coeff_solve: ell must be at least 1");
  if (i < 0) throw InvalidArgument("cramer_coeff_solve: i must be non-negative");
  auto phi = [](int p, Complex z) {
    Complex v = 1.0;
    for (int k = 1; k <= p; ++k) v *= z / std::sqrt(static_cast<double>(k));
    return v;
  };
  detail::Matrix v(ell, ell);
  std::vector<Complex> rhs(ell);
  for (std::size_t a = 0; a < ell; ++a) {
    for (std::size_t k = 0; k < ell; ++k) v(a, k) = phi(static_cast<int>(ell - 1 - k), x[a]);
    rhs[a] = phi(i, x[a]);
  }
  if (!detail::solve(std::move(v), rhs)) throw PalmDegeneracy("cramer_coeff_solve: singular Vandermonde system");
  double s = 0.0;
  for (const auto& c : rhs) s += std::norm(c);
  return s;
}

DiffBound palm_diff_bound_check(const PalmAnchor& x, std::optional<int> n, Complex z, Complex w) {
  const int ell = static_cast<int>(x.ell());
  if (n && *n <= ell) throw InvalidArgument("palm_diff_bound_check: n must exceed ell");
  DiffBound out;
  if (ell == 0) return out;
  try {
    out.diff = std::abs(palm_correction(n, x, z, w));
  } catch (const PalmDegeneracy&) {
    const Complex u = z * std::conj(w);
    if (n) {
      out.diff = std::abs(exp_partial(*n, u) - palm_kernel_schur(*n, x, z, w));
    } else if (all_zero(x)) {
      out.diff = std::abs(exp_partial(ell, u));
    } else {
      throw;
    }
  }
  double c = 1.0;
  for (const auto& v : x.anchors()) c *= 1.0 + std::abs(v);
  out.bound = std::exp(log_factorial(ell - 1) + c * (std::abs(z) + std::abs(w)));
  return out;
}

}  // namespace ginibre

namespace ginibre {

PreparedKernel::PreparedKernel(const KernelSpec& spec, std::span<const Complex> nodes)
    : spec_(spec.with_gauge(Gauge::Analytic)), nodes_(nodes.begin(), nodes.end()) {
  modes_ = spec_.mode_range();
  if (modes_) return;
  const auto* p = std::get_if<PalmK>(&spec_.family());
  if (!p || p->anchors.ell() == 0) return;
  const PalmSystem s = palm_system(p->n, p->anchors);
  if (!(s.det > kDegeneracyRatio * s.diag_prod)) return;
  base_n_ = p->n;
  use_correction_ = true;
  ell_ = p->anchors.ell();
  left_.resize(nodes_.size() * ell_);
  right_.resize(nodes_.size() * ell_);
  for (std::size_t b = 0; b < nodes_.size(); ++b) {
    std::vector<Complex> c(ell_);
    for (std::size_t i = 0; i < ell_; ++i) {
      left_[b * ell_ + i] = base_analytic(base_n_, nodes_[b], p->anchors[i]);
      c[i] = base_analytic(base_n_, p->anchors[i], nodes_[b]);
    }
    if (!detail::solve(s.m, c)) throw PalmDegeneracy("PreparedKernel: singular anchor matrix");
    for (std::size_t i = 0; i < ell_; ++i) right_[b * ell_ + i] = c[i];
  }
}

Complex PreparedKernel::operator()(std::size_t a, std::size_t b) const {
  if (modes_) {
    const Complex u = nodes_[a] * std::conj(nodes_[b]);
    const auto& [lo, hi] = *modes_;
    if (!hi) return exp_tail(lo, u);
    if (lo == 0) return exp_partial(*hi, u);
    return exp_range(lo, *hi, u);
  }
  if (!use_correction_) return eval(spec_, nodes_[a], nodes_[b]);
  Complex v = base_analytic(base_n_, nodes_[a], nodes_[b]);
  for (std::size_t i = 0; i < ell_; ++i) v -= left_[a * ell_ + i] * right_[b * ell_ + i];
  return v;
}

}  // namespace ginibre
