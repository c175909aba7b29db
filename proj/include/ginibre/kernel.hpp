#pragma once

#include <optional>
#include <span>
#include <vector>
#include <utility>
#include <variant>

#include "ginibre/core.hpp"

namespace ginibre {

enum class Gauge {
  Analytic,  // with respect to the Gaussian measure g(z) dz, g(z) = exp(-|z|^2) / pi
  Lebesgue,  // multiplied by g(z)^{1/2} g(w)^{1/2}
};

struct InfiniteK {};
struct TruncatedK {
  int n = 1;
};
struct OriginPalmK {
  int ell = 0;
};
// Palm kernel of K (n empty) or K^n at the anchors.
struct PalmK {
  std::optional<int> n;
  PalmAnchor anchors;
};

class KernelSpec {
 public:
  using Family = std::variant<InfiniteK, TruncatedK, PalmK, OriginPalmK>;

  static KernelSpec infinite(Gauge gauge = Gauge::Analytic);
  static KernelSpec truncated(int n, Gauge gauge = Gauge::Analytic);
  static KernelSpec origin_palm(int ell, Gauge gauge = Gauge::Analytic);
  // Nested Palm kernels flatten into a single anchor list; an origin-Palm
  // base contributes ell anchors at 0. Requires n > ell for truncated bases.
  static KernelSpec palm(const KernelSpec& base, const PalmAnchor& anchors);

  const Family& family() const { return family_; }
  Gauge gauge() const { return gauge_; }
  KernelSpec with_gauge(Gauge gauge) const;

  // Rotation-invariant kernels are sums of (z conj(w))^k / k! over a contiguous
  // range of k. Returns [lo, hi) with hi empty meaning infinity.
  std::optional<std::pair<int, std::optional<int>>> mode_range() const;

  // Rank of the projection kernel, empty if infinite.
  std::optional<int> rank() const;

 private:
  KernelSpec(Family family, Gauge gauge) : family_(std::move(family)), gauge_(gauge) {}
  Family family_;
  Gauge gauge_ = Gauge::Analytic;
};

// Gaussian weight g(z) = exp(-|z|^2) / pi.
double gaussian_weight(Complex z);

Complex eval(const KernelSpec& spec, Complex z, Complex w);

// Truncated exponential sum_{k<n} u^k / k!  and tail sum_{k>=ell} u^k / k!.
Complex exp_partial(int n, Complex u);
Complex exp_tail(int ell, Complex u);

// Schur complement form of the Palm kernel (analytic gauge of the base).
// Throws PalmDegeneracy if det K(x,x) <= 1e-10 prod K(x_i,x_i).
Complex palm_kernel_det(const KernelSpec& base, const PalmAnchor& x, Complex z, Complex w);

// K^n_x(z,w) = q_x(z) conj(q_x(w)) L^n_x(z,w), valid at coincident anchors.
Complex palm_kernel_schur(int n, const PalmAnchor& x, Complex z, Complex w);

// L^n_x(z,w) alone.
Complex palm_kernel_schur_l(int n, const PalmAnchor& x, Complex z, Complex w);

// Z(x): continuous extension of det[K(x_i,x_j)] / |Delta(x)|^2.
double z_of(const PalmAnchor& x);
double z_of_det(const PalmAnchor& x);
double z_of_series(const PalmAnchor& x);

// Same quantity for K^N.
double z_truncated(int N, const PalmAnchor& x);
double z_truncated_det(int N, const PalmAnchor& x);
double z_truncated_series(int N, const PalmAnchor& x);

double z_ratio(const PalmAnchor& x, const PalmAnchor& y);

// Z^{ell+n}(x) / Z^{ell+n}(y): normalization ratio of the Palm measures of G^{ell+n}.
double partition_ratio_exact(int n, const PalmAnchor& x, const PalmAnchor& y);

double correlation_det(const KernelSpec& spec, const Configuration& points);

// |V^ell(x)^{-1} Phi_i(x)|^2 via hook Schur functions.
double cramer_coeff(const PalmAnchor& x, int i);
// Same quantity by solving the Vandermonde-type system directly.
double cramer_coeff_solve(const PalmAnchor& x, int i);

struct DiffBound {
  double diff = 0.0;
  double bound = 0.0;
};

// diff = |K^n(z,w) - K^n_x(z,w)|, bound = (ell-1)! exp(C(x)(|z|+|w|)), C(x) = prod(1+|x_j|).
// n empty means n = infinity.
DiffBound palm_diff_bound_check(const PalmAnchor& x, std::optional<int> n, Complex z, Complex w);

}  // namespace ginibre

namespace ginibre {

// Kernel (analytic gauge) on a fixed node set, with anchor solves cached so
// that each entry costs O(ell).
class PreparedKernel {
 public:
  PreparedKernel(const KernelSpec& spec, std::span<const Complex> nodes);
  Complex operator()(std::size_t a, std::size_t b) const;
  std::size_t size() const { return nodes_.size(); }

 private:
  KernelSpec spec_;
  std::vector<Complex> nodes_;
  std::optional<std::pair<int, std::optional<int>>> modes_;
  std::optional<int> base_n_;
  bool use_correction_ = false;
  std::size_t ell_ = 0;
  std::vector<Complex> left_;   // B(z_a, x_i), row-major nodes x ell
  std::vector<Complex> right_;  // (B(x,x)^{-1} B(x, z_b))_i, row-major nodes x ell
};

}  // namespace ginibre
