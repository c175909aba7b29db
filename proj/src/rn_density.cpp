#include "ginibre/rn_density.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "ginibre/errors.hpp"
#include "ginibre/kernel.hpp"
#include "linalg.hpp"

namespace ginibre {

namespace {

constexpr double kCollision = 1e-12;

void require_same_ell(const PalmAnchor& x, const PalmAnchor& y, const char* what) {
  if (x.ell() != y.ell()) throw DimensionMismatch(std::string(what) + ": anchor counts differ (singular pair)");
}

bool collides(Complex s, const PalmAnchor& y) {
  return std::any_of(y.anchors().begin(), y.anchors().end(), [&](const Complex& a) { return std::abs(a - s) <= kCollision; });
}

double point_term(Complex s, const PalmAnchor& x, const PalmAnchor& y) {
  double a = 0.0, b = 0.0;
  for (const auto& v : x.anchors()) a += 2.0 * std::log(std::abs(v - s));
  for (const auto& v : y.anchors()) b += 2.0 * std::log(std::abs(v - s));
  return a - b;
}

}  // namespace

ShellRadii::ShellRadii(std::vector<double> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) throw InvalidArgument("ShellRadii: empty radius list");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || (i > 0 && !(radii_[i] > radii_[i - 1]))) {
      throw InvalidArgument("ShellRadii: radii must be positive and strictly increasing");
    }
  }
}

double ShellRadii::operator()(int r) const {
  if (r < 0) throw InvalidArgument("ShellRadii: negative index");
  if (radii_.empty()) return std::ldexp(1.0, r);
  if (static_cast<std::size_t>(r) >= radii_.size()) throw InvalidArgument("ShellRadii: index beyond supplied radii");
  return radii_[static_cast<std::size_t>(r)];
}

int ShellRadii::count_limit() const { return radii_.empty() ? -1 : static_cast<int>(radii_.size()) - 1; }

std::vector<double> shell_log_increments(const Configuration& config, const PalmAnchor& x, const PalmAnchor& y,
                                         int r_max, const ShellRadii& radii) {
  require_same_ell(x, y, "truncated_log_product");
  if (r_max < 0) throw InvalidArgument("truncated_log_product: r must be non-negative");
  if (radii.count_limit() >= 0 && r_max > radii.count_limit()) throw InvalidArgument("truncated_log_product: r beyond shell radii");
  std::vector<double> bounds(static_cast<std::size_t>(r_max) + 1);
  for (int r = 0; r <= r_max; ++r) bounds[static_cast<std::size_t>(r)] = radii(r);
  std::vector<detail::CompensatedSum<double>> shells(bounds.size());
  if (x.ell() == 0) return std::vector<double>(bounds.size(), 0.0);
  for (const auto& s : config.points()) {
    const double m = std::abs(s);
    const auto it = std::upper_bound(bounds.begin(), bounds.end(), m);
    if (it == bounds.end()) continue;
    if (collides(s, y)) throw AnchorCollision("truncated_log_product: configuration point at an anchor of y");
    shells[static_cast<std::size_t>(it - bounds.begin())].add(point_term(s, x, y));
  }
  std::vector<double> out(bounds.size());
  for (std::size_t r = 0; r < bounds.size(); ++r) out[r] = shells[r].value();
  return out;
}

double truncated_log_product(const Configuration& config, const PalmAnchor& x, const PalmAnchor& y, int r,
                             const ShellRadii& radii) {
  const auto inc = shell_log_increments(config, x, y, r, radii);
  double cum = 0.0;
  for (double d : inc) cum += d;
  return cum;
}

RnDensityResult rn_density(const Configuration& config, const PalmAnchor& x, const PalmAnchor& y, int r_max,
                           double tol, const ShellRadii& radii) {
  require_same_ell(x, y, "rn_density");
  if (r_max < 1) throw InvalidArgument("rn_density: r_max must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("rn_density: tol must be positive");
  const auto inc = shell_log_increments(config, x, y, r_max, radii);
  RnDensityResult out;
  out.z_ratio = z_ratio(x, y);
  double cum = 0.0, cum_stop = 0.0;
  for (int r = 0; r <= r_max; ++r) {
    cum += inc[static_cast<std::size_t>(r)];
    out.diag.log_increments.push_back({r, inc[static_cast<std::size_t>(r)]});
    if (!out.diag.converged && r >= 1 && std::abs(inc[static_cast<std::size_t>(r) - 1]) < tol &&
        std::abs(inc[static_cast<std::size_t>(r)]) < tol) {
      out.diag.converged = true;
      out.diag.r_stop = r;
      cum_stop = cum;
    }
  }
  if (!out.diag.converged) {
    out.diag.r_stop = r_max;
    cum_stop = cum;
  }
  out.density = std::exp(cum_stop) / out.z_ratio;
  return out;
}

TailLogProduct tail_log_product(const Configuration& config, Complex x, int r, int R, const ShellRadii& radii) {
  if (r < 0 || !(r < R)) throw InvalidArgument("tail_log_product: need 0 <= r < R");
  const double lo = radii(r), hi = radii(R);
  TailLogProduct out;
  detail::CompensatedSum<double> s;
  for (const auto& z : config.points()) {
    if (z == Complex(0.0)) {
      ++out.skipped_origin;
      continue;
    }
    const double m = std::abs(z);
    if (m > lo && m <= hi) s.add(2.0 * std::log(std::abs(1.0 - x / z)));
  }
  out.value = s.value();
  return out;
}

double full_log_product(const Configuration& config, const PalmAnchor& x, const PalmAnchor& y) {
  require_same_ell(x, y, "full_log_product");
  detail::CompensatedSum<double> s;
  if (x.ell() == 0) return 0.0;
  for (const auto& p : config.points()) {
    if (collides(p, y)) throw AnchorCollision("full_log_product: configuration point at an anchor of y");
    s.add(point_term(p, x, y));
  }
  return s.value();
}

bool ExpectationCheck::within(double k_se) const { return std::abs(mc.mean - exact) <= k_se * mc.std_error; }

ExpectationCheck expectation_consistency(int n, const PalmAnchor& x, const PalmAnchor& y, std::size_t n_samples,
                                         const RngStream& rng, std::size_t workers) {
  require_same_ell(x, y, "expectation_consistency");
  if (n < 1) throw InvalidArgument("expectation_consistency: n must be positive");
  if (n_samples < 2) throw InvalidArgument("expectation_consistency: at least two samples are required");
  const int N = n + static_cast<int>(y.ell());
  const ProjectionBasis basis = ProjectionBasis::palm(N, y);
  std::atomic<std::size_t> collisions{0};
  const std::function<double(RngStream&, std::size_t)> draw = [&](RngStream& stream, std::size_t) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      RngStream s = attempt == 0 ? stream : stream.substream(attempt);
      const Configuration c = sample_projection(basis, s);
      try {
        return std::exp(full_log_product(c, x, y));
      } catch (const AnchorCollision&) {
        ++collisions;
      }
    }
  };
  const auto values = monte_carlo<double>(n_samples, rng, workers, draw);
  ExpectationCheck out;
  out.mc = estimate(values, rng.seed());
  out.exact = partition_ratio_exact(n, x, y);
  out.collisions_resampled = collisions.load();
  return out;
}

}  // namespace ginibre
