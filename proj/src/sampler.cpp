#include "ginibre/sampler.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "ginibre/errors.hpp"
#include "ginibre/schur.hpp"

namespace ginibre {

namespace {

std::vector<std::uint32_t> split64(std::uint64_t v) {
  return {static_cast<std::uint32_t>(v & 0xffffffffu), static_cast<std::uint32_t>(v >> 32)};
}

std::mt19937_64 make_engine(const std::vector<std::uint32_t>& key) {
  std::seed_seq seq(key.begin(), key.end());
  return std::mt19937_64(seq);
}

constexpr double kNormalizationTol = 1e-9;
// Entries of the proposal vector below this fraction of its squared norm are skipped.
constexpr double kBandCutoff = 1e-34;

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : RngStream(seed, stream_id, [&] {
        auto k = split64(seed);
        auto s = split64(stream_id);
        k.insert(k.end(), s.begin(), s.end());
        return k;
      }()) {}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::vector<std::uint32_t> key)
    : seed_(seed), stream_id_(stream_id), key_(std::move(key)), engine_(make_engine(key_)) {}

RngStream RngStream::substream(std::uint64_t index) const {
  auto key = key_;
  auto i = split64(index);
  key.insert(key.end(), i.begin(), i.end());
  return RngStream(seed_, stream_id_, std::move(key));
}

double RngStream::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double RngStream::gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(engine_); }

std::size_t radial_truncation_index(double t_max) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max must be positive and finite");
  return static_cast<std::size_t>(std::ceil(t_max + 12.0 * std::sqrt(t_max + 1.0) + 50.0));
}

RadialConfiguration sample_radial_palm(int ell, double t_max, RngStream& rng) {
  if (ell < 0) throw InvalidArgument("sample_radial_palm: ell must be non-negative");
  const std::size_t i_max = radial_truncation_index(t_max);
  std::vector<double> out;
  for (std::size_t i = static_cast<std::size_t>(ell) + 1; i <= i_max; ++i) {
    const double y = rng.gamma(static_cast<double>(i));
    if (y <= t_max) out.push_back(y);
  }
  return RadialConfiguration(std::move(out));
}

std::vector<double> kostlan_draws(std::size_t i_max, RngStream& rng) {
  std::vector<double> y(i_max);
  for (std::size_t i = 1; i <= i_max; ++i) y[i - 1] = rng.gamma(static_cast<double>(i));
  return y;
}

RadialConfiguration eta_from_draws(std::span<const double> draws, int ell, double t_max) {
  if (ell < 0) throw InvalidArgument("eta_from_draws: ell must be non-negative");
  std::vector<double> out;
  for (std::size_t i = static_cast<std::size_t>(ell); i < draws.size(); ++i) {
    if (draws[i] <= t_max) out.push_back(draws[i]);
  }
  return RadialConfiguration(std::move(out));
}

double GaussianRadialFamily::log_moment(std::size_t j) const { return std::lgamma(static_cast<double>(j) + 1.0); }

double GaussianRadialFamily::draw(std::size_t j, RngStream& rng) const { return rng.gamma(static_cast<double>(j) + 1.0); }

RadialConfiguration sample_radial_dpp_log(std::span<const double> log_coeff_sq, const RadialDensityFamily& family,
                                          RngStream& rng, std::optional<double> horizon) {
  std::vector<double> out;
  for (std::size_t j = 0; j < log_coeff_sq.size(); ++j) {
    const double lc = log_coeff_sq[j];
    if (std::isnan(lc)) throw InvalidArgument("sample_radial_dpp: NaN coefficient");
    if (lc == -std::numeric_limits<double>::infinity()) continue;
    const double mass = lc + family.log_moment(j);
    if (!(std::abs(mass) <= kNormalizationTol)) {
      throw InvalidArgument("sample_radial_dpp: density " + std::to_string(j) + " is not normalized");
    }
    const double z = family.draw(j, rng);
    if (!horizon || z <= *horizon) out.push_back(z);
  }
  return RadialConfiguration(std::move(out));
}

RadialConfiguration sample_radial_dpp(std::span<const double> coeff_sq, const RadialDensityFamily& family,
                                      RngStream& rng, std::optional<double> horizon) {
  std::vector<double> logs(coeff_sq.size());
  for (std::size_t j = 0; j < coeff_sq.size(); ++j) {
    if (!(coeff_sq[j] >= 0.0)) throw InvalidArgument("sample_radial_dpp: coefficients must be non-negative");
    logs[j] = coeff_sq[j] == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(coeff_sq[j]);
  }
  return sample_radial_dpp_log(logs, family, rng, horizon);
}

ProjectionBasis ProjectionBasis::ginibre(int n) {
  if (n < 1) throw InvalidArgument("ProjectionBasis: n must be positive");
  ProjectionBasis b;
  b.n_ = n;
  b.rank_ = n;
  b.b_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Complex(0.0));
  for (int m = 0; m < n; ++m) b.b_[static_cast<std::size_t>(m) * static_cast<std::size_t>(n) + static_cast<std::size_t>(m)] = 1.0;
  return b;
}

ProjectionBasis ProjectionBasis::palm(int n, const PalmAnchor& x) {
  const int ell = static_cast<int>(x.ell());
  if (n <= ell) throw DimensionMismatch("sample_palm_ginibre_n: n must exceed the number of anchors");
  if (ell == 0) return ginibre(n);
  const int rank = n - ell;
  // q_x(z) = sum_d c_d z^d with c_d = (-1)^{ell-d} e_{ell-d}(x).
  const std::vector<Complex> e = elementary_symmetric_all(x.anchors());
  std::vector<Complex> c(static_cast<std::size_t>(ell) + 1);
  for (int d = 0; d <= ell; ++d) c[static_cast<std::size_t>(d)] = ((ell - d) % 2 ? -1.0 : 1.0) * e[static_cast<std::size_t>(ell - d)];
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, rank);
  for (int k = 0; k < rank; ++k) {
    double scale = 0.0;
    for (int d = 0; d <= ell; ++d) {
      const double lf = 0.5 * std::lgamma(static_cast<double>(d + k) + 1.0);
      scale = std::max(scale, lf);
    }
    for (int d = 0; d <= ell; ++d) {
      const double lf = 0.5 * std::lgamma(static_cast<double>(d + k) + 1.0);
      a(d + k, k) = c[static_cast<std::size_t>(d)] * std::exp(lf - scale);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, rank);
  ProjectionBasis b;
  b.n_ = n;
  b.rank_ = rank;
  b.b_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(rank));
  for (int j = 0; j < rank; ++j) {
    for (int m = 0; m < n; ++m) b.b_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(m)] = q(m, j);
  }
  return b;
}

Complex ProjectionBasis::kernel(Complex z, Complex w) const {
  std::vector<Complex> pz(static_cast<std::size_t>(n_)), pw(static_cast<std::size_t>(n_));
  Complex a = 1.0, c = 1.0;
  for (int m = 0; m < n_; ++m) {
    if (m > 0) {
      const double s = std::sqrt(static_cast<double>(m));
      a *= z / s;
      c *= w / s;
    }
    pz[static_cast<std::size_t>(m)] = a;
    pw[static_cast<std::size_t>(m)] = c;
  }
  Complex k = 0.0;
  for (int j = 0; j < rank_; ++j) {
    Complex sz = 0.0, sw = 0.0;
    for (int m = 0; m < n_; ++m) {
      sz += coefficient(m, j) * pz[static_cast<std::size_t>(m)];
      sw += coefficient(m, j) * pw[static_cast<std::size_t>(m)];
    }
    k += sz * std::conj(sw);
  }
  return k;
}

Configuration sample_projection(const ProjectionBasis& basis, RngStream& rng, const ProjectionSamplerOptions& options) {
  const std::size_t n = static_cast<std::size_t>(basis.n_);
  const std::size_t rank = static_cast<std::size_t>(basis.rank_);
  const std::size_t stride = rank;
  // Row-major complement basis W (n x R), split into real and imaginary parts.
  std::vector<double> wr(n * stride), wi(n * stride);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t j = 0; j < rank; ++j) {
      const Complex v = basis.b_[j * n + m];
      wr[m * stride + j] = v.real();
      wi[m * stride + j] = v.imag();
    }
  }
  std::vector<double> inv_sqrt(n + 1);
  for (std::size_t m = 1; m <= n; ++m) inv_sqrt[m] = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<double> vr(n), vi(n), yr(rank), yi(rank), sr(n), si(n), hr(rank), hi(rank);
  std::vector<ComplexPoint> points;
  points.reserve(rank);

  for (std::size_t R = rank; R >= 1; --R) {
    Complex z;
    std::size_t trials = 0;
    while (true) {
      if (++trials > options.max_trials_per_point) {
        throw RejectionBudgetExceeded("projection sampler: rejection budget exceeded");
      }
      // Proposal: uniform index, Gamma(m+1) squared radius, uniform angle.
      auto m0 = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      if (m0 >= n) m0 = n - 1;
      const double t = rng.gamma(static_cast<double>(m0) + 1.0);
      const double angle = 2.0 * std::numbers::pi * rng.uniform();
      const double rad = std::sqrt(t);
      // v_m = exp(-t/2) conj(z)^m / sqrt(m!)
      const double cr = rad * std::cos(angle), ci = -rad * std::sin(angle);
      double ar = std::exp(-0.5 * t), ai = 0.0;
      double b = 0.0;
      for (std::size_t m = 0; m < n; ++m) {
        if (m > 0) {
          const double f = inv_sqrt[m];
          const double nr = (ar * cr - ai * ci) * f;
          const double ni = (ar * ci + ai * cr) * f;
          ar = nr;
          ai = ni;
        }
        vr[m] = ar;
        vi[m] = ai;
        b += ar * ar + ai * ai;
      }
      const double cutoff = kBandCutoff * b;
      std::size_t lo = 0, hi = n;
      while (lo < n && vr[lo] * vr[lo] + vi[lo] * vi[lo] < cutoff) ++lo;
      while (hi > lo && vr[hi - 1] * vr[hi - 1] + vi[hi - 1] * vi[hi - 1] < cutoff) --hi;
      // y = W^* v over the band.
      std::fill(yr.begin(), yr.begin() + static_cast<std::ptrdiff_t>(R), 0.0);
      std::fill(yi.begin(), yi.begin() + static_cast<std::ptrdiff_t>(R), 0.0);
      for (std::size_t m = lo; m < hi; ++m) {
        const double pr = vr[m], pi = vi[m];
        const double* rr = &wr[m * stride];
        const double* ri = &wi[m * stride];
        double* __restrict__ outr = yr.data();
        double* __restrict__ outi = yi.data();
        for (std::size_t j = 0; j < R; ++j) {
          outr[j] += rr[j] * pr + ri[j] * pi;
          outi[j] += rr[j] * pi - ri[j] * pr;
        }
      }
      double a = 0.0;
      for (std::size_t j = 0; j < R; ++j) a += yr[j] * yr[j] + yi[j] * yi[j];
      if (rng.uniform() * b < a) {
        z = Complex(rad * std::cos(angle), rad * std::sin(angle));
        // Unit vector u = y / |y| in the coordinates of W.
        const double norm = std::sqrt(a);
        for (std::size_t j = 0; j < R; ++j) {
          yr[j] /= norm;
          yi[j] /= norm;
        }
        break;
      }
    }
    points.push_back(z);
    if (R == 1) break;
    // Householder reflection H with H u = alpha e_{R-1}; keep the first R-1 columns of W H.
    const std::size_t last = R - 1;
    const double ul = std::hypot(yr[last], yi[last]);
    const double pr = ul > 0.0 ? yr[last] / ul : 1.0;
    const double pi = ul > 0.0 ? yi[last] / ul : 0.0;
    for (std::size_t j = 0; j < R; ++j) {
      hr[j] = yr[j];
      hi[j] = yi[j];
    }
    // alpha = -phase(u_last); v_h = u - alpha e_last.
    hr[last] += pr;
    hi[last] += pi;
    double hn = 0.0;
    for (std::size_t j = 0; j < R; ++j) hn += hr[j] * hr[j] + hi[j] * hi[j];
    const double beta = 2.0 / hn;
    for (std::size_t m = 0; m < n; ++m) {
      const double* rr = &wr[m * stride];
      const double* ri = &wi[m * stride];
      double accr = 0.0, acci = 0.0;
      for (std::size_t j = 0; j < R; ++j) {
        accr += rr[j] * hr[j] - ri[j] * hi[j];
        acci += rr[j] * hi[j] + ri[j] * hr[j];
      }
      sr[m] = beta * accr;
      si[m] = beta * acci;
    }
    for (std::size_t m = 0; m < n; ++m) {
      double* __restrict__ rr = &wr[m * stride];
      double* __restrict__ ri = &wi[m * stride];
      const double a_r = sr[m], a_i = si[m];
      for (std::size_t j = 0; j < last; ++j) {
        // W_mj -= s_m conj(h_j)
        rr[j] -= a_r * hr[j] + a_i * hi[j];
        ri[j] -= a_i * hr[j] - a_r * hi[j];
      }
    }
  }
  return Configuration(std::move(points));
}

Configuration sample_ginibre_n(int n, RngStream& rng, const ProjectionSamplerOptions& options) {
  return sample_projection(ProjectionBasis::ginibre(n), rng, options);
}

Configuration sample_palm_ginibre_n(int n, const PalmAnchor& x, RngStream& rng,
                                    const ProjectionSamplerOptions& options) {
  return sample_projection(ProjectionBasis::palm(n, x), rng, options);
}

}  // namespace ginibre
