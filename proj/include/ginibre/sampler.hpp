#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "ginibre/core.hpp"

namespace ginibre {

// Reproducible random stream keyed by (seed, stream_id) and an optional
// chain of substream indices.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Independent child stream; depends only on this stream's key and index.
  RngStream substream(std::uint64_t index) const;

  double uniform();             // [0, 1)
  double gamma(double shape);   // Gamma(shape, rate 1)
  std::mt19937_64& engine() { return engine_; }

 private:
  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::vector<std::uint32_t> key);
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::vector<std::uint32_t> key_;
  std::mt19937_64 engine_;
};

// Largest Gamma index drawn for a radial sample complete up to t_max.
std::size_t radial_truncation_index(double t_max);

// Squared moduli of the Palm-at-origin Ginibre process on [0, t_max]:
// independent Y_i ~ Gamma(i, 1), i = ell+1 .. radial_truncation_index(t_max).
RadialConfiguration sample_radial_palm(int ell, double t_max, RngStream& rng);

// Y_1 .. Y_{i_max} drawn in index order; coupling helper.
std::vector<double> kostlan_draws(std::size_t i_max, RngStream& rng);
// {Y_i : i > ell, Y_i <= t_max} from a shared draw vector.
RadialConfiguration eta_from_draws(std::span<const double> draws, int ell, double t_max);

// Radial laws of rotation-invariant DPPs with kernel sum_j |a_j|^2 (z conj w)^j
// against a radial measure with Lebesgue density g(|z|).
class RadialDensityFamily {
 public:
  virtual ~RadialDensityFamily() = default;
  // log of pi * integral over (0, inf) of t^j g(sqrt t) dt.
  virtual double log_moment(std::size_t j) const = 0;
  // Draw from the density proportional to t^j g(sqrt t).
  virtual double draw(std::size_t j, RngStream& rng) const = 0;
};

// g(r) = exp(-r^2) / pi: the j-th law is Gamma(j+1, 1).
class GaussianRadialFamily final : public RadialDensityFamily {
 public:
  double log_moment(std::size_t j) const override;
  double draw(std::size_t j, RngStream& rng) const override;
};

// Independent Z_j with densities |a_j|^2 pi t^j g(sqrt t); zero coefficients
// contribute no point. Each nonzero density must integrate to 1 (relative
// 1e-9), otherwise InvalidArgument. With a horizon, points beyond it are dropped.
RadialConfiguration sample_radial_dpp(std::span<const double> coeff_sq, const RadialDensityFamily& family,
                                      RngStream& rng, std::optional<double> horizon = std::nullopt);
// Same with log |a_j|^2 (-infinity for zero coefficients).
RadialConfiguration sample_radial_dpp_log(std::span<const double> log_coeff_sq, const RadialDensityFamily& family,
                                          RngStream& rng, std::optional<double> horizon = std::nullopt);

struct ProjectionSamplerOptions {
  std::size_t max_trials_per_point = 1'000'000;
};

// Orthonormal basis of the range of a rank-N projection kernel inside
// span(phi_0..phi_{n-1}), phi_m(z) = z^m / sqrt(m!), stored column-major as
// coefficient vectors: K(z,w) = sum_j psi_j(z) conj(psi_j(w)), psi_j = sum_m B_mj phi_m.
class ProjectionBasis {
 public:
  static ProjectionBasis ginibre(int n);
  // Range of K^n_x: polynomials q_x(z) p(z), deg p < n - ell.
  static ProjectionBasis palm(int n, const PalmAnchor& x);

  int dimension() const { return n_; }
  int rank() const { return rank_; }
  Complex coefficient(int m, int j) const { return b_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(m)]; }
  // Kernel in the analytic gauge.
  Complex kernel(Complex z, Complex w) const;

 private:
  int n_ = 0;
  int rank_ = 0;
  std::vector<Complex> b_;
  friend Configuration sample_projection(const ProjectionBasis&, RngStream&, const ProjectionSamplerOptions&);
};

// Sequential sampling of the projection DPP with the given basis.
Configuration sample_projection(const ProjectionBasis& basis, RngStream& rng,
                                const ProjectionSamplerOptions& options = {});

// n points of the finite Ginibre ensemble G^n.
Configuration sample_ginibre_n(int n, RngStream& rng, const ProjectionSamplerOptions& options = {});

// n - ell points of the reduced Palm measure of G^n at x.
Configuration sample_palm_ginibre_n(int n, const PalmAnchor& x, RngStream& rng,
                                    const ProjectionSamplerOptions& options = {});

// Runs fn(stream, index) for index in [0, count) with stream = base.substream(index),
// spread over `workers` threads. Results are returned in index order, so the
// output does not depend on the worker count.
template <class T>
std::vector<T> monte_carlo(std::size_t count, const RngStream& base, std::size_t workers,
                           const std::function<T(RngStream&, std::size_t)>& fn) {
  std::vector<T> out(count);
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      RngStream s = base.substream(i);
      out[i] = fn(s, i);
    }
    return out;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) {
          RngStream s = base.substream(i);
          out[i] = fn(s, i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace ginibre
