#include "ginibre/ginibre.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>

#include "ginibre/errors.hpp"
#include "ginibre/io.hpp"
#include "ginibre/kernel.hpp"
#include "ginibre/rn_density.hpp"
#include "ginibre/sampler.hpp"
#include "ginibre/statistics.hpp"
#include "ginibre/verify.hpp"

struct ginibre_anchor {
  ginibre::PalmAnchor value;
};
struct ginibre_config {
  ginibre::Configuration value;
};
struct ginibre_radial {
  ginibre::RadialConfiguration value;
};
struct ginibre_config_batch {
  std::vector<ginibre_config> items;
};
struct ginibre_radial_batch {
  std::vector<ginibre_radial> items;
};
struct ginibre_kernel {
  ginibre::KernelSpec value;
};
struct ginibre_rn_result {
  ginibre::RnDensityResult value;
};

namespace {

thread_local std::string g_last_error;

template <class F>
int guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return GINIBRE_OK;
  } catch (const ginibre::Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GINIBRE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return GINIBRE_ERR_INTERNAL;
  }
}

template <class T>
void require(const T* p, const char* what) {
  if (!p) throw ginibre::InvalidArgument(std::string(what) + " must not be NULL");
}

std::vector<ginibre::Complex> interleaved(const double* re_im, std::size_t count) {
  if (count > 0) require(re_im, "re_im");
  std::vector<ginibre::Complex> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = {re_im[2 * i], re_im[2 * i + 1]};
  return v;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill_estimate(const ginibre::EstimatorResult& r, ginibre_estimate* out) {
  out->mean = r.mean;
  out->variance = r.variance;
  out->std_error = r.std_error;
  out->n_samples = r.n_samples;
  out->seed = r.seed;
}

}  // namespace

extern "C" {

const char* ginibre_last_error(void) { return g_last_error.c_str(); }

const char* ginibre_status_name(int status) {
  if (status == GINIBRE_OK) return "OK";
  if (status == GINIBRE_ERR_INTERNAL) return "Internal";
  if (status >= 1 && status <= 9) return ginibre::error_code_name(static_cast<ginibre::ErrorCode>(status));
  return "Unknown";
}

void ginibre_string_free(char* s) { std::free(s); }

int ginibre_anchor_create(const double* re_im, size_t ell, ginibre_anchor** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ginibre_anchor{ginibre::PalmAnchor(interleaved(re_im, ell))};
  });
}

int ginibre_anchor_parse(const char* text, ginibre_anchor** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new ginibre_anchor{ginibre::parse_anchor_list(text)};
  });
}

size_t ginibre_anchor_ell(const ginibre_anchor* x) { return x ? x->value.ell() : 0; }

int ginibre_anchor_get(const ginibre_anchor* x, size_t i, double* re, double* im) {
  return guarded([&] {
    require(x, "anchor");
    if (i >= x->value.ell()) throw ginibre::InvalidArgument("anchor index out of range");
    if (re) *re = x->value[i].real();
    if (im) *im = x->value[i].imag();
  });
}

void ginibre_anchor_free(ginibre_anchor* x) { delete x; }

int ginibre_config_create(const double* re_im, size_t count, ginibre_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ginibre_config{ginibre::Configuration(interleaved(re_im, count))};
  });
}

int ginibre_config_read_file(const char* path, ginibre_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new ginibre_config{ginibre::read_configuration_file(path)};
  });
}

size_t ginibre_config_size(const ginibre_config* c) { return c ? c->value.size() : 0; }

int ginibre_config_get(const ginibre_config* c, size_t i, double* re, double* im) {
  return guarded([&] {
    require(c, "config");
    if (i >= c->value.size()) throw ginibre::InvalidArgument("configuration index out of range");
    if (re) *re = c->value[i].real();
    if (im) *im = c->value[i].imag();
  });
}

void ginibre_config_free(ginibre_config* c) { delete c; }

size_t ginibre_radial_size(const ginibre_radial* r) { return r ? r->value.size() : 0; }

int ginibre_radial_get(const ginibre_radial* r, size_t i, double* radius_sq) {
  return guarded([&] {
    require(r, "radial");
    require(radius_sq, "radius_sq");
    if (i >= r->value.size()) throw ginibre::InvalidArgument("radial index out of range");
    *radius_sq = r->value[i];
  });
}

void ginibre_radial_free(ginibre_radial* r) { delete r; }

size_t ginibre_config_batch_size(const ginibre_config_batch* b) { return b ? b->items.size() : 0; }
const ginibre_config* ginibre_config_batch_get(const ginibre_config_batch* b, size_t i) {
  return (b && i < b->items.size()) ? &b->items[i] : nullptr;
}
void ginibre_config_batch_free(ginibre_config_batch* b) { delete b; }
size_t ginibre_radial_batch_size(const ginibre_radial_batch* b) { return b ? b->items.size() : 0; }
const ginibre_radial* ginibre_radial_batch_get(const ginibre_radial_batch* b, size_t i) {
  return (b && i < b->items.size()) ? &b->items[i] : nullptr;
}
void ginibre_radial_batch_free(ginibre_radial_batch* b) { delete b; }

int ginibre_sample_ginibre_batch(int n, size_t samples, uint64_t seed, size_t workers, ginibre_config_batch** out) {
  return guarded([&] {
    require(out, "out");
    const ginibre::ProjectionBasis basis = ginibre::ProjectionBasis::ginibre(n);
    const std::function<ginibre::Configuration(ginibre::RngStream&, std::size_t)> fn =
        [&](ginibre::RngStream& s, std::size_t) { return ginibre::sample_projection(basis, s); };
    auto v = ginibre::monte_carlo<ginibre::Configuration>(samples, ginibre::RngStream(seed, 0), workers, fn);
    auto* b = new ginibre_config_batch;
    for (auto& c : v) b->items.push_back({std::move(c)});
    *out = b;
  });
}

int ginibre_sample_palm_batch(int n, const ginibre_anchor* x, size_t samples, uint64_t seed, size_t workers,
                              ginibre_config_batch** out) {
  return guarded([&] {
    require(x, "anchor");
    require(out, "out");
    const ginibre::ProjectionBasis basis = ginibre::ProjectionBasis::palm(n, x->value);
    const std::function<ginibre::Configuration(ginibre::RngStream&, std::size_t)> fn =
        [&](ginibre::RngStream& s, std::size_t) { return ginibre::sample_projection(basis, s); };
    auto v = ginibre::monte_carlo<ginibre::Configuration>(samples, ginibre::RngStream(seed, 0), workers, fn);
    auto* b = new ginibre_config_batch;
    for (auto& c : v) b->items.push_back({std::move(c)});
    *out = b;
  });
}

int ginibre_sample_radial_batch(int ell, double t_max, size_t samples, uint64_t seed, size_t workers,
                                ginibre_radial_batch** out) {
  return guarded([&] {
    require(out, "out");
    const std::function<ginibre::RadialConfiguration(ginibre::RngStream&, std::size_t)> fn =
        [&](ginibre::RngStream& s, std::size_t) { return ginibre::sample_radial_palm(ell, t_max, s); };
    auto v = ginibre::monte_carlo<ginibre::RadialConfiguration>(samples, ginibre::RngStream(seed, 0), workers, fn);
    auto* b = new ginibre_radial_batch;
    for (auto& r : v) b->items.push_back({std::move(r)});
    *out = b;
  });
}

int ginibre_kernel_from_json(const char* json, ginibre_kernel** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new ginibre_kernel{ginibre::kernel_spec_from_json(json)};
  });
}

int ginibre_kernel_eval(const ginibre_kernel* k, double z_re, double z_im, double w_re, double w_im, double* out_re,
                        double* out_im) {
  return guarded([&] {
    require(k, "kernel");
    const ginibre::Complex v = ginibre::eval(k->value, {z_re, z_im}, {w_re, w_im});
    if (out_re) *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

void ginibre_kernel_free(ginibre_kernel* k) { delete k; }

int ginibre_f_t(const ginibre_radial* r, double T, double* out) {
  return guarded([&] {
    require(r, "radial");
    require(out, "out");
    *out = ginibre::f_T(r->value, T);
  });
}

int ginibre_ft_experiment(int ell, const double* T, size_t n_T, size_t samples, uint64_t seed, size_t workers,
                          ginibre_estimate* estimates, int* ell_hats) {
  return guarded([&] {
    require(T, "T");
    require(estimates, "estimates");
    if (n_T == 0) throw ginibre::InvalidArgument("at least one T is required");
    const double t_max = *std::max_element(T, T + n_T);
    const std::function<ginibre::RadialConfiguration(ginibre::RngStream&, std::size_t)> fn =
        [&](ginibre::RngStream& s, std::size_t) { return ginibre::sample_radial_palm(ell, t_max, s); };
    const auto v = ginibre::monte_carlo<ginibre::RadialConfiguration>(samples, ginibre::RngStream(seed, 0), workers, fn);
    for (std::size_t k = 0; k < n_T; ++k) {
      const auto d = ginibre::ell_detector(v, T[k], seed);
      fill_estimate(d.estimate, &estimates[k]);
      if (ell_hats) ell_hats[k] = d.ell_hat;
    }
  });
}

int ginibre_z_of(const ginibre_anchor* x, double* out) {
  return guarded([&] {
    require(x, "anchor");
    require(out, "out");
    *out = ginibre::z_of(x->value);
  });
}

int ginibre_z_ratio(const ginibre_anchor* x, const ginibre_anchor* y, double* out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    *out = ginibre::z_ratio(x->value, y->value);
  });
}

int ginibre_partition_ratio_exact(int n, const ginibre_anchor* x, const ginibre_anchor* y, double* out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    *out = ginibre::partition_ratio_exact(n, x->value, y->value);
  });
}

int ginibre_rn_density(const ginibre_config* c, const ginibre_anchor* x, const ginibre_anchor* y, int r_max,
                       double tol, ginibre_rn_result** out) {
  return guarded([&] {
    require(c, "config");
    require(x, "x");
    require(y, "y");
    require(out, "out");
    *out = new ginibre_rn_result{ginibre::rn_density(c->value, x->value, y->value, r_max, tol)};
  });
}

int ginibre_rn_result_summary(const ginibre_rn_result* r, double* density, int* converged, int* r_stop,
                              double* z_ratio) {
  return guarded([&] {
    require(r, "result");
    if (density) *density = r->value.density;
    if (converged) *converged = r->value.diag.converged ? 1 : 0;
    if (r_stop) *r_stop = r->value.diag.r_stop;
    if (z_ratio) *z_ratio = r->value.z_ratio;
  });
}

size_t ginibre_rn_result_shell_count(const ginibre_rn_result* r) { return r ? r->value.diag.log_increments.size() : 0; }

int ginibre_rn_result_shell(const ginibre_rn_result* r, size_t i, int* shell, double* b_r, double* delta_log,
                            double* cum_log) {
  return guarded([&] {
    require(r, "result");
    const auto& inc = r->value.diag.log_increments;
    if (i >= inc.size()) throw ginibre::InvalidArgument("shell index out of range");
    double cum = 0.0;
    for (std::size_t k = 0; k <= i; ++k) cum += inc[k].delta_log;
    if (shell) *shell = inc[i].r;
    if (b_r) *b_r = ginibre::ShellRadii()(inc[i].r);
    if (delta_log) *delta_log = inc[i].delta_log;
    if (cum_log) *cum_log = cum;
  });
}

void ginibre_rn_result_free(ginibre_rn_result* r) { delete r; }

int ginibre_expectation_consistency(int n, const ginibre_anchor* x, const ginibre_anchor* y, size_t samples,
                                    uint64_t seed, size_t workers, ginibre_expectation* out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    const auto r = ginibre::expectation_consistency(n, x->value, y->value, samples, ginibre::RngStream(seed, 0), workers);
    fill_estimate(r.mc, &out->mc);
    out->exact = r.exact;
    out->collisions_resampled = r.collisions_resampled;
  });
}

int ginibre_verify(const char* only, double perturbation, char** report_json, int* all_pass) {
  return guarded([&] {
    ginibre::VerifyOptions opt;
    if (only) opt.only = std::string(only);
    opt.perturbation = perturbation;
    const auto report = ginibre::run_verify(opt);
    if (report_json) *report_json = dup_string(report.to_json());
    if (all_pass) *all_pass = report.all_pass ? 1 : 0;
  });
}

}  // extern "C"
