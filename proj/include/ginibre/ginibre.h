/* C interface to the ginibre library.
 *
 * Every fallible function returns GINIBRE_OK or an error code; the message of
 * the most recent failure on the calling thread is available from
 * ginibre_last_error(). Objects are opaque handles released with the matching
 * *_free function. Strings returned through char** are released with
 * ginibre_string_free. */
#ifndef GINIBRE_H
#define GINIBRE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum ginibre_status {
  GINIBRE_OK = 0,
  GINIBRE_ERR_INVALID_ARGUMENT = 1,
  GINIBRE_ERR_PALM_DEGENERACY = 2,
  GINIBRE_ERR_DIMENSION_MISMATCH = 3,
  GINIBRE_ERR_CONVERGENCE = 4,
  GINIBRE_ERR_BUDGET = 5,
  GINIBRE_ERR_REJECTION_BUDGET = 6,
  GINIBRE_ERR_ANCHOR_COLLISION = 7,
  GINIBRE_ERR_QUADRATURE = 8,
  GINIBRE_ERR_IO = 9,
  GINIBRE_ERR_INTERNAL = 100
};

typedef struct ginibre_anchor ginibre_anchor;
typedef struct ginibre_config ginibre_config;
typedef struct ginibre_radial ginibre_radial;
typedef struct ginibre_config_batch ginibre_config_batch;
typedef struct ginibre_radial_batch ginibre_radial_batch;
typedef struct ginibre_kernel ginibre_kernel;
typedef struct ginibre_rn_result ginibre_rn_result;

typedef struct ginibre_estimate {
  double mean;
  double variance;
  double std_error;
  size_t n_samples;
  uint64_t seed;
} ginibre_estimate;

typedef struct ginibre_expectation {
  ginibre_estimate mc;
  double exact;
  size_t collisions_resampled;
} ginibre_expectation;

const char* ginibre_last_error(void);
const char* ginibre_status_name(int status);
void ginibre_string_free(char* s);

/* Anchors. re_im holds interleaved (re, im) pairs. */
int ginibre_anchor_create(const double* re_im, size_t ell, ginibre_anchor** out);
/* Semicolon-separated tokens such as "0.5-1.2i;0+0i". */
int ginibre_anchor_parse(const char* text, ginibre_anchor** out);
size_t ginibre_anchor_ell(const ginibre_anchor* x);
int ginibre_anchor_get(const ginibre_anchor* x, size_t i, double* re, double* im);
void ginibre_anchor_free(ginibre_anchor* x);

/* Configurations. */
int ginibre_config_create(const double* re_im, size_t count, ginibre_config** out);
/* JSON array of [re, im] pairs or a sample_id,re,im CSV (first sample). */
int ginibre_config_read_file(const char* path, ginibre_config** out);
size_t ginibre_config_size(const ginibre_config* c);
int ginibre_config_get(const ginibre_config* c, size_t i, double* re, double* im);
void ginibre_config_free(ginibre_config* c);

size_t ginibre_radial_size(const ginibre_radial* r);
int ginibre_radial_get(const ginibre_radial* r, size_t i, double* radius_sq);
void ginibre_radial_free(ginibre_radial* r);

/* Batches own their members; ginibre_*_batch_get returns a borrowed pointer. */
size_t ginibre_config_batch_size(const ginibre_config_batch* b);
const ginibre_config* ginibre_config_batch_get(const ginibre_config_batch* b, size_t i);
void ginibre_config_batch_free(ginibre_config_batch* b);
size_t ginibre_radial_batch_size(const ginibre_radial_batch* b);
const ginibre_radial* ginibre_radial_batch_get(const ginibre_radial_batch* b, size_t i);
void ginibre_radial_batch_free(ginibre_radial_batch* b);

/* Samplers. Sample i of a batch uses the stream (seed, 0) -> substream i, so
 * output does not depend on the number of workers. */
int ginibre_sample_ginibre_batch(int n, size_t samples, uint64_t seed, size_t workers, ginibre_config_batch** out);
int ginibre_sample_palm_batch(int n, const ginibre_anchor* x, size_t samples, uint64_t seed, size_t workers,
                              ginibre_config_batch** out);
int ginibre_sample_radial_batch(int ell, double t_max, size_t samples, uint64_t seed, size_t workers,
                                ginibre_radial_batch** out);

/* Kernels, from the JSON form
 * {"family": "infinite"|"truncated"|"palm"|"origin_palm", "n": N, "ell": L,
 *  "anchors": [[re, im], ...], "gauge": "analytic"|"lebesgue"}. */
int ginibre_kernel_from_json(const char* json, ginibre_kernel** out);
int ginibre_kernel_eval(const ginibre_kernel* k, double z_re, double z_im, double w_re, double w_im, double* out_re,
                        double* out_im);
void ginibre_kernel_free(ginibre_kernel* k);

/* Statistics. */
int ginibre_f_t(const ginibre_radial* r, double T, double* out);
/* f_T over shared eta_ell samples complete up to max(T); one estimate and
 * ell_hat per entry of T. */
int ginibre_ft_experiment(int ell, const double* T, size_t n_T, size_t samples, uint64_t seed, size_t workers,
                          ginibre_estimate* estimates, int* ell_hats);

/* Normalizations. */
int ginibre_z_of(const ginibre_anchor* x, double* out);
int ginibre_z_ratio(const ginibre_anchor* x, const ginibre_anchor* y, double* out);
int ginibre_partition_ratio_exact(int n, const ginibre_anchor* x, const ginibre_anchor* y, double* out);

/* Radon-Nikodym density with shells b_r = 2^r. */
int ginibre_rn_density(const ginibre_config* c, const ginibre_anchor* x, const ginibre_anchor* y, int r_max,
                       double tol, ginibre_rn_result** out);
int ginibre_rn_result_summary(const ginibre_rn_result* r, double* density, int* converged, int* r_stop,
                              double* z_ratio);
size_t ginibre_rn_result_shell_count(const ginibre_rn_result* r);
int ginibre_rn_result_shell(const ginibre_rn_result* r, size_t i, int* shell, double* b_r, double* delta_log,
                            double* cum_log);
void ginibre_rn_result_free(ginibre_rn_result* r);
int ginibre_expectation_consistency(int n, const ginibre_anchor* x, const ginibre_anchor* y, size_t samples,
                                    uint64_t seed, size_t workers, ginibre_expectation* out);

/* Identity suite. only may be NULL; the report is JSON. */
int ginibre_verify(const char* only, double perturbation, char** report_json, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
