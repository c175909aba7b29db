// Command-line driver over the C interface.
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ginibre/ginibre.h"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

enum Exit { kOk = 0, kVerifyFail = 1, kUsage = 2, kRuntime = 3, kSingular = 4 };

struct Failure {
  int exit_code;
  std::string message;
};

void check(int status, const char* what) {
  if (status == GINIBRE_OK) return;
  std::string msg = std::string(what) + ": " + ginibre_status_name(status) + ": " + ginibre_last_error();
  if (status == GINIBRE_ERR_DIMENSION_MISMATCH) {
    throw Failure{kSingular, "singular pair: " + msg};
  }
  throw Failure{status == GINIBRE_ERR_INVALID_ARGUMENT ? kUsage : kRuntime, msg};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Anchor = std::unique_ptr<ginibre_anchor, Deleter<ginibre_anchor, ginibre_anchor_free>>;
using Config = std::unique_ptr<ginibre_config, Deleter<ginibre_config, ginibre_config_free>>;
using ConfigBatch = std::unique_ptr<ginibre_config_batch, Deleter<ginibre_config_batch, ginibre_config_batch_free>>;
using RadialBatch = std::unique_ptr<ginibre_radial_batch, Deleter<ginibre_radial_batch, ginibre_radial_batch_free>>;
using RnResult = std::unique_ptr<ginibre_rn_result, Deleter<ginibre_rn_result, ginibre_rn_result_free>>;

// Shortest round-trip decimal form, so repeated runs are byte-identical.
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Writes to a file, or stdout when the path is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Failure{kRuntime, "cannot open '" + path + "' for writing"};
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_json(const ordered_json& j, const std::string& path) {
  Output out(path);
  out.stream() << j.dump(2) << "\n";
}

Anchor parse_anchor(const std::string& text) {
  ginibre_anchor* a = nullptr;
  check(ginibre_anchor_parse(text.c_str(), &a), "anchors");
  return Anchor(a);
}

struct Globals {
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::string out;
};

void write_config_batch(const ginibre_config_batch* batch, std::ostream& os) {
  os << "sample_id,re,im\n";
  for (std::size_t s = 0; s < ginibre_config_batch_size(batch); ++s) {
    const ginibre_config* c = ginibre_config_batch_get(batch, s);
    for (std::size_t i = 0; i < ginibre_config_size(c); ++i) {
      double re = 0, im = 0;
      check(ginibre_config_get(c, i, &re, &im), "config");
      os << s << ',' << num(re) << ',' << num(im) << '\n';
    }
  }
}

int run_sample_ginibre(const Globals& g, int n, std::size_t samples) {
  ginibre_config_batch* b = nullptr;
  check(ginibre_sample_ginibre_batch(n, samples, g.seed, g.workers, &b), "sample ginibre");
  ConfigBatch batch(b);
  Output out(g.out);
  write_config_batch(batch.get(), out.stream());
  return kOk;
}

int run_sample_palm(const Globals& g, int n, const std::string& anchors, std::size_t samples) {
  Anchor x = parse_anchor(anchors);
  ginibre_config_batch* b = nullptr;
  check(ginibre_sample_palm_batch(n, x.get(), samples, g.seed, g.workers, &b), "sample palm");
  ConfigBatch batch(b);
  Output out(g.out);
  write_config_batch(batch.get(), out.stream());
  return kOk;
}

int run_sample_radial(const Globals& g, int ell, double tmax, std::size_t samples) {
  ginibre_radial_batch* b = nullptr;
  check(ginibre_sample_radial_batch(ell, tmax, samples, g.seed, g.workers, &b), "sample radial");
  RadialBatch batch(b);
  Output out(g.out);
  std::ostream& os = out.stream();
  os << "sample_id,radius_sq\n";
  for (std::size_t s = 0; s < ginibre_radial_batch_size(batch.get()); ++s) {
    const ginibre_radial* r = ginibre_radial_batch_get(batch.get(), s);
    for (std::size_t i = 0; i < ginibre_radial_size(r); ++i) {
      double v = 0;
      check(ginibre_radial_get(r, i, &v), "radial");
      os << s << ',' << num(v) << '\n';
    }
  }
  return kOk;
}

int run_ft(const Globals& g, int ell, const std::vector<double>& T, std::size_t samples, const std::string& summary) {
  std::vector<ginibre_estimate> est(T.size());
  std::vector<int> ell_hat(T.size());
  check(ginibre_ft_experiment(ell, T.data(), T.size(), samples, g.seed, g.workers, est.data(), ell_hat.data()), "ft");
  {
    Output out(g.out);
    std::ostream& os = out.stream();
    os << "T,ell,n_samples,mean_fT,var_fT,std_err,ell_hat\n";
    for (std::size_t k = 0; k < T.size(); ++k) {
      os << num(T[k]) << ',' << ell << ',' << est[k].n_samples << ',' << num(est[k].mean) << ','
         << num(est[k].variance) << ',' << num(est[k].std_error) << ',' << ell_hat[k] << '\n';
    }
  }
  ordered_json j;
  j["ell"] = ell;
  j["n_samples"] = samples;
  j["seed"] = g.seed;
  j["rows"] = ordered_json::array();
  std::size_t largest = 0;
  for (std::size_t k = 0; k < T.size(); ++k) {
    if (T[k] > T[largest]) largest = k;
    j["rows"].push_back({{"T", T[k]},
                         {"mean_fT", est[k].mean},
                         {"var_fT", est[k].variance},
                         {"std_err", est[k].std_error},
                         {"ell_hat", ell_hat[k]}});
  }
  j["ell_hat"] = ell_hat[largest];
  if (!summary.empty()) {
    write_json(j, summary);
  } else if (!g.out.empty()) {
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

struct RnArgs {
  std::string anchors_x, anchors_y, config_file, summary;
  int simulate_n = 0;
  int r_max = 12;
  double tol = 1e-3;
  bool check_expectation = false;
  int n = 32;
  std::size_t samples = 2000;
};

int run_rn(const Globals& g, const RnArgs& a) {
  Anchor x = parse_anchor(a.anchors_x);
  Anchor y = parse_anchor(a.anchors_y);
  if (ginibre_anchor_ell(x.get()) != ginibre_anchor_ell(y.get())) {
    throw Failure{kSingular, "singular pair: anchor sets have different sizes (" +
                                 std::to_string(ginibre_anchor_ell(x.get())) + " vs " +
                                 std::to_string(ginibre_anchor_ell(y.get())) +
                                 "); the Palm measures are mutually singular and no density exists"};
  }
  if (a.config_file.empty() == (a.simulate_n <= 0)) {
    throw Failure{kUsage, "rn: give exactly one of --config-file or --simulate-n"};
  }
  Config config;
  if (!a.config_file.empty()) {
    ginibre_config* c = nullptr;
    check(ginibre_config_read_file(a.config_file.c_str(), &c), "config-file");
    config.reset(c);
  } else {
    // One sample of the finite-n Palm process conditioned at y.
    ginibre_config_batch* b = nullptr;
    const int n_total = a.simulate_n + static_cast<int>(ginibre_anchor_ell(y.get()));
    check(ginibre_sample_palm_batch(n_total, y.get(), 1, g.seed, 1, &b), "simulate");
    ConfigBatch batch(b);
    const ginibre_config* c0 = ginibre_config_batch_get(batch.get(), 0);
    std::vector<double> re_im(2 * ginibre_config_size(c0));
    for (std::size_t i = 0; i < ginibre_config_size(c0); ++i) {
      check(ginibre_config_get(c0, i, &re_im[2 * i], &re_im[2 * i + 1]), "config");
    }
    ginibre_config* c = nullptr;
    check(ginibre_config_create(re_im.data(), ginibre_config_size(c0), &c), "config");
    config.reset(c);
  }

  ginibre_rn_result* r = nullptr;
  check(ginibre_rn_density(config.get(), x.get(), y.get(), a.r_max, a.tol, &r), "rn");
  RnResult result(r);
  double density = 0, z_ratio = 1;
  int converged = 0, r_stop = 0;
  check(ginibre_rn_result_summary(result.get(), &density, &converged, &r_stop, &z_ratio), "rn");
  {
    Output out(g.out);
    std::ostream& os = out.stream();
    os << "r,b_r,shell_delta_log,cum_log,density_partial\n";
    for (std::size_t i = 0; i < ginibre_rn_result_shell_count(result.get()); ++i) {
      int shell = 0;
      double b_r = 0, delta = 0, cum = 0;
      check(ginibre_rn_result_shell(result.get(), i, &shell, &b_r, &delta, &cum), "rn");
      os << shell << ',' << num(b_r) << ',' << num(delta) << ',' << num(cum) << ',' << num(std::exp(cum) / z_ratio)
         << '\n';
    }
  }
  ordered_json j;
  j["density"] = density;
  j["converged"] = converged != 0;
  j["r_stop"] = r_stop;
  j["z_ratio"] = z_ratio;
  if (a.check_expectation) {
    ginibre_expectation e{};
    check(ginibre_expectation_consistency(a.n, x.get(), y.get(), a.samples, g.seed, g.workers, &e), "check-expectation");
    const double dev = std::abs(e.mc.mean - e.exact);
    j["expectation"] = {{"n", a.n},
                        {"n_samples", e.mc.n_samples},
                        {"mc_mean", e.mc.mean},
                        {"std_error", e.mc.std_error},
                        {"exact", e.exact},
                        {"deviation_se", e.mc.std_error > 0 ? dev / e.mc.std_error : 0.0},
                        {"within_3se", dev <= 3.0 * e.mc.std_error},
                        {"collisions_resampled", e.collisions_resampled}};
  }
  if (!a.summary.empty()) {
    write_json(j, a.summary);
  } else if (!g.out.empty()) {
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

int run_verify(const std::optional<std::string>& only, const std::string& report, double perturbation) {
  char* json = nullptr;
  int all_pass = 0;
  check(ginibre_verify(only ? only->c_str() : nullptr, perturbation, &json, &all_pass), "verify");
  const std::string text(json);
  ginibre_string_free(json);
  const ordered_json j = ordered_json::parse(text);
  if (!report.empty()) write_json(j, report);
  for (const auto& c : j["checks"]) {
    std::printf("[%s] %s/%s error=%.3e tol=%.1e\n", c["pass"].get<bool>() ? "PASS" : "FAIL",
                c["block"].get<std::string>().c_str(), c["name"].get<std::string>().c_str(), c["error"].get<double>(),
                c["tolerance"].get<double>());
  }
  std::printf("%s\n", all_pass ? "all identities hold" : "identity check failed");
  return all_pass ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ginibre Palm measure experiments"};
  app.set_config("--config", "", "key=value file mirroring the command-line flags");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--workers", g.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output file (stdout when omitted)");

  std::function<int()> action;

  auto* sample = app.add_subcommand("sample", "draw configurations")->require_subcommand(1);
  std::size_t samples = 1;
  sample->add_option("--samples", samples, "number of samples")->capture_default_str();
  int n = 0;
  auto* s_gin = sample->add_subcommand("ginibre", "finite-n Ginibre ensemble");
  s_gin->add_option("--n", n, "number of points")->required();
  s_gin->callback([&] { action = [&] { return run_sample_ginibre(g, n, samples); }; });
  std::string anchors;
  auto* s_palm = sample->add_subcommand("palm", "finite-n Palm ensemble");
  s_palm->add_option("--n", n, "total number of points, anchors included")->required();
  s_palm->add_option("--anchors", anchors, "anchor list, e.g. \"0.5-1.2i;0+0i\"")->required();
  s_palm->callback([&] { action = [&] { return run_sample_palm(g, n, anchors, samples); }; });
  int ell = 0;
  double tmax = 0;
  auto* s_rad = sample->add_subcommand("radial", "squared moduli of the origin-Palm process");
  s_rad->add_option("--ell", ell, "number of origin anchors")->required()->check(CLI::NonNegativeNumber);
  s_rad->add_option("--tmax", tmax, "squared-radius horizon")->required();
  s_rad->callback([&] { action = [&] { return run_sample_radial(g, ell, tmax, samples); }; });

  auto* ft = app.add_subcommand("ft", "ell-detection experiment");
  std::vector<double> T;
  std::size_t ft_samples = 0;
  std::string ft_summary;
  ft->add_option("--ell", ell, "number of origin anchors")->required()->check(CLI::NonNegativeNumber);
  ft->add_option("--T", T, "radius scale (repeatable)")->required()->take_all();
  ft->add_option("--samples", ft_samples, "Monte Carlo samples")->required()->check(CLI::PositiveNumber);
  ft->add_option("--summary", ft_summary, "JSON summary path");
  ft->callback([&] { action = [&] { return run_ft(g, ell, T, ft_samples, ft_summary); }; });

  auto* rn = app.add_subcommand("rn", "Radon-Nikodym density between Palm measures");
  RnArgs ra;
  rn->add_option("--anchors-x", ra.anchors_x, "numerator anchors")->required();
  rn->add_option("--anchors-y", ra.anchors_y, "denominator anchors")->required();
  rn->add_option("--config-file", ra.config_file, "configuration (JSON or CSV)");
  rn->add_option("--simulate-n", ra.simulate_n, "simulate one finite-n Palm sample at y");
  rn->add_option("--r-max", ra.r_max, "largest shell index")->capture_default_str();
  rn->add_option("--tol", ra.tol, "convergence tolerance on shell increments")->capture_default_str();
  rn->add_flag("--check-expectation", ra.check_expectation, "Monte Carlo check of the partition ratio");
  rn->add_option("--n", ra.n, "free points for --check-expectation")->capture_default_str();
  rn->add_option("--samples", ra.samples, "samples for --check-expectation")->capture_default_str();
  rn->add_option("--summary", ra.summary, "JSON summary path");
  rn->callback([&] { action = [&] { return run_rn(g, ra); }; });

  auto* verify = app.add_subcommand("verify", "run the identity suite");
  std::optional<std::string> only;
  std::string report;
  double perturbation = 0.0;
  verify->add_option("--only", only, "run a single block");
  verify->add_option("--report", report, "JSON report path");
  verify->add_option("--inject-perturbation", perturbation, "relative perturbation applied to every check");
  verify->callback([&] { action = [&] { return run_verify(only, report, perturbation); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action();
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}
