#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaborcert/certify.hpp"
#include "gaborcert/config.hpp"
#include "gaborcert/error.hpp"
#include "gaborcert/framebound.hpp"
#include "gaborcert/lattice.hpp"
#include "gaborcert/randwin.hpp"
#include "gaborcert/report.hpp"

using namespace gaborcert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotCertified = 2;

// Flag values as typed; applied on top of the config file after parsing so
// that flags win.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::string config_path;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    std::string flag = "--" + key;
    for (char& c : flag)
      if (c == '_') c = '-';
    options.emplace_back(key, app->add_option(flag, values[key], help));
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) set_config_field(cfg, key, values.at(key));
    return cfg;
  }
};

void add_common(CLI::App* app, FlagSet& f) {
  f.add(app, "window", "bump | gevrey:N | char[:a:b] | oddbump | poly[:a:b] | csv:PATH | random[:SEED]");
  f.add(app, "alpha", "time step alpha");
  f.add(app, "beta", "frequency step beta");
  f.add(app, "out", "output file (stdout if omitted)");
  f.add(app, "seed", "seed for random windows");
  f.add(app, "workers", "worker threads");
  app->add_option("--config", f.config_path, "key = value config file");
}

void add_random_opts(CLI::App* app, FlagSet& f) {
  f.add(app, "dt", "Brownian path step");
  f.add(app, "quadrature_n", "window nodes on [0, 1]");
  f.add(app, "component_var", "variance of real and imaginary parts per unit time");
}

CertifyConfig certify_config(const RunConfig& cfg) {
  CertifyConfig c;
  c.samples_per_gap = cfg.samples_per_gap;
  c.delta_floor = cfg.delta_floor;
  c.extent = cfg.extent;
  c.hop_bound = cfg.hop_bound;
  c.core_grid = cfg.core_grid;
  c.sup_grid = cfg.sup_grid;
  return c;
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

int run_certify(const RunConfig& cfg, const std::string& profile_out) {
  const Window w = make_window(cfg.window, cfg);
  const FrameCertificate cert = certify_frame(cfg.alpha, cfg.beta, w, certify_config(cfg));
  emit(cfg.out, certificate_json(cert, cfg.seed).dump(2) + "\n");
  if (!profile_out.empty()) {
    if (!cert.hypotheses.density_below_one || !cert.hypotheses.alpha_below_support)
      throw ConfigError("--profile-out needs alpha*beta < 1 and alpha < b - a");
    const LatticeParams p = LatticeParams::make(cfg.alpha, cfg.beta);
    std::ostringstream os;
    write_profile_csv(os, scan_determinant(p, w, cfg.samples_per_gap));
    emit(profile_out, os.str());
  }
  if (!cert.certified()) std::cerr << "not certified: " << cert.reason << "\n";
  return cert.certified() ? kExitOk : kExitNotCertified;
}

int run_scan(const RunConfig& cfg) {
  const Window w = make_window(cfg.window, cfg);
  const std::vector<double> alphas = cfg.alpha_grid.empty() ? std::vector{cfg.alpha} : cfg.alpha_grid;
  const std::vector<double> betas = cfg.beta_grid.empty() ? std::vector{cfg.beta} : cfg.beta_grid;
  struct Point {
    double alpha, beta;
    std::string line;
  };
  std::vector<Point> points;
  for (double a : alphas)
    for (double b : betas) points.push_back({a, b, {}});

  const CertifyConfig ccfg = certify_config(cfg);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      Point& pt = points[i];
      std::string verdict, delta = "nan", sigma = "nan";
      if (!(pt.alpha * pt.beta < 1.0)) {
        verdict = "Skipped";
      } else {
        try {
          const FrameCertificate c = certify_frame(pt.alpha, pt.beta, w, ccfg);
          verdict = verdict_name(c.verdict);
          delta = format_double(c.delta);
          sigma = format_double(c.block_sigma_min);
        } catch (const std::exception& e) {
          verdict = "Error";
        }
      }
      pt.line = format_double(pt.alpha) + "," + format_double(pt.beta) + "," + verdict + "," +
                delta + "," + sigma + "\n";
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < cfg.workers; ++t) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();

  std::string text = "alpha,beta,verdict,delta,sigma_min\n";
  for (const Point& pt : points) text += pt.line;
  emit(cfg.out, text);
  return kExitOk;
}

int run_framebounds(const RunConfig& cfg, const std::string& summary_out) {
  const Window w = make_window(cfg.window, cfg);
  const LatticeParams p = LatticeParams::make(cfg.alpha, cfg.beta);
  const ColumnPolicy policy = cfg.policy == "any" ? ColumnPolicy::AnyGood : ColumnPolicy::FullSupport;
  const FiniteSectionEstimate est = estimate_bounds(p, w, cfg.extent, cfg.x_grid, policy, cfg.workers);
  std::ostringstream csv;
  write_section_csv(csv, est);
  emit(cfg.out, csv.str());

  nlohmann::ordered_json j;
  j["extent"] = est.extent;
  j["x_grid_size"] = est.x_grid_size;
  j["policy"] = cfg.policy;
  j["sigma_min_inf"] = est.sigma_min_inf;
  j["sigma_max_sup"] = est.sigma_max_sup;
  j["rowsum_bound"] = upper_bound_rowsum(p, w);
  const std::string text = j.dump(2) + "\n";
  if (!summary_out.empty())
    emit(summary_out, text);
  else if (cfg.out.empty())
    std::cerr << text;
  else
    std::cout << text;
  return kExitOk;
}

int run_breakpoints(const RunConfig& cfg) {
  const Window w = make_window(cfg.window, cfg);
  const LatticeParams p = LatticeParams::make(cfg.alpha, cfg.beta);
  if (!(p.alpha < w.support_length())) throw HypothesisViolated("breakpoints: requires alpha < b - a");
  std::string text = "x\n";
  for (double x : structure_breakpoints(p, w)) text += format_double(x) + "\n";
  emit(cfg.out, text);
  return kExitOk;
}

int run_random_window(const RunConfig& cfg) {
  const BrownianPath path = sample_path(cfg.seed, cfg.dt, 1.0, cfg.component_var);
  const Window raw = synthesize_window(path, KernelConfig{cfg.quadrature_n});
  const Window w = normalized(raw);
  std::ostringstream csv;
  write_sampled_csv(csv, w);
  emit(cfg.out, csv.str());

  nlohmann::ordered_json j;
  j["seed"] = cfg.seed;
  j["dt"] = cfg.dt;
  j["component_var"] = cfg.component_var;
  j["quadrature_n"] = cfg.quadrature_n;
  j["scale"] = w.scale();
  j["min_abs_core"] = verify_nonvanishing(w).min_abs;
  const std::string text = j.dump(2) + "\n";
  if (cfg.out.empty())
    std::cerr << text;
  else
    emit(cfg.out + ".json", text);
  return kExitOk;
}

int run_fourier_decay(const RunConfig& cfg) {
  const Window w = make_window(cfg.window, cfg);
  const DecayFit fit = fourier_decay_fit(w, cfg.xi_max, cfg.n_xi);
  nlohmann::ordered_json j;
  j["window"] = w.descriptor();
  j["xi_max"] = cfg.xi_max;
  j["n_xi"] = cfg.n_xi;
  j["s_hat"] = fit.s_hat;
  j["c_hat"] = fit.c_hat;
  j["rate"] = fit.rate;
  j["points_used"] = fit.points_used;
  emit(cfg.out, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame certificates for Gabor systems with compactly supported windows"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  FlagSet certify_f, scan_f, fb_f, bp_f, rw_f, fd_f;
  std::string profile_out, summary_out;

  CLI::App* certify = app.add_subcommand("certify", "certify the frame property");
  add_common(certify, certify_f);
  add_random_opts(certify, certify_f);
  for (const char* k : {"samples_per_gap", "delta_floor", "extent", "hop_bound", "core_grid", "sup_grid"})
    certify_f.add(certify, k, "");
  certify->add_option("--profile-out", profile_out, "CSV x,abs_det,fingerprint_id");

  CLI::App* scan = app.add_subcommand("scan", "certify over an (alpha, beta) grid");
  add_common(scan, scan_f);
  add_random_opts(scan, scan_f);
  for (const char* k : {"alpha_grid", "beta_grid", "samples_per_gap", "delta_floor", "extent",
                        "hop_bound", "core_grid", "sup_grid"})
    scan_f.add(scan, k, "");

  CLI::App* fb = app.add_subcommand("framebounds", "finite-section singular values");
  add_common(fb, fb_f);
  add_random_opts(fb, fb_f);
  for (const char* k : {"extent", "x_grid", "policy"}) fb_f.add(fb, k, "");
  fb->add_option("--summary-out", summary_out, "JSON summary file");

  CLI::App* bp = app.add_subcommand("breakpoints", "structure breakpoints in (0, alpha)");
  add_common(bp, bp_f);
  add_random_opts(bp, bp_f);

  CLI::App* rw = app.add_subcommand("random-window", "synthesize a random window");
  add_common(rw, rw_f);
  add_random_opts(rw, rw_f);

  CLI::App* fd = app.add_subcommand("fourier-decay", "stretched-exponential Fourier decay fit");
  add_common(fd, fd_f);
  add_random_opts(fd, fd_f);
  for (const char* k : {"xi_max", "n_xi"}) fd_f.add(fd, k, "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (certify->parsed()) return run_certify(certify_f.resolve(), profile_out);
    if (scan->parsed()) return run_scan(scan_f.resolve());
    if (fb->parsed()) return run_framebounds(fb_f.resolve(), summary_out);
    if (bp->parsed()) return run_breakpoints(bp_f.resolve());
    if (rw->parsed()) return run_random_window(rw_f.resolve());
    if (fd->parsed()) return run_fourier_decay(fd_f.resolve());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
