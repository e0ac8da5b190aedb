// Command-line front end: simulate paths, evaluate transforms, estimate b,
// sample limit laws and run experiments.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "jcir/ensemble.hpp"
#include "jcir/error.hpp"
#include "jcir/experiment.hpp"
#include "jcir/inference.hpp"
#include "jcir/kv.hpp"
#include "jcir/laplace.hpp"
#include "jcir/limits.hpp"
#include "jcir/path_io.hpp"
#include "jcir/simulate.hpp"
#include "jcir/stats.hpp"

namespace {

using namespace jcir;

constexpr int kExitHypothesis = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;
constexpr int kExitOther = 1;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::HypothesisViolation:
    case ErrorKind::NotSubcritical:
    case ErrorKind::NotCritical:
    case ErrorKind::NotSupercritical:
    case ErrorKind::UnsupportedLevy:
      return kExitHypothesis;
    case ErrorKind::Numerical:
    case ErrorKind::DegeneratePath:
      return kExitNumerical;
    case ErrorKind::Io:
      return kExitIo;
    default:
      return kExitOther;
  }
}

Scheme make_scheme(const std::string& name, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidParameter, "--dt must be > 0");
  if (name == "euler") return FullTruncationEuler{dt};
  return ExactBetweenJumps{static_cast<int>(std::max(1L, std::lround(1.0 / dt)))};
}

std::vector<std::string> provenance(const ModelParams& params, std::uint64_t seed) {
  std::vector<std::string> lines;
  for (const auto& [k, v] : params_to_kv(params)) lines.push_back(k + "=" + v);
  lines.push_back("seed=" + std::to_string(seed));
  lines.push_back(std::string("version=") + kVersion);
  return lines;
}

// Monte-Carlo side of `laplace --check` for the transforms that have one.
struct McEstimate {
  double mean;
  double se;
};

McEstimate mc_mean(std::size_t n, std::uint64_t seed, const std::function<double(Rng&)>& draw) {
  const auto xs = ensemble_parallel(n, seed, [&](Rng& rng, std::size_t) { return draw(rng); });
  const auto m = moments(xs);
  return {m.mean, m.standard_error()};
}

int cmd_simulate(const std::string& config, double horizon, const std::string& scheme, double dt, std::uint64_t seed,
                 const std::string& out) {
  const auto params = params_from_kv(read_key_values(config));
  Rng rng(seed);
  const Path path = simulate_jump_cir(params, horizon, make_scheme(scheme, dt), rng);
  auto comments = provenance(params, seed);
  comments.push_back("scheme=" + scheme);
  comments.push_back("dt=" + format_double(dt));
  save_path_csv(out, path, comments);
  return 0;
}

int cmd_laplace(const std::string& config, double u, double v, double t, const std::string& which,
                const std::string& check, std::uint64_t seed, double dt) {
  const auto params = params_from_kv(read_key_values(config));
  std::optional<std::size_t> mc_n;
  if (!check.empty()) {
    if (check.rfind("mc:", 0) != 0) throw Error(ErrorKind::InvalidParameter, "--check expects mc:<n>");
    mc_n = static_cast<std::size_t>(std::stoull(check.substr(3)));
    if (*mc_n == 0) throw Error(ErrorKind::InvalidParameter, "--check needs n > 0");
  }

  double value = 0.0;
  std::optional<McEstimate> mc;
  const double m1 = levy_first_moment(params.levy());
  if (which == "joint" || which == "y" || which == "inty") {
    const double uu = which == "inty" ? 0.0 : u;
    const double vv = which == "y" ? 0.0 : v;
    ExperimentConfig cfg{params};
    cfg.scheme = make_scheme("exact", dt);
    cfg.seed = seed;
    if (mc_n) {
      const auto c = laplace_crosscheck(cfg, uu, vv, t, *mc_n);
      value = c.closed;
      mc = McEstimate{c.mc, c.se};
    } else {
      value = joint_laplace(params, uu, vv, t);
    }
  } else if (which == "critical-limit") {
    value = critical_limit_laplace(u, v, params.a(), params.sigma(), params.levy());
    if (mc_n) {
      mc = mc_mean(*mc_n, seed, [&](Rng& rng) {
        const auto d = sample_critical_path(params.a() + m1, params.sigma(), rng);
        return std::exp(u * d.terminal + v * d.integral);
      });
    }
  } else if (which == "v-limit") {
    value = supercritical_v_laplace(params, u);
    if (mc_n) mc = mc_mean(*mc_n, seed, [&](Rng& rng) { return std::exp(u * sample_v(params, rng)); });
  } else if (which == "stationary") {
    value = stationary_laplace(params, u);
    if (mc_n) {
      const double horizon = 30.0 / params.b();
      mc = mc_mean(*mc_n, seed, [&](Rng& rng) { return std::exp(u * sample_endpoint(params, horizon, rng)); });
    }
  } else {
    throw Error(ErrorKind::InvalidParameter, "unknown --which " + which);
  }

  std::cout << std::setprecision(17);
  if (mc) {
    const double z = mc->se > 0.0 ? (mc->mean - value) / mc->se : 0.0;
    std::cout << "value,mc,se,z_score\n"
              << format_double(value) << ',' << format_double(mc->mean) << ',' << format_double(mc->se) << ','
              << format_double(z) << '\n';
  } else {
    std::cout << format_double(value) << '\n';
  }
  return 0;
}

int cmd_estimate(const std::string& in, double a, std::optional<double> sigma, std::optional<double> b_true) {
  const Path path = load_path_csv(in);
  const Observation obs{path, a, sigma};
  const auto jumps = observed_jumps(path, sigma);
  const auto s = path_statistics(path, jumps);
  const double b_hat = mle_b(s, a);
  std::cout << "b_hat,sigma_sq_hat,int_y,j_t";
  if (b_true) std::cout << ",scaled_error";
  std::cout << '\n'
            << format_double(b_hat) << ',' << format_double(sigma_sq_hat(path, jumps)) << ','
            << format_double(s.integral) << ',' << format_double(s.jump_total);
  if (b_true) {
    // Without a known sigma the realized-variance estimate stands in.
    Observation scaled = obs;
    if (!scaled.sigma_known) scaled.sigma_known = std::sqrt(sigma_sq_hat(path, jumps));
    std::cout << ',' << format_double(random_scaled_error(scaled, *b_true));
  }
  std::cout << '\n';
  return 0;
}

int cmd_limit_sample(const std::string& config, const std::string& law_name, const std::string& method,
                     const std::string& scaling_name, std::size_t n, std::uint64_t seed, const std::string& out) {
  const auto params = params_from_kv(read_key_values(config));
  const Scaling scaling = scaling_name == "random" ? Scaling::Random : Scaling::Deterministic;
  const LimitLaw law = limit_law_for(params, scaling);
  const Regime regime = classify(params);
  if (to_string(regime) != law_name) {
    throw Error(ErrorKind::HypothesisViolation,
                "--law " + law_name + " but the config is " + std::string(to_string(regime)));
  }
  VMethod vm = DirectV{};
  if (method == "rep") vm = RepresentationV{};
  if (method == "bajd-rep") vm = BajdRepresentationV{};

  const auto draws = ensemble_parallel(n, seed, [&](Rng& rng, std::size_t) {
    if (regime == Regime::Supercritical && scaling == Scaling::Deterministic) {
      return sample_supercritical_limit(params, rng, vm);
    }
    return sample_limit(law, rng);
  });

  std::ofstream file(out);
  if (!file) throw Error(ErrorKind::Io, "cannot write " + out);
  for (const auto& line : provenance(params, seed)) file << "# " << line << '\n';
  file << "# law=" << describe(law) << "\n# method=" << method << '\n';
  file << "draw,value\n";
  for (std::size_t i = 0; i < draws.size(); ++i) file << i << ',' << format_double(draws[i]) << '\n';
  if (!file) throw Error(ErrorKind::Io, "write failed for " + out);
  return 0;
}

int cmd_experiment(const std::string& config, std::optional<std::uint64_t> seed, std::optional<std::string> out_dir,
                   std::size_t sweep) {
  auto cfg = config_from_kv(read_key_values(config));
  if (seed) cfg.seed = *seed;
  if (out_dir) cfg.out_dir = *out_dir;

  if (sweep == 0) {
    const auto report = run_experiment(cfg);
    std::cout << summary_json(report);
    return 0;
  }
  // Rerun with consecutive seeds and count KS rejections.
  std::size_t reject5 = 0;
  std::size_t reject1 = 0;
  std::cout << "seed,ks_stat,ks_crit_5,ks_crit_1,mean_b_hat,var_scaled\n";
  const std::string base_dir = cfg.out_dir;
  for (std::size_t k = 0; k < sweep; ++k) {
    auto run = cfg;
    run.seed = cfg.seed + k;
    if (!base_dir.empty()) run.out_dir = base_dir + "/seed_" + std::to_string(run.seed);
    const auto s = run_experiment(run).summary;
    const double ks = s.ks_stat.value_or(std::nan(""));
    reject5 += s.ks_stat && ks > s.ks_crit_5;
    reject1 += s.ks_stat && ks > s.ks_crit_1;
    std::cout << run.seed << ',' << format_double(ks) << ',' << format_double(s.ks_crit_5) << ','
              << format_double(s.ks_crit_1) << ',' << format_double(s.mean_b_hat) << ','
              << format_double(s.var_scaled) << '\n';
  }
  std::cout << "# rejections at 5%: " << reject5 << "/" << sweep << ", at 1%: " << reject1 << "/" << sweep << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jump-type CIR simulation, transforms and drift estimation"};
  app.set_version_flag("--version", std::string(jcir::kVersion));
  app.require_subcommand(1);

  std::string config;
  std::uint64_t seed = 1;
  std::string out;
  double dt = 0.01;

  auto* sim = app.add_subcommand("simulate", "Simulate one path and write it as CSV");
  double horizon = 1.0;
  std::string scheme = "exact";
  sim->add_option("--config", config, "Model key-value file")->required()->check(CLI::ExistingFile);
  sim->add_option("--T", horizon, "Horizon")->required();
  sim->add_option("--scheme", scheme)->check(CLI::IsMember({"exact", "euler"}));
  sim->add_option("--dt", dt, "Grid step");
  sim->add_option("--seed", seed);
  sim->add_option("--out", out, "Output CSV")->required();

  auto* lap = app.add_subcommand("laplace", "Evaluate a Laplace transform");
  double u = 0.0;
  double v = 0.0;
  double t = 1.0;
  std::string which = "joint";
  std::string check;
  lap->add_option("--config", config)->required()->check(CLI::ExistingFile);
  lap->add_option("--u", u);
  lap->add_option("--v", v);
  lap->add_option("--t", t);
  lap->add_option("--which", which)
      ->check(CLI::IsMember({"joint", "y", "inty", "critical-limit", "v-limit", "stationary"}));
  lap->add_option("--check", check, "mc:<n> adds a Monte-Carlo estimate");
  lap->add_option("--seed", seed);
  lap->add_option("--dt", dt, "Grid step of the Monte-Carlo paths");

  auto* est = app.add_subcommand("estimate", "Estimate b from an observed path CSV");
  std::string in;
  double a = 0.0;
  std::optional<double> sigma;
  std::optional<double> b_true;
  est->add_option("--in", in)->required()->check(CLI::ExistingFile);
  est->add_option("--a", a)->required();
  est->add_option("--sigma", sigma);
  est->add_option("--b-true", b_true);

  auto* lim = app.add_subcommand("limit-sample", "Draw from a limit law of the scaled error");
  std::string law = "subcritical";
  std::string method = "direct";
  std::string scaling = "deterministic";
  std::size_t n = 1000;
  lim->add_option("--config", config)->required()->check(CLI::ExistingFile);
  lim->add_option("--law", law)->required()->check(CLI::IsMember({"subcritical", "critical", "supercritical"}));
  lim->add_option("--method", method)->check(CLI::IsMember({"direct", "rep", "bajd-rep"}));
  lim->add_option("--scaling", scaling)->check(CLI::IsMember({"deterministic", "random"}));
  lim->add_option("--n", n)->check(CLI::PositiveNumber);
  lim->add_option("--seed", seed);
  lim->add_option("--out", out)->required();

  auto* exp = app.add_subcommand("experiment", "Run a replicate experiment from a config file");
  std::optional<std::uint64_t> exp_seed;
  std::optional<std::string> exp_out;
  std::size_t sweep = 0;
  exp->add_option("--config", config)->required()->check(CLI::ExistingFile);
  exp->add_option("--seed", exp_seed, "Overrides experiment.seed");
  exp->add_option("--out-dir", exp_out, "Overrides experiment.out_dir");
  exp->add_option("--seed-sweep", sweep, "Rerun with k consecutive seeds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return cmd_simulate(config, horizon, scheme, dt, seed, out);
    if (*lap) return cmd_laplace(config, u, v, t, which, check, seed, dt);
    if (*est) return cmd_estimate(in, a, sigma, b_true);
    if (*lim) return cmd_limit_sample(config, law, method, scaling, n, seed, out);
    if (*exp) return cmd_experiment(config, exp_seed, exp_out, sweep);
  } catch (const jcir::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return 0;
}
