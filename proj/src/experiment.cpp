#include "jcir/experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "jcir/ensemble.hpp"
#include "jcir/error.hpp"
#include "jcir/inference.hpp"
#include "jcir/laplace.hpp"
#include "jcir/stats.hpp"

namespace jcir {
namespace {

// Reference ensembles use streams of a seed derived from the master seed so
// they never overlap the replicate streams.
constexpr std::uint64_t kReferenceSalt = 0x5EEDF00DCAFEBABEULL;

template <class Fn>
auto run_ensemble(Execution exec, std::size_t n, std::uint64_t seed, Fn&& fn) {
  return exec == Execution::Parallel ? ensemble_parallel(n, seed, fn) : ensemble_serial(n, seed, fn);
}

std::uint64_t parse_seed(const std::string& s) {
  try {
    // stoull accepts a sign and wraps negative input
    if (s.empty() || s.front() == '-' || s.front() == '+') throw std::invalid_argument(s);
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidParameter, "seed must be an unsigned 64-bit integer: '" + s + "'");
  }
}

void write_atomically(const std::filesystem::path& file, const std::string& body) {
  const auto tmp = std::filesystem::path(file.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out << body;
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (!(cfg.horizon > 0.0 && std::isfinite(cfg.horizon))) throw Error(ErrorKind::InvalidParameter, "T must be > 0");
  if (cfg.replicates == 0) throw Error(ErrorKind::InvalidParameter, "replicates must be > 0");
  validate(cfg.scheme);
}

ExperimentConfig config_from_kv(const KeyValues& kv) {
  ExperimentConfig cfg{params_from_kv(kv)};
  cfg.horizon = get_double(kv, "experiment.T", 1.0);
  const double reps = get_double(kv, "experiment.replicates", 1.0);
  if (!(reps >= 1.0) || reps != std::floor(reps)) {
    throw Error(ErrorKind::InvalidParameter, "experiment.replicates must be a positive integer");
  }
  cfg.replicates = static_cast<std::size_t>(reps);
  const double dt = get_double(kv, "experiment.dt", 0.01);
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidParameter, "experiment.dt must be > 0");
  const auto scheme = get_string(kv, "experiment.scheme", "exact");
  if (scheme == "exact") {
    cfg.scheme = ExactBetweenJumps{static_cast<int>(std::max(1L, std::lround(1.0 / dt)))};
  } else if (scheme == "euler") {
    cfg.scheme = FullTruncationEuler{dt};
  } else {
    throw Error(ErrorKind::InvalidParameter, "experiment.scheme must be exact or euler");
  }
  const auto scaling = get_string(kv, "experiment.scaling", "random");
  if (scaling == "random") {
    cfg.scaling = Scaling::Random;
  } else if (scaling == "deterministic") {
    cfg.scaling = Scaling::Deterministic;
  } else {
    throw Error(ErrorKind::InvalidParameter, "experiment.scaling must be deterministic or random");
  }
  cfg.seed = parse_seed(get_string(kv, "experiment.seed", "1"));
  cfg.out_dir = get_string(kv, "experiment.out_dir", "");
  cfg.reference_size = static_cast<std::size_t>(get_double(kv, "experiment.reference_size", 0.0));
  validate(cfg);
  return cfg;
}

KeyValues config_to_kv(const ExperimentConfig& cfg) {
  KeyValues kv = params_to_kv(cfg.params);
  kv["experiment.T"] = format_double(cfg.horizon);
  kv["experiment.replicates"] = std::to_string(cfg.replicates);
  if (const auto* e = std::get_if<ExactBetweenJumps>(&cfg.scheme)) {
    kv["experiment.scheme"] = "exact";
    kv["experiment.dt"] = format_double(1.0 / e->steps_per_unit);
  } else {
    kv["experiment.scheme"] = "euler";
    kv["experiment.dt"] = format_double(std::get<FullTruncationEuler>(cfg.scheme).dt);
  }
  kv["experiment.scaling"] = to_string(cfg.scaling);
  kv["experiment.seed"] = std::to_string(cfg.seed);
  kv["experiment.out_dir"] = cfg.out_dir;
  kv["experiment.reference_size"] = std::to_string(cfg.reference_size);
  return kv;
}

ReplicateRow analyze_replicate(const ExperimentConfig& cfg, const Path& path, std::size_t replicate) {
  const auto jumps = extract_jumps(path);
  const auto s = path_statistics(path, jumps);
  ReplicateRow row;
  row.replicate = replicate;
  row.b_hat = mle_b(s, cfg.params.a());
  row.int_y = s.integral;
  row.j_t = s.jump_total;
  row.sigma_sq_hat = (s.quadratic_variation - s.jump_squares) / s.integral;
  row.scaled_error = scaled_error(cfg.params, cfg.scaling, cfg.horizon, row.b_hat, s.integral);
  return row;
}

ExperimentSummary summarize(const ExperimentConfig& cfg, const std::vector<ReplicateRow>& rows, Execution exec) {
  ExperimentSummary sum;
  sum.n = rows.size();
  sum.seed = cfg.seed;
  std::vector<double> b_hat;
  std::vector<double> scaled;
  b_hat.reserve(rows.size());
  scaled.reserve(rows.size());
  for (const auto& r : rows) {
    b_hat.push_back(r.b_hat);
    scaled.push_back(r.scaled_error);
  }
  const auto mb = moments(b_hat);
  const auto ms = moments(scaled);
  sum.mean_b_hat = mb.mean;
  sum.se_b_hat = mb.standard_error();
  sum.mean_scaled = ms.mean;
  sum.var_scaled = ms.variance;

  const LimitLaw law = limit_law_for(cfg.params, cfg.scaling);
  sum.target_law = describe(law);
  const auto n = rows.size();
  if (const auto* normal = std::get_if<SubcriticalNormalLaw>(&law)) {
    const double sd = std::sqrt(normal->variance);
    sum.ks_crit_5 = ks_critical_one_sample(n, 0.05);
    sum.ks_crit_1 = ks_critical_one_sample(n, 0.01);
    if (n >= 2) sum.ks_stat = ks_statistic(scaled, [sd](double x) { return normal_cdf(x / sd); });
  } else if (std::holds_alternative<StandardNormalLaw>(law)) {
    sum.ks_crit_5 = ks_critical_one_sample(n, 0.05);
    sum.ks_crit_1 = ks_critical_one_sample(n, 0.01);
    if (n >= 2) sum.ks_stat = ks_statistic(scaled, normal_cdf);
  } else {
    const std::size_t m = cfg.reference_size > 0 ? cfg.reference_size : 10 * n;
    sum.reference_size = m;
    sum.ks_crit_5 = ks_critical_two_sample(n, m, 0.05);
    sum.ks_crit_1 = ks_critical_two_sample(n, m, 0.01);
    if (n >= 2) {
      const auto reference =
          run_ensemble(exec, m, cfg.seed ^ kReferenceSalt, [&](Rng& rng, std::size_t) { return sample_limit(law, rng); });
      sum.ks_stat = ks_statistic(scaled, reference);
    }
  }
  return sum;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, Execution exec) {
  validate(cfg);
  // Fail on violated hypotheses before spending time on simulation.
  (void)limit_law_for(cfg.params, cfg.scaling);
  auto rows = run_ensemble(exec, cfg.replicates, cfg.seed, [&](Rng& rng, std::size_t r) {
    const Path path = simulate_jump_cir(cfg.params, cfg.horizon, cfg.scheme, rng);
    return analyze_replicate(cfg, path, r);
  });
  for (const auto& row : rows) {
    if (!std::isfinite(row.b_hat) || !std::isfinite(row.scaled_error)) {
      throw Error(ErrorKind::Numerical, "non-finite estimate in replicate " + std::to_string(row.replicate));
    }
  }
  ExperimentReport report;
  report.summary = summarize(cfg, rows, exec);
  report.rows = std::move(rows);
  report.provenance = config_to_kv(cfg);
  report.provenance["version"] = kVersion;
  if (!cfg.out_dir.empty()) write_report(report, cfg.out_dir);
  return report;
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  for (const auto& [k, v] : report.provenance) out << "# " << k << '=' << v << '\n';
  out << "replicate,b_hat,scaled_error,int_y,j_t,sigma_sq_hat\n";
  for (const auto& r : report.rows) {
    out << r.replicate << ',' << format_double(r.b_hat) << ',' << format_double(r.scaled_error) << ','
        << format_double(r.int_y) << ',' << format_double(r.j_t) << ',' << format_double(r.sigma_sq_hat) << '\n';
  }
  return out.str();
}

std::string summary_json(const ExperimentReport& report) {
  const auto& s = report.summary;
  nlohmann::ordered_json doc;
  doc["mean_b_hat"] = s.mean_b_hat;
  doc["var_scaled"] = s.var_scaled;
  doc["ks_stat"] = s.ks_stat ? nlohmann::ordered_json(*s.ks_stat) : nlohmann::ordered_json(nullptr);
  doc["ks_crit_5"] = s.ks_crit_5;
  doc["ks_crit_1"] = s.ks_crit_1;
  doc["n"] = s.n;
  doc["seed"] = s.seed;
  doc["ks_defined"] = s.ks_stat.has_value();
  doc["se_b_hat"] = s.se_b_hat;
  doc["mean_scaled"] = s.mean_scaled;
  doc["target_law"] = s.target_law;
  doc["reference_size"] = s.reference_size;
  nlohmann::ordered_json prov;
  for (const auto& [k, v] : report.provenance) prov[k] = v;
  doc["provenance"] = prov;
  return doc.dump(2) + "\n";
}

void write_report(const ExperimentReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());
  write_atomically(out_dir / "report.csv", report_csv(report));
  write_atomically(out_dir / "summary.json", summary_json(report));
}

LaplaceCrosscheck laplace_crosscheck(const ExperimentConfig& cfg, double u, double v, double t, std::size_t n,
                                     Execution exec) {
  if (!(u <= 0.0 && v <= 0.0)) throw Error(ErrorKind::DomainError, "cross-check needs u, v <= 0");
  if (n == 0) throw Error(ErrorKind::InvalidParameter, "cross-check needs n > 0");
  LaplaceCrosscheck out;
  out.closed = joint_laplace(cfg.params, u, v, t);
  if (u == 0.0 && v == 0.0) return out;
  const auto draws = run_ensemble(exec, n, cfg.seed, [&](Rng& rng, std::size_t) {
    if (t == 0.0) return std::exp(u * cfg.params.y0());
    const Path path = simulate_jump_cir(cfg.params, t, cfg.scheme, rng);
    return std::exp(u * path.terminal() + v * integral_of_path(path));
  });
  const auto m = moments(draws);
  out.mc = m.mean;
  out.se = m.standard_error();
  out.z_score = out.se > 0.0 ? (out.mc - out.closed) / out.se : 0.0;
  return out;
}

}  // namespace jcir
