#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jcir/kv.hpp"
#include "jcir/limits.hpp"
#include "jcir/model.hpp"
#include "jcir/simulate.hpp"

namespace jcir {

inline constexpr const char* kVersion = "jcir 0.1.0";

enum class Execution { Parallel, Serial };

struct ExperimentConfig {
  ModelParams params;
  double horizon = 1.0;
  std::size_t replicates = 1;
  Scheme scheme = ExactBetweenJumps{100};
  Scaling scaling = Scaling::Random;
  std::uint64_t seed = 1;
  std::string out_dir{};
  // Size of the reference ensemble for limit laws without a closed CDF;
  // 0 means ten times the replicate count.
  std::size_t reference_size = 0;
};

void validate(const ExperimentConfig& cfg);

// Model keys plus experiment.{T, replicates, scheme (exact|euler), dt,
// scaling (deterministic|random), seed, out_dir, reference_size}.
ExperimentConfig config_from_kv(const KeyValues& kv);
KeyValues config_to_kv(const ExperimentConfig& cfg);

struct ReplicateRow {
  std::size_t replicate = 0;
  double b_hat = 0.0;
  double scaled_error = 0.0;
  double int_y = 0.0;
  double j_t = 0.0;
  double sigma_sq_hat = 0.0;
};

struct ExperimentSummary {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double mean_b_hat = 0.0;
  double se_b_hat = 0.0;
  double mean_scaled = 0.0;
  double var_scaled = 0.0;
  std::optional<double> ks_stat;  // empty when fewer than two replicates
  double ks_crit_5 = 0.0;
  double ks_crit_1 = 0.0;
  std::string target_law;
  std::size_t reference_size = 0;  // 0 when the target CDF is closed form
};

struct ExperimentReport {
  std::vector<ReplicateRow> rows;
  ExperimentSummary summary;
  KeyValues provenance;  // config echo plus version
};

// Per-replicate statistics of one simulated path.
ReplicateRow analyze_replicate(const ExperimentConfig& cfg, const Path& path, std::size_t replicate);

// Simulates the replicates, scores them against the regime's limit law and,
// when out_dir is set, writes report.csv and summary.json there. Nothing is
// written if any replicate fails.
ExperimentReport run_experiment(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);

ExperimentSummary summarize(const ExperimentConfig& cfg, const std::vector<ReplicateRow>& rows,
                            Execution exec = Execution::Parallel);

std::string report_csv(const ExperimentReport& report);
std::string summary_json(const ExperimentReport& report);
void write_report(const ExperimentReport& report, const std::filesystem::path& out_dir);

struct LaplaceCrosscheck {
  double closed = 1.0;
  double mc = 1.0;
  double se = 0.0;
  double z_score = 0.0;
};

// Closed-form joint transform against the Monte-Carlo mean of
// exp(u Y_t + v int_0^t Y) over n paths simulated with cfg.scheme.
LaplaceCrosscheck laplace_crosscheck(const ExperimentConfig& cfg, double u, double v, double t, std::size_t n,
                                     Execution exec = Execution::Parallel);

}  // namespace jcir
