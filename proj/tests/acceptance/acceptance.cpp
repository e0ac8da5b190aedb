// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Seeds are fixed (100 + criterion number) and never tuned.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "jcir/ensemble.hpp"
#include "jcir/experiment.hpp"
#include "jcir/inference.hpp"
#include "jcir/laplace.hpp"
#include "jcir/limits.hpp"
#include "jcir/simulate.hpp"
#include "jcir/stats.hpp"
#include "oracles.hpp"

using namespace jcir;

namespace {

const LevySpec kBajdLevy = CompoundPoisson{1.0, ExponentialJumps{2.0}};

ModelParams bajd(double b) { return ModelParams(1.0, b, 0.5, kBajdLevy, 1.0); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [failed]");
  }
};

std::string fmt(const char* f, auto... xs) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

double value_at(const Path& path, double t) {
  const auto times = path.times();
  const auto it = std::upper_bound(times.begin(), times.end(), t + 1e-12);
  return path.values()[static_cast<std::size_t>(it - times.begin()) - 1];
}

// 1. psi and int psi against RK4 and Gauss-Legendre, all regimes.
Outcome riccati_oracle() {
  Outcome out;
  const double sigma = 0.5;
  const std::vector<std::pair<double, double>> uv{{0.0, -1.0}, {-1.0, 0.0}, {-1.0, -1.0}, {-0.2, -3.0}, {-5.0, -0.5}};
  double worst_psi = 0.0;
  double worst_int = 0.0;
  for (double b : {1.0, 0.0, -1.0}) {
    for (const auto& [u, v] : uv) {
      for (double t : {0.1, 0.5, 1.0, 5.0, 20.0}) {
        const RiccatiInputs in{u, v, b, sigma};
        const auto ref = oracle::riccati_rk4_with_integral(u, v, b, sigma, t, 4000);
        const double quad = oracle::gauss_legendre([&](double s) { return psi_uv(in, s); }, 0.0, t, 400);
        worst_psi = std::max(worst_psi, std::abs(psi_uv(in, t) - ref[0]));
        worst_int = std::max({worst_int, std::abs(int_psi_uv(in, t) - ref[1]), std::abs(int_psi_uv(in, t) - quad)});
      }
    }
  }
  out.require(worst_psi < 1e-8, fmt("max |psi - RK4| = %.2e", worst_psi));
  out.require(worst_int < 1e-8, fmt("max |int psi - oracle| = %.2e", worst_int));
  return out;
}

// 2. BAJD critical transform: Monte-Carlo z-score and closed vs quadrature.
Outcome laplace_crosscheck_bajd() {
  Outcome out;
  ExperimentConfig cfg{bajd(0.0)};
  cfg.scheme = ExactBetweenJumps{1000};
  cfg.seed = 102;
  const auto c = laplace_crosscheck(cfg, -1.0, -1.0, 1.0, 100000);
  out.require(std::abs(c.z_score) <= 4.0,
              fmt("closed %.6f, mc %.6f, se %.2e, z %.2f", c.closed, c.mc, c.se, c.z_score));
  const double quad = joint_laplace_quadrature(cfg.params, -1.0, -1.0, 1.0);
  out.require(std::abs(quad - c.closed) < 1e-8, fmt("|closed - quadrature| = %.2e", std::abs(quad - c.closed)));
  return out;
}

ExperimentConfig mle_config(const ModelParams& p, double horizon, double dt, Scaling scaling, std::uint64_t seed) {
  ExperimentConfig cfg{p};
  cfg.horizon = horizon;
  cfg.replicates = 1000;
  cfg.scheme = FullTruncationEuler{dt};
  cfg.scaling = scaling;
  cfg.seed = seed;
  return cfg;
}

// 3. Subcritical asymptotic normality.
Outcome subcritical() {
  Outcome out;
  const auto cfg = mle_config(bajd(1.0), 200.0, 0.01, Scaling::Deterministic, 103);
  const auto report = run_experiment(cfg);
  const double target = 0.25 * 1.0 / 1.5;
  const double var = report.summary.var_scaled;
  out.require(std::abs(var - target) <= 0.15 * target, fmt("var sqrt(T)(b_hat-b) = %.4f vs %.4f", var, target));
  std::vector<double> random_scaled;
  for (const auto& r : report.rows) random_scaled.push_back(scaled_error(cfg.params, Scaling::Random, cfg.horizon, r.b_hat, r.int_y));
  const double ks = ks_statistic(random_scaled, normal_cdf);
  out.require(ks < 0.06, fmt("KS random-scaled vs N(0,1) = %.4f", ks));
  out.require(std::abs(report.summary.mean_b_hat - 1.0) < 0.05, fmt("mean b_hat = %.4f", report.summary.mean_b_hat));
  return out;
}

// 4. Critical ratio laws, deterministic and random scaling.
Outcome critical() {
  Outcome out;
  for (auto scaling : {Scaling::Deterministic, Scaling::Random}) {
    const auto cfg = mle_config(bajd(0.0), 500.0, 0.01, scaling, 104);
    const auto s = run_experiment(cfg).summary;
    out.require(s.ks_stat && *s.ks_stat < s.ks_crit_1,
                fmt("%s KS = %.4f vs 1%% crit %.4f (m = %zu)", to_string(scaling), s.ks_stat.value_or(NAN), s.ks_crit_1,
                    s.reference_size));
  }
  return out;
}

// 5. Supercritical: V transform, mixed-normal law, random scaling, consistency.
Outcome supercritical() {
  Outcome out;
  const auto p = bajd(-1.0);
  const double horizon = 30.0;

  const auto v = ensemble_parallel(1000, 1051, [&](Rng& rng, std::size_t) {
    return std::exp(-std::exp(p.b() * horizon) * sample_endpoint(p, horizon, rng));
  });
  const auto mv = moments(v);
  const double closed = supercritical_v_laplace(p, -1.0);
  out.require(std::abs(mv.mean - closed) <= 4.0 * mv.standard_error(),
              fmt("E exp(-e^{bT}Y_T) = %.4f vs %.4f (%.2f se)", mv.mean, closed, (mv.mean - closed) / mv.standard_error()));

  struct Rep {
    double b_hat, integral;
  };
  const auto reps = ensemble_parallel(1000, 105, [&](Rng& rng, std::size_t) {
    const Path path = simulate_jump_cir(p, horizon, FullTruncationEuler{1e-3}, rng);
    const auto s = path_statistics(path, extract_jumps(path));
    return Rep{mle_b(s, p.a()), s.integral};
  });
  std::vector<double> det;
  std::vector<double> rnd;
  double max_err = 0.0;
  for (const auto& r : reps) {
    det.push_back(scaled_error(p, Scaling::Deterministic, horizon, r.b_hat, r.integral));
    rnd.push_back(scaled_error(p, Scaling::Random, horizon, r.b_hat, r.integral));
    max_err = std::max(max_err, std::abs(r.b_hat - p.b()));
  }
  const auto reference = ensemble_parallel(10000, 1052, [&](Rng& rng, std::size_t) { return sample_supercritical_limit(p, rng); });
  const double ks2 = ks_statistic(det, reference);
  const double crit = ks_critical_two_sample(det.size(), reference.size(), 0.01);
  out.require(ks2 < crit, fmt("KS e^{-bT/2}(b_hat-b) vs mixed normal = %.4f vs %.4f", ks2, crit));
  const double ks1 = ks_statistic(rnd, normal_cdf);
  out.require(ks1 < 0.06, fmt("KS random-scaled vs N(0,1) = %.4f", ks1));
  out.require(max_err < 0.1, fmt("max |b_hat - b| = %.2e", max_err));
  return out;
}

// 6. Representations of V in law.
Outcome representations() {
  Outcome out;
  const std::size_t n = 10000;
  const double crit = ks_critical_two_sample(n, n, 0.01);
  auto sample = [&](const ModelParams& p, const VMethod& m, std::uint64_t seed) {
    return ensemble_parallel(n, seed, [&](Rng& rng, std::size_t) { return sample_v(p, rng, m); });
  };
  const auto p = bajd(-1.0);
  const auto direct = sample(p, DirectV{}, 1061);
  const double k1 = ks_statistic(direct, sample(p, RepresentationV{}, 1062));
  const double k2 = ks_statistic(direct, sample(p, BajdRepresentationV{}, 1063));
  const auto q = p.with_levy(CompoundPoisson{1.0, ConstantJumps{0.5}});
  const double k3 = ks_statistic(sample(q, DirectV{}, 1064), sample(q, RepresentationV{}, 1065));
  out.require(k1 < crit, fmt("BAJD direct vs rep %.4f", k1));
  out.require(k2 < crit, fmt("BAJD direct vs bajd-rep %.4f", k2));
  out.require(k3 < crit, fmt("constant-jump direct vs rep %.4f (crit %.4f)", k3, crit));
  return out;
}

// 7. Pathwise comparison of Wiener-coupled pairs.
Outcome comparison() {
  Outcome out;
  const ModelParams p(1.0, 1.0, 0.5, CompoundPoisson{2.0, ExponentialJumps{1.0}}, 1.0);
  const auto ok = ensemble_parallel(500, 107, [&](Rng& rng, std::size_t) {
    const auto [with, without] = simulate_coupled_pair(p, 10.0, 0.01, rng);
    for (std::size_t k = 0; k < with.size(); ++k) {
      if (with.values()[k] < value_at(without, with.times()[k]) - 1e-12) return 0;
    }
    return 1;
  });
  const int passed = std::accumulate(ok.begin(), ok.end(), 0);
  out.require(passed == 500, fmt("%d/500 pairs dominate at every grid point", passed));
  return out;
}

// 8. Realized-variance estimate of sigma^2.
Outcome sigma_statistic() {
  Outcome out;
  const auto rel = ensemble_parallel(200, 108, [&](Rng& rng, std::size_t) {
    const Path path = simulate_jump_cir(bajd(1.0), 10.0, ExactBetweenJumps{1000}, rng);
    return std::abs(sigma_sq_hat(path) - 0.25) / 0.25;
  });
  const double med = median(rel);
  out.require(med < 0.05, fmt("median relative error %.4f", med));
  return out;
}

// 9. Stationary law: transform derivative and ergodic time average.
Outcome stationary() {
  Outcome out;
  const auto p = bajd(1.0);
  const double h = 1e-6;
  const double deriv = -std::log(stationary_laplace(p, -h)) / h;
  out.require(std::abs(deriv - stationary_mean(p)) < 1e-4,
              fmt("d/du log L(0-) = %.7f vs %.7f", deriv, stationary_mean(p)));
  Rng rng(109);
  const Path path = simulate_jump_cir(p, 2000.0, ExactBetweenJumps{100}, rng);
  const double avg = integral_of_path(path) / 2000.0;
  out.require(std::abs(avg - 1.5) < 0.02 * 1.5, fmt("time average %.4f vs 1.5", avg));
  return out;
}

// 10. Likelihood algebra on simulated paths.
Outcome mle_algebra() {
  Outcome out;
  const auto p = bajd(1.0);
  const double step = 1e-4;
  int argmax_ok = 0;
  int anti_ok = 0;
  int inv_ok = 0;
  Rng rng(110);
  for (int i = 0; i < 100; ++i) {
    const Observation obs{simulate_jump_cir(p, 10.0, ExactBetweenJumps{100}, rng), p.a(), p.sigma()};
    const double bh = mle_b(obs);
    double best_b = 0.0;
    double best = -INFINITY;
    for (int k = 0; k <= 60000; ++k) {
      const double b = -2.0 + k * step;
      const double l = log_likelihood_ratio(obs, b, 1.0);
      if (l > best) {
        best = l;
        best_b = b;
      }
    }
    argmax_ok += std::abs(best_b - bh) <= 0.5 * step + 1e-12;

    const double l1 = log_likelihood_ratio(obs, 0.3, 1.7);
    const double l2 = log_likelihood_ratio(obs, 1.7, 0.3);
    anti_ok += std::abs(l1 + l2) <= 1e-12 * std::max(1.0, std::abs(l1));

    ExperimentConfig other{p.with_levy(CompoundPoisson{9.0, GammaJumps{3.0, 0.1}})};
    const Observation no_sigma{obs.path, obs.a_known, {}};
    const Observation big_sigma{obs.path, obs.a_known, 40.0};
    inv_ok += mle_b(no_sigma) == bh && mle_b(big_sigma) == bh && analyze_replicate(other, obs.path, 0).b_hat == bh;
  }
  out.require(argmax_ok == 100, fmt("argmax within grid resolution on %d/100", argmax_ok));
  out.require(anti_ok == 100, fmt("antisymmetry on %d/100", anti_ok));
  out.require(inv_ok == 100, fmt("sigma/Levy invariance on %d/100", inv_ok));
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Riccati oracle", 1.0, riccati_oracle},
      {2, "Laplace cross-check (BAJD critical)", 120.0, laplace_crosscheck_bajd},
      {3, "subcritical limit", 600.0, subcritical},
      {4, "critical limit", 600.0, critical},
      {5, "supercritical limits", 300.0, supercritical},
      {6, "representation identities", 180.0, representations},
      {7, "comparison theorem", 60.0, comparison},
      {8, "sigma^2 statistic", 120.0, sigma_statistic},
      {9, "stationary law", 60.0, stationary},
      {10, "MLE algebra", 30.0, mle_algebra},
  };
  std::printf("threads: %d\n", ensemble_threads());
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(secs < c.budget_s, fmt("runtime %.1f s < %.0f s", secs, c.budget_s));
    failures += !out.pass;
    std::printf("%s  [%d] %s: %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
