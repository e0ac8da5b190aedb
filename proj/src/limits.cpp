#include "jcir/limits.hpp"

#include <cmath>

#include "jcir/detail/overloaded.hpp"
#include "jcir/error.hpp"
#include "jcir/simulate.hpp"

namespace jcir {
namespace {

void require_supercritical(const ModelParams& params) {
  if (!(params.b() < 0.0)) throw Error(ErrorKind::NotSupercritical, "needs b < 0");
}

}  // namespace

const char* to_string(Scaling scaling) noexcept {
  return scaling == Scaling::Deterministic ? "deterministic" : "random";
}

std::string describe(const LimitLaw& law) {
  return std::visit(detail::overloaded{
                        [](const StandardNormalLaw&) { return std::string("N(0,1)"); },
                        [](const SubcriticalNormalLaw& l) {
                          return "N(0," + std::to_string(l.variance) + ")";
                        },
                        [](const CriticalRatioLaw& l) {
                          return std::string(l.scaling == Scaling::Random ? "critical random ratio"
                                                                          : "critical ratio") +
                                 " a_eff=" + std::to_string(l.a_eff);
                        },
                        [](const SupercriticalMixedLaw&) { return std::string("mixed normal sigma Z (-V/b)^-1/2"); },
                    },
                    law);
}

LimitLaw limit_law_for(const ModelParams& params, Scaling scaling) {
  const double a = params.a();
  const double m1 = levy_first_moment(params.levy());
  switch (classify(params)) {
    case Regime::Subcritical:
      if (!(a > 0.0)) throw Error(ErrorKind::HypothesisViolation, "subcritical limit needs a > 0");
      if (scaling == Scaling::Random) return StandardNormalLaw{};
      return SubcriticalNormalLaw{params.sigma() * params.sigma() * params.b() / (a + m1)};
    case Regime::Critical:
      if (!(a > 0.0 || (params.y0() > 0.0 && m1 > 0.0))) {
        throw Error(ErrorKind::HypothesisViolation, "critical limit needs a > 0 or (a = 0, y0 > 0, E J_1 > 0)");
      }
      return CriticalRatioLaw{a + m1, params.sigma(), scaling};
    case Regime::Supercritical:
      if (!(a > 0.0 || (!is_zero(params.levy()) && params.y0() > 0.0))) {
        throw Error(ErrorKind::HypothesisViolation, "supercritical limit needs a > 0 or (a = 0, m != 0, y0 > 0)");
      }
      if (scaling == Scaling::Random) return StandardNormalLaw{};
      return SupercriticalMixedLaw{params};
  }
  throw Error(ErrorKind::HypothesisViolation, "unknown regime");
}

double deterministic_scale(const ModelParams& params, double horizon) {
  switch (classify(params)) {
    case Regime::Subcritical: return std::sqrt(horizon);
    case Regime::Critical: return horizon;
    case Regime::Supercritical: return std::exp(-0.5 * params.b() * horizon);
  }
  return 1.0;
}

double scaled_error(const ModelParams& params, Scaling scaling, double horizon, double b_hat,
                    double integral) {
  if (scaling == Scaling::Random) return std::sqrt(integral) * (b_hat - params.b()) / params.sigma();
  return deterministic_scale(params, horizon) * (b_hat - params.b());
}

CriticalLimitDraw sample_critical_path(double a_eff, double sigma, Rng& rng, double dt) {
  if (!(a_eff > 0.0)) throw Error(ErrorKind::HypothesisViolation, "critical limit needs a_eff > 0");
  const auto steps = static_cast<int>(std::lround(1.0 / dt));
  const Path path = simulate_diffusion_cir(a_eff, 0.0, sigma, 0.0, 1.0, ExactBetweenJumps{steps}, rng);
  return {path.terminal(), integral_of_path(path)};
}

double sample_critical_limit(double a_eff, double sigma, Rng& rng, double dt) {
  const auto d = sample_critical_path(a_eff, sigma, rng, dt);
  return (a_eff - d.terminal) / d.integral;
}

double sample_critical_limit_random(double a_eff, double sigma, Rng& rng, double dt) {
  const auto d = sample_critical_path(a_eff, sigma, rng, dt);
  return (a_eff - d.terminal) / (sigma * std::sqrt(d.integral));
}

double sample_v(const ModelParams& params, Rng& rng, const VMethod& method) {
  require_supercritical(params);
  const double b = params.b();
  const double sigma = params.sigma();
  const double default_horizon = 30.0 / std::abs(b);
  return std::visit(
      detail::overloaded{
          [&](const DirectV& d) {
            const double horizon = d.horizon > 0.0 ? d.horizon : default_horizon;
            return std::exp(b * horizon) * sample_endpoint(params, horizon, rng);
          },
          [&](const RepresentationV&) {
            // Z_{-1/b} for dZ = a dt + sigma sqrt(Z) dW, Z_0 = y0 ...
            const double diffusion = cir_transition_sample(params.y0(), -1.0 / b, params.a(), 0.0, sigma, rng);
            if (is_zero(params.levy())) return diffusion;
            // ... plus the limit of e^{bt} Y_t for the a = 0 jump process started at 0.
            const ModelParams jump_only(0.0, b, sigma, params.levy(), 0.0);
            return diffusion + std::exp(b * default_horizon) * sample_endpoint(jump_only, default_horizon, rng);
          },
          [&](const BajdRepresentationV&) {
            const double diffusion = cir_transition_sample(params.y0(), -1.0 / b, params.a(), 0.0, sigma, rng);
            if (is_zero(params.levy())) return diffusion;
            const auto& cp = std::get<CompoundPoisson>(params.levy());
            const auto* e = std::get_if<ExponentialJumps>(&cp.jumps);
            if (e == nullptr) throw Error(ErrorKind::UnsupportedLevy, "BAJD representation needs exponential jumps");
            const double s2 = sigma * sigma;
            const double drift = cp.rate / (e->rate - 2.0 * b / s2);
            const double time = -(1.0 / b) * (1.0 - 2.0 * b / (s2 * e->rate));
            return diffusion + cir_transition_sample(0.0, time, drift, 0.0, sigma, rng);
          },
      },
      method);
}

double sample_supercritical_limit(const ModelParams& params, Rng& rng, const VMethod& method) {
  require_supercritical(params);
  const double v = sample_v(params, rng, method);
  const double z = rng.normal();
  return params.sigma() * z / std::sqrt(-v / params.b());
}

double sample_limit(const LimitLaw& law, Rng& rng) {
  return std::visit(detail::overloaded{
                        [&](const StandardNormalLaw&) { return rng.normal(); },
                        [&](const SubcriticalNormalLaw& l) { return std::sqrt(l.variance) * rng.normal(); },
                        [&](const CriticalRatioLaw& l) {
                          return l.scaling == Scaling::Random ? sample_critical_limit_random(l.a_eff, l.sigma, rng)
                                                              : sample_critical_limit(l.a_eff, l.sigma, rng);
                        },
                        [&](const SupercriticalMixedLaw& l) { return sample_supercritical_limit(l.params, rng); },
                    },
                    law);
}

}  // namespace jcir
