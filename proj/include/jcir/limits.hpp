#pragma once

#include <string>
#include <variant>

#include "jcir/model.hpp"
#include "jcir/rng.hpp"

namespace jcir {

enum class Scaling { Deterministic, Random };

const char* to_string(Scaling scaling) noexcept;

// Limit laws of the scaled estimation error.
struct StandardNormalLaw {};
struct SubcriticalNormalLaw {
  double variance;  // sigma^2 b / (a + E J_1)
};
// (a_eff - Z_1) / int_0^1 Z (deterministic) or
// (a_eff - Z_1) / (sigma sqrt(int_0^1 Z)) (random), with
// dZ = a_eff dt + sigma sqrt(Z) dW, Z_0 = 0.
struct CriticalRatioLaw {
  double a_eff;
  double sigma;
  Scaling scaling;
};
// sigma Z (-V / b)^{-1/2}, V the a.s. limit of e^{bt} Y_t.
struct SupercriticalMixedLaw {
  ModelParams params;
};
using LimitLaw = std::variant<StandardNormalLaw, SubcriticalNormalLaw, CriticalRatioLaw, SupercriticalMixedLaw>;

std::string describe(const LimitLaw& law);

// Checks the hypotheses of the matching limit theorem and returns the law of
// the scaled error. Throws HypothesisViolation naming the failed condition.
LimitLaw limit_law_for(const ModelParams& params, Scaling scaling);

// Deterministic rate r(T) so that r(T) (b_hat - b) converges: sqrt(T), T or
// e^{-bT/2}.
double deterministic_scale(const ModelParams& params, double horizon);

// Scaled estimation error for one replicate.
double scaled_error(const ModelParams& params, Scaling scaling, double horizon, double b_hat,
                    double integral);

struct CriticalLimitDraw {
  double terminal;  // Z_1
  double integral;  // int_0^1 Z (left Riemann on the dt grid)
};

CriticalLimitDraw sample_critical_path(double a_eff, double sigma, Rng& rng, double dt = 1e-3);

// One draw of the critical limit statistic (deterministic scaling).
double sample_critical_limit(double a_eff, double sigma, Rng& rng, double dt = 1e-3);
// Random-scaling variant.
double sample_critical_limit_random(double a_eff, double sigma, Rng& rng, double dt = 1e-3);

struct DirectV {
  double horizon = 0.0;  // 0 selects 30/|b|
};
struct RepresentationV {};
struct BajdRepresentationV {};
using VMethod = std::variant<DirectV, RepresentationV, BajdRepresentationV>;

// One draw of V. Throws NotSupercritical when b >= 0 and UnsupportedLevy for
// the BAJD representation with non-exponential jumps.
double sample_v(const ModelParams& params, Rng& rng, const VMethod& method = DirectV{});

// One draw of sigma Z (-V/b)^{-1/2}.
double sample_supercritical_limit(const ModelParams& params, Rng& rng, const VMethod& method = DirectV{});

// One draw from any limit law.
double sample_limit(const LimitLaw& law, Rng& rng);

}  // namespace jcir
