#pragma once

#include <variant>

namespace jcir {

// Jump-size laws of a compound-Poisson subordinator. Each has a finite,
// strictly positive mean.
struct ExponentialJumps {
  double rate;  // lambda
};
struct ConstantJumps {
  double size;
};
struct GammaJumps {
  double shape;
  double rate;
};
using JumpLaw = std::variant<ExponentialJumps, ConstantJumps, GammaJumps>;

double mean(const JumpLaw& law);

struct ZeroLevy {};
struct CompoundPoisson {
  double rate;  // jumps per unit time, m((0, inf))
  JumpLaw jumps;
};
using LevySpec = std::variant<ZeroLevy, CompoundPoisson>;

// Throws Error(InvalidParameter) when a rate, size or shape is not a finite
// positive number.
void validate(const LevySpec& levy);

// Integral of z against the Levy measure, i.e. E(J_1).
double levy_first_moment(const LevySpec& levy);

bool is_zero(const LevySpec& levy);

enum class Regime { Subcritical, Critical, Supercritical };

const char* to_string(Regime regime) noexcept;

// Parameters of dY = (a - bY)dt + sigma sqrt(Y) dW + dJ, Y_0 = y0.
// Validated on construction; immutable afterwards.
class ModelParams {
 public:
  ModelParams(double a, double b, double sigma, LevySpec levy, double y0);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double sigma() const noexcept { return sigma_; }
  const LevySpec& levy() const noexcept { return levy_; }
  double y0() const noexcept { return y0_; }

  ModelParams with_b(double b) const { return {a_, b, sigma_, levy_, y0_}; }
  ModelParams with_a(double a) const { return {a, b_, sigma_, levy_, y0_}; }
  ModelParams with_y0(double y0) const { return {a_, b_, sigma_, levy_, y0}; }
  ModelParams with_levy(LevySpec levy) const { return {a_, b_, sigma_, std::move(levy), y0_}; }

 private:
  double a_;
  double b_;
  double sigma_;
  LevySpec levy_;
  double y0_;
};

Regime classify(const ModelParams& params) noexcept;

// Threshold below which b is treated as zero in formulas with a removable
// singularity at b = 0.
inline constexpr double kCriticalThreshold = 1e-12;

// E(Y_t) for the deterministic start y0.
double mean_yt(const ModelParams& params, double t);

// Mean of the stationary distribution, (a + E J_1) / b. Requires b > 0.
double stationary_mean(const ModelParams& params);

}  // namespace jcir
