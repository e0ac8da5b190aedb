#include "jcir/model.hpp"

#include <cmath>
#include <string>

#include "jcir/detail/overloaded.hpp"
#include "jcir/error.hpp"

namespace jcir {
namespace {

using detail::overloaded;

void require_positive(double x, const char* name) {
  if (!(std::isfinite(x) && x > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, std::string(name) + " must be finite and > 0");
  }
}

}  // namespace

double mean(const JumpLaw& law) {
  return std::visit(overloaded{
                        [](const ExponentialJumps& e) { return 1.0 / e.rate; },
                        [](const ConstantJumps& c) { return c.size; },
                        [](const GammaJumps& g) { return g.shape / g.rate; },
                    },
                    law);
}

void validate(const LevySpec& levy) {
  if (const auto* cp = std::get_if<CompoundPoisson>(&levy)) {
    require_positive(cp->rate, "levy.rate");
    std::visit(overloaded{
                   [](const ExponentialJumps& e) { require_positive(e.rate, "levy.jump.rate"); },
                   [](const ConstantJumps& c) { require_positive(c.size, "levy.jump.size"); },
                   [](const GammaJumps& g) {
                     require_positive(g.shape, "levy.jump.shape");
                     require_positive(g.rate, "levy.jump.rate");
                   },
               },
               cp->jumps);
  }
}

double levy_first_moment(const LevySpec& levy) {
  if (const auto* cp = std::get_if<CompoundPoisson>(&levy)) return cp->rate * mean(cp->jumps);
  return 0.0;
}

bool is_zero(const LevySpec& levy) { return std::holds_alternative<ZeroLevy>(levy); }

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
  }
  return "unknown";
}

ModelParams::ModelParams(double a, double b, double sigma, LevySpec levy, double y0)
    : a_(a), b_(b), sigma_(sigma), levy_(std::move(levy)), y0_(y0) {
  if (!(std::isfinite(a) && a >= 0.0)) throw Error(ErrorKind::InvalidParameter, "a must be finite and >= 0");
  if (!std::isfinite(b)) throw Error(ErrorKind::InvalidParameter, "b must be finite");
  require_positive(sigma, "sigma");
  if (!(std::isfinite(y0) && y0 >= 0.0)) throw Error(ErrorKind::InvalidParameter, "y0 must be finite and >= 0");
  validate(levy_);
}

Regime classify(const ModelParams& params) noexcept {
  if (params.b() > 0.0) return Regime::Subcritical;
  if (params.b() < 0.0) return Regime::Supercritical;
  return Regime::Critical;
}

double mean_yt(const ModelParams& params, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::DomainError, "mean_yt needs t >= 0");
  const double drift = params.a() + levy_first_moment(params.levy());
  const double b = params.b();
  if (std::abs(b) < kCriticalThreshold) return params.y0() + drift * t;
  // (1 - e^{-bt}) / b without cancellation for small bt.
  const double growth = -std::expm1(-b * t) / b;
  return std::exp(-b * t) * params.y0() + drift * growth;
}

double stationary_mean(const ModelParams& params) {
  if (!(params.b() > 0.0)) throw Error(ErrorKind::NotSubcritical, "stationary mean needs b > 0");
  return (params.a() + levy_first_moment(params.levy())) / params.b();
}

}  // namespace jcir
