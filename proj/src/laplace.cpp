#include "jcir/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jcir/detail/overloaded.hpp"
#include "jcir/error.hpp"
#include "jcir/quadrature.hpp"

namespace jcir {
namespace {

// Below this gamma*t the (1 + e^{-gt}, 1 - e^{-gt}) grouping is used; above
// it the e^{-gt} terms are split off so large-argument cancellation cannot
// occur.
constexpr double kSmallArgument = 1.0;
constexpr double kDegenerateRelTol = 1e-12;

void require_nonpositive(double u, double v) {
  if (!(u <= 0.0) || !(v <= 0.0)) throw Error(ErrorKind::DomainError, "transform arguments must be <= 0");
}

void require_time(double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::DomainError, "t must be >= 0");
}

// gamma + b without cancellation when b < 0.
double gamma_plus_b(double gamma, double b, double sigma, double v) {
  if (b >= 0.0) return gamma + b;
  return -2.0 * sigma * sigma * v / (gamma - b);
}

// log(1 + x) / x, continuous at 0.
double log1p_ratio(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - 0.5 * x;
  return std::log1p(x) / x;
}

// Exponential jump-size data (c, lambda). Zero Levy maps to c = 0.
struct ExpJumps {
  double c;
  double lambda;
};

ExpJumps exponential_jumps(const LevySpec& levy) {
  if (is_zero(levy)) return {0.0, 1.0};
  const auto& cp = std::get<CompoundPoisson>(levy);
  if (const auto* e = std::get_if<ExponentialJumps>(&cp.jumps)) return {cp.rate, e->rate};
  throw Error(ErrorKind::UnsupportedLevy, "closed form needs exponential jump sizes");
}

bool has_exponential_jumps(const LevySpec& levy) {
  if (is_zero(levy)) return true;
  return std::holds_alternative<ExponentialJumps>(std::get<CompoundPoisson>(levy).jumps);
}

// Time scale on which psi_uv relaxes to its fixed point.
double relaxation_scale(double u, double v, double b, double sigma) {
  const double g = gamma_v(b, sigma, v);
  const double rate = std::max({g, 0.5 * sigma * sigma * std::abs(u), 1e-6});
  return 1.0 / rate;
}

// log(1 + K (e^{g} - 1)) for K >= 0 or g <= 0 (argument stays positive).
double log_one_plus_k_expm1(double k, double g) {
  if (k == 0.0) return 0.0;
  if (g < 30.0) return std::log1p(k * std::expm1(g));
  return g + std::log(k + (1.0 - k) * std::exp(-g));
}

// Integral of psi_{u,0} over [0, t].
double int_psi_u0(double u, double b, double sigma, double t) {
  const double s2 = sigma * sigma;
  if (std::abs(b) < kCriticalThreshold) return -(2.0 / s2) * std::log1p(-0.5 * s2 * u * t);
  return -(2.0 / s2) * log_one_plus_k_expm1(s2 * u / (2.0 * b), -b * t);
}

template <class Psi>
double immigration_quadrature(const LevySpec& levy, Psi&& psi, double t, double scale) {
  if (is_zero(levy) || t <= 0.0) return 0.0;
  return integrate_from_zero([&](double s) { return immigration_integrand(levy, psi(s)); }, t, scale);
}

}  // namespace

void validate(const RiccatiInputs& in) {
  require_nonpositive(in.u, in.v);
  if (!(in.sigma > 0.0)) throw Error(ErrorKind::DomainError, "sigma must be > 0");
}

double gamma_v(double b, double sigma, double v) { return std::sqrt(b * b - 2.0 * sigma * sigma * v); }

double psi_uv(const RiccatiInputs& in, double t) {
  validate(in);
  require_time(t);
  const auto [u, v, b, sigma] = in;
  const double s2 = sigma * sigma;
  const double g = gamma_v(b, sigma, v);
  if (g == 0.0) return u / (1.0 - 0.5 * s2 * u * t);

  const double gt = g * t;
  double num = 0.0;
  double den = 0.0;
  if (gt < kSmallArgument) {
    const double p = 1.0 + std::exp(-gt);
    const double m = -std::expm1(-gt);
    num = u * g * p + (-u * b + 2.0 * v) * m;
    den = g * p + (-s2 * u + b) * m;
  } else {
    const double e = std::exp(-gt);
    const double gpb = gamma_plus_b(g, b, sigma, v);
    num = (u * (g - b) + 2.0 * v) + e * (u * gpb - 2.0 * v);
    den = (gpb - s2 * u) + e * (g - b + s2 * u);
  }
  return num / den;
}

double int_psi_uv(const RiccatiInputs& in, double t) {
  validate(in);
  require_time(t);
  const auto [u, v, b, sigma] = in;
  const double s2 = sigma * sigma;
  const double g = gamma_v(b, sigma, v);
  if (g == 0.0) return -(2.0 / s2) * std::log1p(-0.5 * s2 * u * t);

  const double gt = g * t;
  const double k = (-s2 * u + b) / g;
  if (gt < kSmallArgument) {
    // log(cosh x + k sinh x) = log1p(2 sinh^2(x/2) + k sinh x), x = gt/2.
    const double x = 0.5 * gt;
    const double sh = std::sinh(0.5 * x);
    return (b / s2) * t - (2.0 / s2) * std::log1p(2.0 * sh * sh + k * std::sinh(x));
  }
  const double e = std::exp(-gt);
  const double gpb = gamma_plus_b(g, b, sigma, v);
  const double one_plus_k = (gpb - s2 * u) / g;
  const double one_minus_k = (g - b + s2 * u) / g;
  // b - gamma without cancellation when b > 0.
  const double b_minus_g = b > 0.0 ? 2.0 * s2 * v / (g + b) : b - g;
  return (b_minus_g / s2) * t - (2.0 / s2) * std::log(0.5 * (one_plus_k + e * one_minus_k));
}

double immigration_integrand(const LevySpec& levy, double psi) {
  if (!(psi <= 0.0)) throw Error(ErrorKind::DomainError, "immigration integrand needs psi <= 0");
  const auto* cp = std::get_if<CompoundPoisson>(&levy);
  if (cp == nullptr || psi == 0.0) return 0.0;
  const double c = cp->rate;
  return std::visit(detail::overloaded{
                        [&](const ExponentialJumps& e) { return c * psi / (e.rate - psi); },
                        [&](const ConstantJumps& k) { return c * std::expm1(k.size * psi); },
                        [&](const GammaJumps& g) { return c * std::expm1(-g.shape * std::log1p(-psi / g.rate)); },
                    },
                    cp->jumps);
}

double immigration_integral(const ModelParams& params, double u, double v, double t) {
  require_nonpositive(u, v);
  require_time(t);
  const RiccatiInputs in{u, v, params.b(), params.sigma()};
  return immigration_quadrature(
      params.levy(), [&](double s) { return psi_uv(in, s); }, t,
      relaxation_scale(u, v, params.b(), params.sigma()));
}

double joint_laplace_quadrature(const ModelParams& params, double u, double v, double t) {
  require_nonpositive(u, v);
  require_time(t);
  const RiccatiInputs in{u, v, params.b(), params.sigma()};
  const double exponent = psi_uv(in, t) * params.y0() + params.a() * int_psi_uv(in, t) +
                          immigration_integral(params, u, v, t);
  return std::exp(exponent);
}

double joint_laplace(const ModelParams& params, double u, double v, double t) {
  require_nonpositive(u, v);
  require_time(t);
  if (has_exponential_jumps(params.levy())) {
    const RiccatiInputs in{u, v, params.b(), params.sigma()};
    if (params.b() == 0.0) {
      return std::exp(psi_uv(in, t) * params.y0() + bajd_critical_phi(params, u, v, t));
    }
    if (params.b() < 0.0 && v == 0.0) {
      return std::exp(psi_u0(u, params.b(), params.sigma(), t) * params.y0() +
                      bajd_supercritical_phi(params, u, t));
    }
  }
  return joint_laplace_quadrature(params, u, v, t);
}

double bajd_critical_phi(const ModelParams& params, double u, double v, double t) {
  if (params.b() != 0.0) throw Error(ErrorKind::NotCritical, "critical closed form needs b = 0");
  require_nonpositive(u, v);
  require_time(t);
  const auto [c, lambda] = exponential_jumps(params.levy());
  const double sigma = params.sigma();
  const double s2 = sigma * sigma;
  const double diffusion_part = params.a() * int_psi_uv({u, v, 0.0, sigma}, t);
  if (c == 0.0) return diffusion_part;

  if (v == 0.0) {
    return diffusion_part - (2.0 * c / (s2 * lambda)) * std::log1p(-s2 * lambda * u * t / (2.0 * (lambda - u)));
  }

  const double g = std::sqrt(-2.0 * s2 * v);
  const double gt = g * t;
  const double alpha1 = u * g + 2.0 * v;
  const double alpha2 = u * g - 2.0 * v;
  const double beta1 = lambda * (-s2 * u + g) - alpha1;
  const double beta2_lead = lambda * (s2 * u + g);
  const double beta2 = beta2_lead - alpha2;
  const double one_minus_e = -std::expm1(-gt);

  if (std::abs(beta2) <= kDegenerateRelTol * (std::abs(beta2_lead) + std::abs(alpha2))) {
    return diffusion_part + (c / beta1) * (alpha1 * t + (alpha2 / g) * one_minus_e);
  }

  // c * ((a2/b2) t + (1/g)(a1/b1 - a2/b2) L), L = log((b1 e^{gt} + b2)/(b1 + b2)),
  // regrouped so the a2/b2 terms cancel analytically:
  //   (a2/b2)(t - L/g) = a2 (1 - e^{-gt}) / (g (b1 + b2)) * log1p(x)/x,
  //   x = b2 (e^{-gt} - 1) / (b1 + b2).
  const double beta_sum = beta1 + beta2;
  double log_ratio = 0.0;
  if (gt < kSmallArgument) {
    log_ratio = std::log1p(beta1 * std::expm1(gt) / beta_sum);
  } else {
    log_ratio = gt + std::log((beta1 + beta2 * std::exp(-gt)) / beta_sum);
  }
  const double x = -beta2 * one_minus_e / beta_sum;
  const double jump_part =
      c * (alpha1 * log_ratio / (g * beta1) + alpha2 * one_minus_e * log1p_ratio(x) / (g * beta_sum));
  return diffusion_part + jump_part;
}

double bajd_supercritical_phi(const ModelParams& params, double u, double t) {
  const double b = params.b();
  if (!(b < 0.0)) throw Error(ErrorKind::NotSupercritical, "supercritical closed form needs b < 0");
  require_nonpositive(u, 0.0);
  require_time(t);
  const auto [c, lambda] = exponential_jumps(params.levy());
  const double a = params.a();
  const double s2 = params.sigma() * params.sigma();
  const double a_coef = -s2 * lambda + 2.0 * b;

  const double fixed_point = 2.0 * b / s2;
  if (std::abs(u - fixed_point) <= kDegenerateRelTol * std::abs(fixed_point)) {
    return 2.0 * b * (2.0 * a * b - c * s2 - a * s2 * lambda) / (s2 * a_coef) * t;
  }

  const double g = -b * t;
  const double diffusion_part = -(2.0 * a / s2) * log_one_plus_k_expm1(s2 * u / (2.0 * b), g);
  if (c == 0.0 || u == 0.0) return diffusion_part;

  // log(((A u e^{-bt} + (s2 u - 2b) lambda) / (2b (u - lambda))), A = -s2 lambda + 2b.
  const double den = 2.0 * b * (u - lambda);
  double log_ratio = 0.0;
  if (g < 30.0) {
    log_ratio = std::log1p(a_coef * u * std::expm1(g) / den);
  } else {
    log_ratio = g + std::log((a_coef * u + (s2 * u - 2.0 * b) * lambda * std::exp(-g)) / den);
  }
  return diffusion_part + (2.0 * c / a_coef) * log_ratio;
}

double psi_u0(double u, double b, double sigma, double t) {
  require_nonpositive(u, 0.0);
  require_time(t);
  const double s2 = sigma * sigma;
  if (std::abs(b) < kCriticalThreshold) return u / (1.0 - 0.5 * s2 * u * t);
  if (b > 0.0) {
    const double e = std::exp(-b * t);
    return 2.0 * u * b * e / (2.0 * b + s2 * u * std::expm1(-b * t));
  }
  const double f = std::exp(b * t);
  return 2.0 * u * b / (-s2 * u * std::expm1(b * t) + 2.0 * b * f);
}

double psi_0v(double v, double b, double sigma, double t) {
  require_nonpositive(0.0, v);
  require_time(t);
  const double g = gamma_v(b, sigma, v);
  if (g == 0.0) return 0.0;
  const double gt = g * t;
  const double m = -std::expm1(-gt);
  if (gt < kSmallArgument) return 2.0 * v * m / (g * (2.0 - m) + b * m);
  const double e = std::exp(-gt);
  return 2.0 * v * m / (gamma_plus_b(g, b, sigma, v) + e * (g - b));
}

double marginal_laplace_y(const ModelParams& params, double u, double t) {
  require_nonpositive(u, 0.0);
  require_time(t);
  const double b = params.b();
  const double sigma = params.sigma();
  const double psi_t = psi_u0(u, b, sigma, t);
  double phi = 0.0;
  if (has_exponential_jumps(params.levy()) && b == 0.0) {
    phi = bajd_critical_phi(params, u, 0.0, t);
  } else if (has_exponential_jumps(params.levy()) && b < 0.0) {
    phi = bajd_supercritical_phi(params, u, t);
  } else {
    phi = params.a() * int_psi_u0(u, b, sigma, t) +
          immigration_quadrature(
              params.levy(), [&](double s) { return psi_u0(u, b, sigma, s); }, t,
              relaxation_scale(u, 0.0, b, sigma));
  }
  return std::exp(psi_t * params.y0() + phi);
}

double marginal_laplace_int_y(const ModelParams& params, double v, double t) {
  require_nonpositive(0.0, v);
  require_time(t);
  const double b = params.b();
  const double sigma = params.sigma();
  const double psi_t = psi_0v(v, b, sigma, t);
  double phi = 0.0;
  if (has_exponential_jumps(params.levy()) && b == 0.0) {
    phi = bajd_critical_phi(params, 0.0, v, t);
  } else {
    phi = params.a() * int_psi_uv({0.0, v, b, sigma}, t) +
          immigration_quadrature(
              params.levy(), [&](double s) { return psi_0v(v, b, sigma, s); }, t,
              relaxation_scale(0.0, v, b, sigma));
  }
  return std::exp(psi_t * params.y0() + phi);
}

double critical_limit_laplace(double u, double v, double a, double sigma, const LevySpec& levy) {
  require_nonpositive(u, v);
  const double drift = a + levy_first_moment(levy);
  // (cosh(g/2) - (s2 u / g) sinh(g/2))^{-2 drift / s2} = exp(drift * int_0^1 psi_uv) at b = 0.
  return std::exp(drift * int_psi_uv({u, v, 0.0, sigma}, 1.0));
}

double supercritical_v_laplace(const ModelParams& params, double u) {
  const double b = params.b();
  if (!(b < 0.0)) throw Error(ErrorKind::NotSupercritical, "V exists only for b < 0");
  require_nonpositive(u, 0.0);
  if (u == 0.0) return 1.0;
  const double s2 = params.sigma() * params.sigma();
  const double k = s2 * u / (2.0 * b);
  const double closed = u * params.y0() / (1.0 + k) - (2.0 * params.a() / s2) * std::log1p(k);
  double immigration = 0.0;
  if (!is_zero(params.levy())) {
    // Integrand is bounded by E(J_1)|u|e^{by}; truncating at 60/|b| leaves a
    // tail below E(J_1)|u|e^{-60}/|b|.
    const double y_max = 60.0 / std::abs(b);
    immigration = integrate_from_zero(
        [&](double y) {
          const double eby = std::exp(b * y);
          return immigration_integrand(params.levy(), u * eby / (1.0 + k * eby));
        },
        y_max, 1.0 / std::abs(b));
  }
  return std::exp(closed + immigration);
}

double stationary_laplace(const ModelParams& params, double u) {
  const double b = params.b();
  if (!(b > 0.0)) throw Error(ErrorKind::NotSubcritical, "stationary law needs b > 0");
  require_nonpositive(u, 0.0);
  if (u == 0.0) return 1.0;
  const double a = params.a();
  const double s2 = params.sigma() * params.sigma();
  const double drift = a + levy_first_moment(params.levy());
  // F(v)/R(v), F(v) = a v + int (e^{vz} - 1) m(dz), R(v) = (s2/2) v^2 - b v.
  const auto ratio = [&](double v) {
    const double r_over_v = 0.5 * s2 * v - b;
    if (std::abs(v) < 1e-8) return drift / r_over_v;
    return (a + immigration_integrand(params.levy(), v) / v) / r_over_v;
  };
  return std::exp(adaptive_simpson(ratio, u, 0.0));
}

}  // namespace jcir
