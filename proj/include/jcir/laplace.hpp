#pragma once

#include "jcir/model.hpp"

namespace jcir {

// Arguments of the Riccati equation psi' = (sigma^2/2) psi^2 - b psi + v,
// psi(0) = u, on the negative orthant u, v <= 0.
struct RiccatiInputs {
  double u;
  double v;
  double b;
  double sigma;
};

// Throws DomainError unless u <= 0, v <= 0 and sigma > 0.
void validate(const RiccatiInputs& in);

// sqrt(b^2 - 2 sigma^2 v).
double gamma_v(double b, double sigma, double v);

// Closed-form solution of the Riccati equation at time t. Evaluated with the
// factor e^{gamma t / 2} cancelled, so it is finite for any t.
double psi_uv(const RiccatiInputs& in, double t);

// Integral of psi_uv over [0, t], closed form.
double int_psi_uv(const RiccatiInputs& in, double t);

// Integral of (e^{z psi} - 1) against the Levy measure, psi <= 0.
double immigration_integrand(const LevySpec& levy, double psi);

// Integral over [0, t] of immigration_integrand(levy, psi_uv(s)) by adaptive
// Simpson quadrature.
double immigration_integral(const ModelParams& params, double u, double v, double t);

// E[exp(u Y_t + v int_0^t Y_s ds)]. Uses the exponential-jump closed forms
// when they apply and quadrature of the immigration term otherwise.
double joint_laplace(const ModelParams& params, double u, double v, double t);

// Same transform, always through the quadrature path.
double joint_laplace_quadrature(const ModelParams& params, double u, double v, double t);

// Exponent phi(t) with E[exp(u Y_t + v int Y)] = exp(psi(t) y0 + phi(t)) for
// b = 0 and exponential jumps (or no jumps). Throws NotCritical if b != 0 and
// UnsupportedLevy for other jump laws.
double bajd_critical_phi(const ModelParams& params, double u, double v, double t);

// Exponent phi(t) with E[exp(u Y_t)] = exp(psi_{u,0}(t) y0 + phi(t)) for
// b < 0 and exponential jumps (or no jumps).
double bajd_supercritical_phi(const ModelParams& params, double u, double t);

// psi_{u,0} and psi_{0,v} in their simplified one-argument forms.
double psi_u0(double u, double b, double sigma, double t);
double psi_0v(double v, double b, double sigma, double t);

// E[exp(u Y_t)].
double marginal_laplace_y(const ModelParams& params, double u, double t);

// E[exp(v int_0^t Y_s ds)].
double marginal_laplace_int_y(const ModelParams& params, double v, double t);

// E[exp(u Z_1 + v int_0^1 Z_s ds)] for the critical diffusion
// dZ = (a + E J_1) dt + sigma sqrt(Z) dW, Z_0 = 0.
double critical_limit_laplace(double u, double v, double a, double sigma, const LevySpec& levy);

// E[exp(u V)] where V is the almost sure limit of e^{bt} Y_t, b < 0.
double supercritical_v_laplace(const ModelParams& params, double u);

// Laplace transform of the stationary distribution at u <= 0, b > 0.
double stationary_laplace(const ModelParams& params, double u);

}  // namespace jcir
