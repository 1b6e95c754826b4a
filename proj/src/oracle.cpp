// SPDX-License-Identifier: Apache-2.0
#include "vohd/oracle.hpp"

#include <cmath>
#include <string>

#include "vohd/errors.hpp"
#include "vohd/specfun.hpp"

namespace vohd::oracle {
namespace {

// Quadrature nodes never sit exactly on an endpoint, but a distance below
// ~2 ulp collapses exp(distance) onto the endpoint itself, where the user
// function may be singular. Flooring the distance shifts only nodes whose
// weight is below ~1e-15, so the perturbation is far under the tolerance.
constexpr double kDistanceFloor = 4e-16;

struct point_setup {
  double alpha;
  double dalpha;
  double length;  // ln(t/a) on the left, ln(b/t) on the right
};

point_setup prepare(model::side s, const model::function_model& x,
                    const model::order_function& order, double t) {
  const bool left = s == model::side::left;
  if (left ? !(t > x.a() && t <= x.b()) : !(t >= x.a() && t < x.b())) {
    throw domain_error("t = " + std::to_string(t) +
                       " outside the operator's domain [" +
                       std::to_string(x.a()) + ", " + std::to_string(x.b()) +
                       "]");
  }
  const auto [alpha, dalpha] = order.value_and_derivative(t);
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw domain_error("order alpha(t) = " + std::to_string(alpha) +
                       " outside (0,1) at t = " + std::to_string(t));
  }
  return {alpha, dalpha, left ? std::log(t / x.a()) : std::log(x.b() / t)};
}

// Integration variable u = ln(t/tau) (left) or ln(tau/t) (right) runs over
// (0, L). tau is rebuilt from whichever endpoint is nearer so that ln-ratio
// arguments inside x stay exact: near the outer endpoint tau = a e^{u'} or
// b e^{-u'} with u' = L - u.
double tau_from(model::side s, double t, double outer, double u,
                double u_tail) {
  const double un = std::fmax(u, kDistanceFloor);
  const double ut = std::fmax(u_tail, kDistanceFloor);
  if (s == model::side::left) {
    return un <= ut ? t * std::exp(-un) : outer * std::exp(ut);
  }
  return un <= ut ? t * std::exp(un) : outer * std::exp(-ut);
}

}  // namespace

double type1(model::side s, const model::function_model& x,
             const model::order_function& order, double t,
             const quad::quadrature_config& cfg) {
  const point_setup p = prepare(s, x, order, t);
  const double outer = s == model::side::left ? x.a() : x.b();
  const double integral = quad::tanh_sinh(
      [&](double u, double u_tail) {
        const double tau = tau_from(s, t, outer, u, u_tail);
        return std::pow(std::fmax(u, kDistanceFloor), -p.alpha) *
               x.derivative(tau) * tau;
      },
      p.length, cfg);
  const double value = integral / specfun::gamma(1.0 - p.alpha);
  return s == model::side::left ? value : -value;
}

double correction_12(model::side s, const model::function_model& x,
                     const model::order_function& order, double t,
                     const quad::quadrature_config& cfg) {
  const point_setup p = prepare(s, x, order, t);
  if (p.dalpha == 0.0) return 0.0;
  const double outer = s == model::side::left ? x.a() : x.b();
  const double integral = quad::tanh_sinh(
      [&](double u, double u_tail) {
        const double tau = tau_from(s, t, outer, u, u_tail);
        const double un = std::fmax(u, kDistanceFloor);
        return std::pow(un, 1.0 - p.alpha) *
               (1.0 / (1.0 - p.alpha) - std::log(un)) * x.derivative(tau) *
               tau;
      },
      p.length, cfg);
  return t * p.dalpha / specfun::gamma(2.0 - p.alpha) * integral;
}

double correction_23(model::side s, const model::function_model& x,
                     const model::order_function& order, double t,
                     const quad::quadrature_config& cfg) {
  const point_setup p = prepare(s, x, order, t);
  if (p.dalpha == 0.0) return 0.0;
  const double outer = s == model::side::left ? x.a() : x.b();
  const double x_outer = x.value(outer);
  const double integral = quad::tanh_sinh(
      [&](double u, double u_tail) {
        const double tau = tau_from(s, t, outer, u, u_tail);
        // The Jacobian tau cancels the 1/tau in the integrand.
        return std::pow(std::fmax(u, kDistanceFloor), -p.alpha) *
               (x.value(tau) - x_outer);
      },
      p.length, cfg);
  const double coeff = t * p.dalpha * specfun::digamma(1.0 - p.alpha) /
                       specfun::gamma(1.0 - p.alpha) * integral;
  return s == model::side::left ? coeff : -coeff;
}

double evaluate(model::side s, int type, const model::function_model& x,
                const model::order_function& order, double t,
                const quad::quadrature_config& cfg) {
  if (type < 1 || type > 3) {
    throw config_error("operator type must be 1, 2, or 3");
  }
  double v = type1(s, x, order, t, cfg);
  if (type >= 2) v += correction_12(s, x, order, t, cfg);
  if (type == 3) v += correction_23(s, x, order, t, cfg);
  return v;
}

}  // namespace vohd::oracle
