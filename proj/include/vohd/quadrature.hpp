// SPDX-License-Identifier: Apache-2.0
//
// Quadrature engines. tanh_sinh integrates over (0, L) with integrable
// endpoint singularities: the substitution u = L/(1 + e^{-pi sinh s})
// pushes both endpoints to doubly-exponential decay, so u^{-alpha} kernels
// and ln u factors need no special casing. gauss16 is a fixed 16-point
// Gauss-Legendre rule for smooth integrands on a finite cell.
#pragma once

#include <array>
#include <cmath>
#include <string>

#include "vohd/errors.hpp"

namespace vohd::quad {

struct quadrature_config {
  double tolerance = 1e-10;  // absolute, on the value of the integral
  int max_levels = 12;

  void validate() const {
    if (!(tolerance > 0.0)) {
      throw config_error("quadrature tolerance must be positive");
    }
    if (max_levels < 3) {
      throw config_error("quadrature needs at least 3 refinement levels");
    }
  }
};

namespace detail {

// One tanh-sinh node at abscissa s: position as the pair of distances
// {from 0, from L} plus the transformed weight. Both distances come out of
// the same stable expression, so the integrand can reconstruct its argument
// from whichever endpoint is nearer without cancellation.
struct ts_node {
  double near0;   // u
  double nearL;   // L - u
  double weight;  // du/ds
};

inline bool make_node(double s, double length, ts_node& out) {
  constexpr double kPi = 3.141592653589793238462643383279502884;
  const double y = kPi * std::sinh(s);
  // Beyond |y| = 700 the weight underflows and u collapses onto an
  // endpoint; the discarded tail is O(e^{-(1-alpha) 700}).
  if (std::fabs(y) > 700.0) return false;
  const double q = std::exp(-std::fabs(y));
  const double main = length / (1.0 + q);
  const double tail = length * q / (1.0 + q);
  if (tail == 0.0) return false;
  if (y >= 0.0) {
    out.near0 = main;
    out.nearL = tail;
  } else {
    out.near0 = tail;
    out.nearL = main;
  }
  out.weight = length * kPi * std::cosh(s) * q / ((1.0 + q) * (1.0 + q));
  return true;
}

}  // namespace detail

// f(u, l_minus_u) -> integrand value at u in (0, L); both arguments are
// positive and exact to roundoff near their respective endpoints.
// Throws convergence_error when successive refinements fail to agree within
// cfg.tolerance before cfg.max_levels is reached.
template <class F>
double tanh_sinh(F&& f, double length, const quadrature_config& cfg) {
  cfg.validate();
  if (!(length > 0.0)) {
    throw domain_error("tanh_sinh: integration length must be positive, got " +
                       std::to_string(length));
  }

  // Level 0: unit step. Each level halves the step, evaluating only the new
  // odd-numbered abscissas.
  double h = 1.0;
  double sum = 0.0;  // running sum of w_i f_i, all levels so far
  {
    detail::ts_node nd;
    if (detail::make_node(0.0, length, nd)) {
      sum += nd.weight * f(nd.near0, nd.nearL);
    }
    for (int sign = -1; sign <= 1; sign += 2) {
      for (int i = 1;; ++i) {
        if (!detail::make_node(sign * h * i, length, nd)) break;
        sum += nd.weight * f(nd.near0, nd.nearL);
      }
    }
  }
  double estimate = h * sum;

  for (int level = 1; level <= cfg.max_levels; ++level) {
    h *= 0.5;
    detail::ts_node nd;
    double add = 0.0;
    double comp = 0.0;  // Kahan correction
    for (int sign = -1; sign <= 1; sign += 2) {
      for (int i = 1;; i += 2) {  // odd multiples only
        if (!detail::make_node(sign * h * i, length, nd)) break;
        const double term = nd.weight * f(nd.near0, nd.nearL);
        const double y = term - comp;
        const double t = add + y;
        comp = (t - add) - y;
        add = t;
      }
    }
    sum += add;
    const double next = h * sum;
    const double delta = std::fabs(next - estimate);
    estimate = next;
    if (level >= 2 && delta <= cfg.tolerance) return estimate;
  }
  throw convergence_error(
      "tanh_sinh: no convergence to tolerance " +
      std::to_string(cfg.tolerance) + " within " +
      std::to_string(cfg.max_levels) + " levels");
}

namespace detail {

struct gauss16_rule {
  std::array<double, 8> node;    // positive abscissas on (-1,1)
  std::array<double, 8> weight;

  gauss16_rule() {
    // Nodes are the positive roots of P_16, found by Newton from the
    // Chebyshev initial guess; weights w = 2/((1-x^2) P_16'(x)^2).
    constexpr int n = 16;
    constexpr double kPi = 3.141592653589793238462643383279502884;
    for (int i = 0; i < 8; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      node[i] = x;
      weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

inline const gauss16_rule& gauss16_data() {
  static const gauss16_rule rule;
  return rule;
}

}  // namespace detail

// Visits the 16 nodes of the rule scaled to [lo, hi] as (abscissa, weight);
// lets callers evaluate several integrands off one set of nodes.
template <class F>
void gauss16_each(double lo, double hi, F&& f) {
  const auto& rule = detail::gauss16_data();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int i = 0; i < 8; ++i) {
    const double d = half * rule.node[i];
    const double w = half * rule.weight[i];
    f(mid - d, w);
    f(mid + d, w);
  }
}

template <class F>
double gauss16(F&& f, double lo, double hi) {
  double sum = 0.0;
  gauss16_each(lo, hi, [&](double x, double w) { sum += w * f(x); });
  return sum;
}

}  // namespace vohd::quad
