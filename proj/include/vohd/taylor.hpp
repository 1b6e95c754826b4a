// SPDX-License-Identifier: Apache-2.0
//
// Truncated Taylor series (jets) and first-order dual numbers. A jet stores
// coefficients c[j] = f^(j)(t0)/j! for j = 0..K; arithmetic propagates them
// through the usual convolution recurrences. Duals carry {value, derivative}
// for cheap first derivatives along the same code paths.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "vohd/errors.hpp"

namespace vohd::taylor {

class jet {
 public:
  jet() : coef_(1, 0.0) {}
  explicit jet(std::size_t order) : coef_(order + 1, 0.0) {}

  static jet constant(double v, std::size_t order) {
    jet j(order);
    j.coef_[0] = v;
    return j;
  }
  // The identity function t at expansion point t0.
  static jet variable(double t0, std::size_t order) {
    jet j(order);
    j.coef_[0] = t0;
    if (order >= 1) j.coef_[1] = 1.0;
    return j;
  }

  std::size_t order() const { return coef_.size() - 1; }
  double operator[](std::size_t i) const { return coef_[i]; }
  double& operator[](std::size_t i) { return coef_[i]; }
  const std::vector<double>& coefficients() const { return coef_; }

 private:
  std::vector<double> coef_;
};

inline jet operator+(const jet& a, const jet& b) {
  jet r(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline jet operator-(const jet& a, const jet& b) {
  jet r(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline jet operator-(const jet& a) {
  jet r(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) r[i] = -a[i];
  return r;
}

inline jet operator*(const jet& a, const jet& b) {
  jet r(a.order());
  for (std::size_t k = 0; k <= a.order(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i <= k; ++i) s += a[i] * b[k - i];
    r[k] = s;
  }
  return r;
}

inline jet operator/(const jet& a, const jet& b) {
  if (b[0] == 0.0) throw pole_error("jet division by series with zero value");
  jet r(a.order());
  for (std::size_t k = 0; k <= a.order(); ++k) {
    double s = a[k];
    for (std::size_t i = 1; i <= k; ++i) s -= b[i] * r[k - i];
    r[k] = s / b[0];
  }
  return r;
}

inline jet log(const jet& u) {
  if (!(u[0] > 0.0)) {
    throw domain_error("jet log: requires positive value, got " +
                       std::to_string(u[0]));
  }
  jet v(u.order());
  v[0] = std::log(u[0]);
  for (std::size_t k = 1; k <= u.order(); ++k) {
    double s = static_cast<double>(k) * u[k];
    for (std::size_t m = 1; m < k; ++m) {
      s -= static_cast<double>(m) * v[m] * u[k - m];
    }
    v[k] = s / (static_cast<double>(k) * u[0]);
  }
  return v;
}

inline jet exp(const jet& u) {
  jet w(u.order());
  w[0] = std::exp(u[0]);
  for (std::size_t k = 1; k <= u.order(); ++k) {
    double s = 0.0;
    for (std::size_t m = 1; m <= k; ++m) {
      s += static_cast<double>(m) * u[m] * w[k - m];
    }
    w[k] = s / static_cast<double>(k);
  }
  return w;
}

// sin and cos share one recurrence; computing them jointly keeps both O(K^2).
inline void sin_cos(const jet& u, jet& s, jet& c) {
  s = jet(u.order());
  c = jet(u.order());
  s[0] = std::sin(u[0]);
  c[0] = std::cos(u[0]);
  for (std::size_t k = 1; k <= u.order(); ++k) {
    double as = 0.0;
    double ac = 0.0;
    for (std::size_t m = 1; m <= k; ++m) {
      as += static_cast<double>(m) * u[m] * c[k - m];
      ac += static_cast<double>(m) * u[m] * s[k - m];
    }
    s[k] = as / static_cast<double>(k);
    c[k] = -ac / static_cast<double>(k);
  }
}

inline jet sin(const jet& u) {
  jet s, c;
  sin_cos(u, s, c);
  return s;
}

inline jet cos(const jet& u) {
  jet s, c;
  sin_cos(u, s, c);
  return c;
}

// u^e for real exponent. Integer exponents go through repeated squaring so
// any base (including zero and negatives) works; fractional exponents need
// a positive leading value.
inline jet pow(const jet& u, double e) {
  const double re = std::nearbyint(e);
  if (re == e && std::fabs(e) < 64.0) {
    long n = static_cast<long>(re);
    const bool invert = n < 0;
    if (invert) n = -n;
    jet base = u;
    jet acc = jet::constant(1.0, u.order());
    while (n > 0) {
      if (n & 1) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    if (invert) return jet::constant(1.0, u.order()) / acc;
    return acc;
  }
  if (!(u[0] > 0.0)) {
    throw domain_error(
        "jet pow: fractional exponent requires positive base, got " +
        std::to_string(u[0]));
  }
  jet w(u.order());
  w[0] = std::pow(u[0], e);
  for (std::size_t k = 1; k <= u.order(); ++k) {
    double s = 0.0;
    for (std::size_t m = 1; m <= k; ++m) {
      s += (e * static_cast<double>(m) - static_cast<double>(k - m)) * u[m] *
           w[k - m];
    }
    w[k] = s / (static_cast<double>(k) * u[0]);
  }
  return w;
}

inline jet sqrt(const jet& u) { return pow(u, 0.5); }

// First-order dual number: value and derivative with respect to t.
struct dual {
  double v = 0.0;
  double d = 0.0;

  static dual constant(double x) { return {x, 0.0}; }
  static dual variable(double x) { return {x, 1.0}; }
};

inline dual operator+(dual a, dual b) { return {a.v + b.v, a.d + b.d}; }
inline dual operator-(dual a, dual b) { return {a.v - b.v, a.d - b.d}; }
inline dual operator-(dual a) { return {-a.v, -a.d}; }
inline dual operator*(dual a, dual b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
inline dual operator/(dual a, dual b) {
  if (b.v == 0.0) throw pole_error("dual division by zero");
  const double q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}

inline dual log(dual a) {
  if (!(a.v > 0.0)) {
    throw domain_error("dual log: requires positive value, got " +
                       std::to_string(a.v));
  }
  return {std::log(a.v), a.d / a.v};
}
inline dual exp(dual a) {
  const double e = std::exp(a.v);
  return {e, e * a.d};
}
inline dual sin(dual a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline dual cos(dual a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline dual sqrt(dual a) {
  if (!(a.v > 0.0)) {
    throw domain_error("dual sqrt: requires positive value, got " +
                       std::to_string(a.v));
  }
  const double r = std::sqrt(a.v);
  return {r, 0.5 * a.d / r};
}
inline dual pow(dual a, double e) {
  const double re = std::nearbyint(e);
  if (re == e && std::fabs(e) < 64.0) {
    long n = static_cast<long>(re);
    const bool invert = n < 0;
    if (invert) n = -n;
    dual base = a;
    dual acc = dual::constant(1.0);
    while (n > 0) {
      if (n & 1) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    if (invert) return dual::constant(1.0) / acc;
    return acc;
  }
  if (!(a.v > 0.0)) {
    throw domain_error(
        "dual pow: fractional exponent requires positive base, got " +
        std::to_string(a.v));
  }
  const double p = std::pow(a.v, e);
  return {p, e * p / a.v * a.d};
}

}  // namespace vohd::taylor
