// SPDX-License-Identifier: Apache-2.0
#include "vohd/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vohd/errors.hpp"
#include "vohd/quadrature.hpp"
#include "vohd/specfun.hpp"

namespace vohd::expansion {
namespace {

// Types 2/3 carry a ln ln(t/a) term; this close to the endpoint it is
// meaningless and the point is refused instead.
constexpr double kDegenerateWidth = 1e-6;

struct kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

double checked_alpha(const model::order_function& order, double t,
                     double* dalpha) {
  const auto [a, da] = order.value_and_derivative(t);
  if (!(a > 0.0) || !(a < 1.0)) {
    throw domain_error("order alpha(t) = " + std::to_string(a) +
                       " outside (0,1) at t = " + std::to_string(t));
  }
  if (dalpha) *dalpha = da;
  return a;
}

double grid_point(const approx_spec& spec, std::size_t t_index) {
  if (t_index >= spec.grid.size()) {
    throw config_error("grid index " + std::to_string(t_index) +
                       " out of range");
  }
  return spec.grid[t_index];
}

// Shared core of the A/B sums; sign_a multiplies the A-block terms by
// (-1)^k and sign_b flips the B block, which is exactly the right-side
// coefficient pattern.
double sum_blocks(const model::function_model& x, double alpha, double length,
                  const approx_spec& spec, const moment_table& moments,
                  std::size_t t_index, double t, bool mirrored) {
  kahan total;
  const std::vector<double> xk = x.x_sequence(t, spec.n);
  for (int k = 1; k <= spec.n; ++k) {
    const double sign = mirrored && (k % 2 == 1) ? -1.0 : 1.0;
    total.add(sign * coeff_a(k, spec.n, spec.N, alpha) *
              std::pow(length, k - alpha) * xk[k - 1]);
  }
  const double sign_b = mirrored ? -1.0 : 1.0;
  for (int k = spec.n; k <= spec.N; ++k) {
    total.add(sign_b * coeff_b(k, spec.n, alpha) *
              std::pow(length, spec.n - k - alpha) *
              moments.v(k - spec.n, t_index));
  }
  return total.sum;
}

// The t alpha' correction block shared by types 2 and 3; c is 1/(1-alpha)
// for type 2 and psi(2-alpha) for type 3.
double correction_block(double c, double alpha, double dalpha, double length,
                        const approx_spec& spec, const moment_table& moments,
                        std::size_t t_index, double t) {
  if (dalpha == 0.0) return 0.0;
  // W_p = V_p / L^p stays O(total variation); the binomial weights
  // c_p = binom(1-alpha, p)(-1)^p follow the rising-product recurrence
  // c_{p+1} = c_p (alpha-1+p)/(p+1).
  kahan s1;
  kahan s2;
  double cp = 1.0;
  std::vector<double> w(2 * spec.N + 1);
  for (int j = 0; j <= 2 * spec.N; ++j) {
    w[j] = moments.v(j, t_index) / std::pow(length, j);
  }
  for (int p = 0; p <= spec.N; ++p) {
    s1.add(cp * w[p]);
    for (int r = 1; r <= spec.N; ++r) {
      s2.add(cp * w[p + r] / r);
    }
    cp *= (alpha - 1.0 + p) / (p + 1.0);
  }
  return t * dalpha / specfun::gamma(2.0 - alpha) *
         std::pow(length, 1.0 - alpha) *
         ((c - std::log(length)) * s1.sum + s2.sum);
}

double approx_impl(int type, const model::function_model& x,
                   const model::order_function& order,
                   const approx_spec& spec, const moment_table& moments,
                   std::size_t t_index) {
  spec.validate();
  if (type < 1 || type > 3) {
    throw config_error("operator type must be 1, 2, or 3");
  }
  const double t = grid_point(spec, t_index);
  const bool left = spec.side == model::side::left;
  const double width = left ? t - spec.a : spec.b - t;
  if (!(width > 0.0)) {
    throw degenerate_point_error(
        "not evaluated: t coincides with the expansion endpoint");
  }
  if (type >= 2 && width < kDegenerateWidth) {
    throw degenerate_point_error(
        "not evaluated: t within " + std::to_string(kDegenerateWidth) +
        " of the endpoint, where the ln ln term degenerates");
  }
  double dalpha = 0.0;
  const double alpha = checked_alpha(order, t, &dalpha);
  const double length = left ? std::log(t / spec.a) : std::log(spec.b / t);
  double v = sum_blocks(x, alpha, length, spec, moments, t_index, t, !left);
  if (type >= 2) {
    const double c = type == 2 ? 1.0 / (1.0 - alpha)
                               : specfun::digamma(2.0 - alpha);
    // The correction enters with "+" on both sides; the right-side sign
    // pattern is confined to the A/B blocks.
    v += correction_block(c, alpha, dalpha, length, spec, moments, t_index,
                          t);
  }
  return v;
}

}  // namespace

void approx_spec::validate() const {
  if (!(a > 0.0) || !(a < b)) {
    throw config_error("expansion interval requires 0 < a < b");
  }
  if (n < 1) throw config_error("expansion requires n >= 1");
  if (N < n) throw config_error("expansion requires N >= n");
  if (type < 1 || type > 3) {
    throw config_error("operator type must be 1, 2, or 3");
  }
  if (grid.empty()) throw config_error("expansion grid is empty");
  const bool left = side == model::side::left;
  double prev = left ? a : a - 1.0;
  for (double t : grid) {
    if (left ? !(t > a && t <= b) : !(t >= a && t < b)) {
      throw config_error("grid point " + std::to_string(t) +
                         " outside the operator's domain");
    }
    if (!(t > prev)) {
      throw config_error("grid must be strictly increasing");
    }
    prev = t;
  }
}

double coeff_a(int k, int n, int N, double alpha_t) {
  if (k < 1 || k > n || N < n) {
    throw config_error("coeff_a requires 1 <= k <= n <= N");
  }
  kahan bracket;
  bracket.add(1.0);
  // term_p = gamma_ratio(alpha-n, p) / (gamma_ratio(alpha-n, n-k) (p-n+k)!)
  // stepped as term_{p+1} = term_p (alpha-n+p)/(p-n+k+1).
  const int p0 = n - k + 1;
  double term = specfun::gamma_ratio(alpha_t - n, p0) /
                specfun::gamma_ratio(alpha_t - n, n - k);
  for (int p = p0; p <= N; ++p) {
    bracket.add(term);
    term *= (alpha_t - n + p) / (p - n + k + 1);
  }
  return bracket.sum / specfun::gamma(k + 1.0 - alpha_t);
}

double coeff_b(int k, int n, double alpha_t) {
  if (k < n) throw config_error("coeff_b requires k >= n");
  // Gamma(alpha-n+k) = Gamma(alpha) gamma_ratio(alpha, k-n), so the
  // Gamma(alpha) in the denominator cancels and no near-pole Gamma is hit.
  double fact = 1.0;
  for (int j = 2; j <= k - n; ++j) fact *= j;
  return specfun::gamma_ratio(alpha_t, k - n) /
         (specfun::gamma(1.0 - alpha_t) * fact);
}

moment_table::moment_table(const model::function_model& x,
                           const approx_spec& spec) {
  spec.validate();
  depth_ = static_cast<std::size_t>(2 * spec.N);
  points_ = spec.grid.size();
  data_.assign((depth_ + 1) * points_, 0.0);

  const bool left = spec.side == model::side::left;
  // Accumulate cell integrals walking away from the anchored endpoint
  // (a on the left, b on the right), so V at each grid point is a prefix
  // (suffix) sum. One pass shares the 16 x'(tau) evaluations of each cell
  // across every k.
  std::vector<double> acc(depth_ + 1, 0.0);
  std::vector<double> cell(depth_ + 1, 0.0);
  const double anchor = left ? spec.a : spec.b;

  auto add_cell = [&](double lo, double hi) {
    std::fill(cell.begin(), cell.end(), 0.0);
    quad::gauss16_each(lo, hi, [&](double tau, double weight) {
      const double base = left ? std::log(tau / spec.a) : std::log(spec.b / tau);
      const double dx = weight * x.derivative(tau);
      double p = 1.0;
      for (std::size_t k = 0; k <= depth_; ++k) {
        cell[k] += dx * p;
        p *= base;
      }
    });
  };

  if (left) {
    double prev = anchor;
    for (std::size_t i = 0; i < points_; ++i) {
      add_cell(prev, spec.grid[i]);
      for (std::size_t k = 0; k <= depth_; ++k) {
        acc[k] += cell[k];
        data_[k * points_ + i] = acc[k];
      }
      prev = spec.grid[i];
    }
  } else {
    double prev = anchor;
    for (std::size_t i = points_; i-- > 0;) {
      add_cell(spec.grid[i], prev);
      for (std::size_t k = 0; k <= depth_; ++k) {
        acc[k] += cell[k];
        data_[k * points_ + i] = acc[k];
      }
      prev = spec.grid[i];
    }
  }
}

moment_table build_moments(const model::function_model& x,
                           const approx_spec& spec) {
  return moment_table(x, spec);
}

double approx_type1(const model::function_model& x,
                    const model::order_function& order,
                    const approx_spec& spec, const moment_table& moments,
                    std::size_t t_index) {
  return approx_impl(1, x, order, spec, moments, t_index);
}

double approx_type2(const model::function_model& x,
                    const model::order_function& order,
                    const approx_spec& spec, const moment_table& moments,
                    std::size_t t_index) {
  return approx_impl(2, x, order, spec, moments, t_index);
}

double approx_type3(const model::function_model& x,
                    const model::order_function& order,
                    const approx_spec& spec, const moment_table& moments,
                    std::size_t t_index) {
  return approx_impl(3, x, order, spec, moments, t_index);
}

double approx_right(int type, const model::function_model& x,
                    const model::order_function& order,
                    const approx_spec& spec, const moment_table& moments,
                    std::size_t t_index) {
  if (spec.side != model::side::right) {
    throw config_error("approx_right requires a right-sided spec");
  }
  return approx_impl(type, x, order, spec, moments, t_index);
}

double approximate(int type, const model::function_model& x,
                   const model::order_function& order,
                   const approx_spec& spec, const moment_table& moments,
                   std::size_t t_index) {
  return approx_impl(type, x, order, spec, moments, t_index);
}

double error_bound(int type, const model::function_model& x,
                   const model::order_function& order,
                   const approx_spec& spec, double t, int samples) {
  spec.validate();
  if (type < 1 || type > 3) {
    throw config_error("operator type must be 1, 2, or 3");
  }
  if (samples < 2) throw config_error("bound sampling needs >= 2 points");
  const bool left = spec.side == model::side::left;
  const double width = left ? t - spec.a : spec.b - t;
  if (!(width > 0.0)) {
    throw degenerate_point_error(
        "not evaluated: t coincides with the expansion endpoint");
  }
  double dalpha = 0.0;
  const double alpha = checked_alpha(order, t, &dalpha);
  const double length = left ? std::log(t / spec.a) : std::log(spec.b / t);
  const int n = spec.n;
  const double N = spec.N;

  // max over the integration range of |x_n'(tau)| = |x_{n+1}(tau)/tau| and
  // of |x'(tau)|, by sampling. Left samples (a, t], right [t, b).
  double max_xn1 = 0.0;
  double max_dx = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double tau = left ? spec.a + (j + 1) * (t - spec.a) / samples
                            : t + j * (spec.b - t) / samples;
    const std::vector<double> xs = x.x_sequence(tau, n + 1);
    max_xn1 = std::fmax(max_xn1, std::fabs(xs[n] / tau));
    max_dx = std::fmax(max_dx, std::fabs(x.derivative(tau)));
  }

  const double na = n - alpha;
  double bound = width * std::exp(na * na + na) /
                 (specfun::gamma(n + 1.0 - alpha) * std::pow(N, na) * na) *
                 std::pow(length, na) * max_xn1;
  if (type == 1) return bound;

  if (width < kDegenerateWidth) {
    throw degenerate_point_error(
        "not evaluated: t within " + std::to_string(kDegenerateWidth) +
        " of the endpoint, where the ln ln term degenerates");
  }
  const double c =
      type == 2 ? 1.0 / (1.0 - alpha) : specfun::digamma(2.0 - alpha);
  const double oa = 1.0 - alpha;
  // Left tail factor (2t-a) L/N; the right-side mirror integrates by parts
  // to b L/N.
  const double tail = left ? (2.0 * t - spec.a) * length / N
                           : spec.b * length / N;
  bound += width * t * std::fabs(dalpha) * std::exp(oa * oa + oa) /
           (specfun::gamma(2.0 - alpha) * std::pow(N, oa) * oa) *
           std::pow(length, oa) * max_dx * std::fabs(c - std::log(length) + tail);
  return bound;
}

bound_diagnostic error_bound_diagnostic(int type,
                                        const model::function_model& x,
                                        const model::order_function& order,
                                        const approx_spec& spec, double t) {
  const double v = error_bound(type, x, order, spec, t, 256);
  const double r = error_bound(type, x, order, spec, t, 512);
  const double denom = std::fmax(std::fabs(v), std::fabs(r));
  return {v, r, denom == 0.0 ? 0.0 : std::fabs(r - v) / denom};
}

}  // namespace vohd::expansion
