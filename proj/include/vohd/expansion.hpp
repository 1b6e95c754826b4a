// SPDX-License-Identifier: Apache-2.0
//
// The integer-order expansion of the variable-order operators: coefficient
// families A_k/B_k, moment integrals V_k over the grid, the three left
// approximations and their right-sided mirrors, and the certified error
// bounds that accompany them.
#pragma once

#include <cstddef>
#include <vector>

#include "vohd/function_model.hpp"

namespace vohd::expansion {

struct approx_spec {
  model::side side = model::side::left;
  int type = 1;  // 1|2|3
  int n = 1;     // >= 1
  int N = 1;     // >= n
  double a = 0.0;
  double b = 0.0;
  std::vector<double> grid;  // strictly increasing; (a,b] left, [a,b) right

  void validate() const;
};

// A_k = (1/Gamma(k+1-alpha)) [1 + sum_{p=n-k+1}^{N}
//        Gamma(alpha-n+p)/(Gamma(alpha-k)(p-n+k)!)], computed with rising
// products only, never Gamma at a near-pole argument.
double coeff_a(int k, int n, int N, double alpha_t);

// B_k = Gamma(alpha-n+k)/(Gamma(1-alpha) Gamma(alpha) (k-n)!).
double coeff_b(int k, int n, double alpha_t);

// Moments V_k(t_i) = int_a^{t_i} (ln(tau/a))^k x'(tau) dtau for the left
// side, or the [t_i, b] mirror, for k = 0..2N across the whole grid.
// Built once by an incremental prefix scan; immutable afterwards.
class moment_table {
 public:
  moment_table(const model::function_model& x, const approx_spec& spec);

  std::size_t depth() const { return depth_; }          // largest k
  std::size_t points() const { return points_; }
  double v(std::size_t k, std::size_t t_index) const {
    return data_[k * points_ + t_index];
  }

 private:
  std::size_t depth_;
  std::size_t points_;
  std::vector<double> data_;
};

moment_table build_moments(const model::function_model& x,
                           const approx_spec& spec);

// The truncated expansions at grid point t_index. Types 2 and 3 refuse
// (degenerate_point_error) within 1e-6 of the singular endpoint, where their
// ln ln term is undefined. approx_right dispatches on type with the mirrored
// coefficient signs.
double approx_type1(const model::function_model& x,
                    const model::order_function& order,
                    const approx_spec& spec, const moment_table& moments,
                    std::size_t t_index);
double approx_type2(const model::function_model& x,
                    const model::order_function& order,
                    const approx_spec& spec, const moment_table& moments,
                    std::size_t t_index);
double approx_type3(const model::function_model& x,
                    const model::order_function& order,
                    const approx_spec& spec, const moment_table& moments,
                    std::size_t t_index);
double approx_right(int type, const model::function_model& x,
                    const model::order_function& order,
                    const approx_spec& spec, const moment_table& moments,
                    std::size_t t_index);

// One entry point covering both sides.
double approximate(int type, const model::function_model& x,
                   const model::order_function& order,
                   const approx_spec& spec, const moment_table& moments,
                   std::size_t t_index);

// A-priori truncation bound at t, with the derivative maxima it needs
// estimated by sampling (default 256 points).
double error_bound(int type, const model::function_model& x,
                   const model::order_function& order,
                   const approx_spec& spec, double t, int samples = 256);

// Stability diagnostic: the bound at the default and at twice the sample
// count, plus their relative change.
struct bound_diagnostic {
  double value;
  double refined;
  double relative_change;
};
bound_diagnostic error_bound_diagnostic(int type,
                                        const model::function_model& x,
                                        const model::order_function& order,
                                        const approx_spec& spec, double t);

}  // namespace vohd::expansion
