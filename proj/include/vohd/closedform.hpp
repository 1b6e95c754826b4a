// SPDX-License-Identifier: Apache-2.0
//
// Exact values of the six variable-order operators applied to log-power
// functions x(t) = (ln(t/a))^gamma (left) and (ln(b/t))^gamma (right).
// These closed forms are the ground truth the numerical routes are tested
// against.
#pragma once

#include "vohd/function_model.hpp"

namespace vohd::closedform {

struct log_power_spec {
  model::side s;
  double gamma;  // > 0
  double a;
  double b;  // 0 < a < b

  void validate() const;
};

// Closed form for the operator of the given type (1, 2, or 3) at t.
// Left requires a < t <= b, right requires a <= t < b; alpha(t) must lie in
// (0,1). Types 2 and 3 add the t alpha'(t) correction with sign "-" on the
// left and "+" on the right.
double exact_log_power(const log_power_spec& spec, int type,
                       const model::order_function& order, double t);

// The two reference experiments: x = ln t on [1,5] (left) and x = ln(5/t)
// on [1,5] (right), both with alpha(t) = t/20.
enum class reference_case { lnt_left, ln5t_right };

double reference_exact(reference_case which, int type, double t);

// The shared setup of those experiments.
inline constexpr double kReferenceA = 1.0;
inline constexpr double kReferenceB = 5.0;
const model::order_function& reference_order();

}  // namespace vohd::closedform
