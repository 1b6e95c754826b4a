// SPDX-License-Identifier: Apache-2.0
#include "vohd/closedform.hpp"

#include <cmath>
#include <string>

#include "vohd/errors.hpp"
#include "vohd/specfun.hpp"

namespace vohd::closedform {

void log_power_spec::validate() const {
  if (!(gamma > 0.0)) {
    throw config_error("log power requires gamma > 0, got " +
                       std::to_string(gamma));
  }
  if (!(a > 0.0) || !(a < b)) {
    throw config_error("log power requires 0 < a < b");
  }
}

double exact_log_power(const log_power_spec& spec, int type,
                       const model::order_function& order, double t) {
  spec.validate();
  if (type < 1 || type > 3) {
    throw config_error("operator type must be 1, 2, or 3");
  }
  const bool left = spec.s == model::side::left;
  if (left ? !(t > spec.a && t <= spec.b) : !(t >= spec.a && t < spec.b)) {
    throw domain_error("t = " + std::to_string(t) +
                       " outside the operator's domain");
  }
  const auto [alpha, dalpha] = order.value_and_derivative(t);
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw domain_error("order alpha(t) = " + std::to_string(alpha) +
                       " outside (0,1) at t = " + std::to_string(t));
  }
  const double g = spec.gamma;
  const double length = left ? std::log(t / spec.a) : std::log(spec.b / t);

  const double lead = specfun::gamma(g + 1.0) / specfun::gamma(g + 1.0 - alpha) *
                      std::pow(length, g - alpha);
  if (type == 1) return lead;

  const double core = t * dalpha * specfun::gamma(g + 1.0) /
                      specfun::gamma(g + 2.0 - alpha) *
                      std::pow(length, g + 1.0 - alpha);
  double bracket = std::log(length) - specfun::digamma(g + 2.0 - alpha);
  if (type == 2) bracket += specfun::digamma(1.0 - alpha);
  return left ? lead - core * bracket : lead + core * bracket;
}

const model::order_function& reference_order() {
  static const model::order_function order =
      model::order_function::from_source("t/20", kReferenceA, kReferenceB);
  return order;
}

double reference_exact(reference_case which, int type, double t) {
  const bool left = which == reference_case::lnt_left;
  const log_power_spec spec{left ? model::side::left : model::side::right, 1.0,
                            kReferenceA, kReferenceB};
  return exact_log_power(spec, type, reference_order(), t);
}

}  // namespace vohd::closedform
