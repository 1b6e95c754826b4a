// SPDX-License-Identifier: Apache-2.0
//
// Validated wrappers around parsed expressions: the target function x(t) on
// [a,b] with jet access and the recursive sequence x_k, and the variable
// order alpha(t) constrained to (0,1).
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vohd/expr.hpp"

namespace vohd::model {

// Marks functions of the exact shape (ln(t/a))^gamma (side=left) or
// (ln(b/t))^gamma (side=right), for which closed forms exist.
enum class side { left, right };

struct log_power_form {
  side s;
  double gamma;
};

class function_model {
 public:
  // Validates (max_depth+1)-fold differentiability by finite jet evaluation
  // at interior sample points; throws config_error on failure.
  function_model(expr::expression x, double a, double b,
                 std::size_t max_depth = 40);

  // Catalog names: "lnt", "logpow(<gamma>)", "rlogpow(<gamma>)". The log-power
  // entries depend on the interval and carry their closed-form tag.
  static function_model from_catalog(const std::string& name, double a,
                                     double b, std::size_t max_depth = 40);

  // Accepts either a catalog name or a formula in t.
  static function_model from_source(const std::string& source, double a,
                                    double b, std::size_t max_depth = 40);

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t max_depth() const { return max_depth_; }
  const expr::expression& expression() const { return x_; }

  double value(double t) const { return x_.eval(t); }
  double derivative(double t) const {
    return x_.eval(taylor::dual::variable(t)).d;
  }
  taylor::jet jet_at(double t0, std::size_t k) const { return x_.jet(t0, k); }

  // [x_1(t), ..., x_K(t)] with x_1 = t x'(t), x_{k+1} = t x_k'(t).
  // Throws config_error if k exceeds max_depth.
  std::vector<double> x_sequence(double t, std::size_t k) const;

  // Set when x is structurally a log-power on this interval.
  std::optional<log_power_form> as_log_power() const { return log_power_; }

 private:
  expr::expression x_;
  double a_;
  double b_;
  std::size_t max_depth_;
  std::optional<log_power_form> log_power_;
};

class order_function {
 public:
  // Validates alpha(t) in (0,1) on a 1000-point sample of [a,b]; throws
  // config_error on violation.
  order_function(expr::expression alpha, double a, double b);

  static order_function from_source(const std::string& source, double a,
                                    double b);

  double a() const { return a_; }
  double b() const { return b_; }
  const expr::expression& expression() const { return alpha_; }

  double value(double t) const { return alpha_.eval(t); }
  double derivative(double t) const {
    return alpha_.eval(taylor::dual::variable(t)).d;
  }
  // One dual pass; the operators always need both.
  std::pair<double, double> value_and_derivative(double t) const {
    const taylor::dual r = alpha_.eval(taylor::dual::variable(t));
    return {r.v, r.d};
  }

 private:
  expr::expression alpha_;
  double a_;
  double b_;
};

}  // namespace vohd::model
