// SPDX-License-Identifier: Apache-2.0
#include "vohd/function_model.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "vohd/errors.hpp"

namespace vohd::model {
namespace {

using expr::node;
using expr::node_kind;

std::unique_ptr<node> make_number(double v) {
  auto n = std::make_unique<node>();
  n->kind = node_kind::number;
  n->value = v;
  return n;
}

std::unique_ptr<node> make_variable() {
  auto n = std::make_unique<node>();
  n->kind = node_kind::variable;
  return n;
}

std::unique_ptr<node> make_binary(node_kind k, std::unique_ptr<node> l,
                                  std::unique_ptr<node> r) {
  auto n = std::make_unique<node>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

std::unique_ptr<node> make_ln(std::unique_ptr<node> arg) {
  auto n = std::make_unique<node>();
  n->kind = node_kind::fn_ln;
  n->lhs = std::move(arg);
  return n;
}

// (ln(t/c))^gamma or (ln(c/t))^gamma as an AST with the exponent pre-folded.
expr::expression build_log_power(side s, double gamma, double c) {
  auto ratio = s == side::left
                   ? make_binary(node_kind::div, make_variable(),
                                 make_number(c))
                   : make_binary(node_kind::div, make_number(c),
                                 make_variable());
  auto body = make_ln(std::move(ratio));
  if (gamma == 1.0) {
    return expr::expression(
        std::shared_ptr<const node>(body.release()));
  }
  auto p = make_binary(node_kind::pow, std::move(body), make_number(gamma));
  p->const_exponent = true;
  p->value = gamma;
  return expr::expression(std::shared_ptr<const node>(p.release()));
}

bool nearly(double x, double y) {
  return std::fabs(x - y) <= 1e-12 * std::fmax(1.0, std::fabs(y));
}

// Recognizes ln(t/a), ln(b/t), ln(t) when a = 1, and the same under ^gamma.
std::optional<log_power_form> detect_log_power(const node& n, double a,
                                               double b) {
  if (n.kind == node_kind::pow && n.const_exponent && n.value > 0.0 && n.lhs) {
    auto inner = detect_log_power(*n.lhs, a, b);
    if (inner && inner->gamma == 1.0) return log_power_form{inner->s, n.value};
    return std::nullopt;
  }
  if (n.kind != node_kind::fn_ln || !n.lhs) return std::nullopt;
  const node& arg = *n.lhs;
  if (arg.kind == node_kind::variable && nearly(1.0, a)) {
    return log_power_form{side::left, 1.0};
  }
  if (arg.kind != node_kind::div || !arg.lhs || !arg.rhs) return std::nullopt;
  const node& num = *arg.lhs;
  const node& den = *arg.rhs;
  if (num.kind == node_kind::variable && den.kind == node_kind::number &&
      nearly(den.value, a)) {
    return log_power_form{side::left, 1.0};
  }
  if (num.kind == node_kind::number && den.kind == node_kind::variable &&
      nearly(num.value, b)) {
    return log_power_form{side::right, 1.0};
  }
  return std::nullopt;
}

void check_interval(double a, double b) {
  if (!(a > 0.0) || !(a < b)) {
    throw config_error("interval requires 0 < a < b, got [" +
                       std::to_string(a) + ", " + std::to_string(b) + "]");
  }
}

// Parses "<head>(<number>)" catalog forms; returns the number.
std::optional<double> catalog_argument(const std::string& name,
                                       const std::string& head) {
  if (name.size() < head.size() + 2) return std::nullopt;
  if (name.compare(0, head.size(), head) != 0) return std::nullopt;
  if (name[head.size()] != '(' || name.back() != ')') return std::nullopt;
  const std::string inner =
      name.substr(head.size() + 1, name.size() - head.size() - 2);
  try {
    std::size_t used = 0;
    const double v = std::stod(inner, &used);
    if (used != inner.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

function_model::function_model(expr::expression x, double a, double b,
                               std::size_t max_depth)
    : x_(std::move(x)), a_(a), b_(b), max_depth_(max_depth) {
  check_interval(a, b);
  if (x_.empty()) throw config_error("function model requires an expression");
  // Differentiability probe: (max_depth+1)-deep jets at interior samples
  // must evaluate to finite coefficients.
  constexpr int kSamples = 16;
  for (int i = 0; i < kSamples; ++i) {
    const double t = a_ + (i + 0.5) * (b_ - a_) / kSamples;
    taylor::jet j;
    try {
      j = x_.jet(t, max_depth_ + 1);
    } catch (const numerical_error& e) {
      throw config_error(std::string("function not smooth enough at t = ") +
                         std::to_string(t) + ": " + e.what());
    }
    for (std::size_t k = 0; k <= j.order(); ++k) {
      if (!std::isfinite(j[k])) {
        throw config_error("function derivative of order " +
                           std::to_string(k) + " not finite at t = " +
                           std::to_string(t));
      }
    }
  }
  log_power_ = detect_log_power(x_.root(), a_, b_);
}

function_model function_model::from_catalog(const std::string& name, double a,
                                            double b, std::size_t max_depth) {
  check_interval(a, b);
  if (name == "lnt") {
    function_model m(expr::parse("ln(t)"), a, b, max_depth);
    // ln t = ln(t/a) only when a = 1; otherwise no closed form applies.
    return m;
  }
  if (auto g = catalog_argument(name, "logpow")) {
    if (!(*g > 0.0)) {
      throw config_error("logpow requires a positive exponent");
    }
    function_model m(build_log_power(side::left, *g, a), a, b, max_depth);
    m.log_power_ = log_power_form{side::left, *g};
    return m;
  }
  if (auto g = catalog_argument(name, "rlogpow")) {
    if (!(*g > 0.0)) {
      throw config_error("rlogpow requires a positive exponent");
    }
    function_model m(build_log_power(side::right, *g, b), a, b, max_depth);
    m.log_power_ = log_power_form{side::right, *g};
    return m;
  }
  throw config_error("unknown catalog function '" + name + "'");
}

function_model function_model::from_source(const std::string& source,
                                           double a, double b,
                                           std::size_t max_depth) {
  if (source == "lnt" || source.rfind("logpow(", 0) == 0 ||
      source.rfind("rlogpow(", 0) == 0) {
    return from_catalog(source, a, b, max_depth);
  }
  return function_model(expr::parse(source), a, b, max_depth);
}

std::vector<double> function_model::x_sequence(double t, std::size_t k) const {
  if (k > max_depth_) {
    throw config_error("x_sequence depth " + std::to_string(k) +
                       " exceeds maximum " + std::to_string(max_depth_));
  }
  if (k == 0) return {};
  // x_k(t) = d^k/ds^k x(e^s) at s = ln t, since t d/dt = d/ds under t = e^s.
  // One jet composition gives the whole sequence without the ill-conditioned
  // Stirling-weighted sum over x^(j)(t) t^j.
  const taylor::jet s = taylor::jet::variable(std::log(t), k);
  const taylor::jet g = x_.eval(taylor::exp(s));
  std::vector<double> out(k);
  double factorial = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    factorial *= static_cast<double>(j);
    out[j - 1] = factorial * g[j];
  }
  return out;
}

order_function::order_function(expr::expression alpha, double a, double b)
    : alpha_(std::move(alpha)), a_(a), b_(b) {
  check_interval(a, b);
  if (alpha_.empty()) throw config_error("order function requires an expression");
  constexpr int kSamples = 1000;
  for (int i = 0; i < kSamples; ++i) {
    const double t = a_ + i * (b_ - a_) / (kSamples - 1);
    double v;
    try {
      v = alpha_.eval(t);
    } catch (const numerical_error& e) {
      throw config_error(std::string("order function fails at t = ") +
                         std::to_string(t) + ": " + e.what());
    }
    if (!(v > 0.0) || !(v < 1.0)) {
      throw config_error("order function out of (0,1) at t = " +
                         std::to_string(t) + ": alpha = " + std::to_string(v));
    }
  }
}

order_function order_function::from_source(const std::string& source,
                                           double a, double b) {
  return order_function(expr::parse(source), a, b);
}

}  // namespace vohd::model
