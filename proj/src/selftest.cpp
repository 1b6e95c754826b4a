// SPDX-License-Identifier: Apache-2.0
#include "vohd/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "vohd/closedform.hpp"
#include "vohd/errors.hpp"
#include "vohd/function_model.hpp"
#include "vohd/oracle.hpp"
#include "vohd/specfun.hpp"

namespace vohd::selftest {
namespace {

std::string describe(double got, double want, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "got %.17g, want %.17g (|diff| %.3g > tol %.3g)", got, want,
                std::fabs(got - want), tol);
  return buf;
}

struct runner {
  const std::string& filter;
  const quad::quadrature_config& cfg;
  std::vector<case_result> results;

  void check(const std::string& name, const std::function<void(case_result&)>& body) {
    if (!filter.empty() && name.find(filter) == std::string::npos) return;
    case_result r{name, true, ""};
    try {
      body(r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  }

  void expect_near(case_result& r, double got, double want, double tol) {
    if (r.passed && !(std::fabs(got - want) <= tol)) {
      r.passed = false;
      r.detail = describe(got, want, tol);
    }
  }
};

}  // namespace

std::vector<case_result> run(const std::string& filter,
                             const quad::quadrature_config& cfg) {
  runner rn{filter, cfg, {}};

  rn.check("specfun.gamma.values", [&](case_result& r) {
    rn.expect_near(r, specfun::gamma(1.0), 1.0, 1e-14);
    rn.expect_near(r, specfun::gamma(5.0), 24.0, 24e-13);
    rn.expect_near(r, specfun::gamma(0.5), 1.7724538509055160, 1e-13);
  });
  rn.check("specfun.gamma.recurrence", [&](case_result& r) {
    for (double x : {0.2, 0.7, 1.3, 2.9, 7.5, 23.0}) {
      const double lhs = specfun::gamma(x + 1.0);
      const double rhs = x * specfun::gamma(x);
      rn.expect_near(r, lhs / rhs, 1.0, 1e-12);
    }
  });
  rn.check("specfun.digamma.values", [&](case_result& r) {
    rn.expect_near(r, specfun::digamma(1.0), -0.57721566490153286, 1e-12);
    rn.expect_near(r, specfun::digamma(0.5), -1.9635100260214235, 1e-12);
    rn.expect_near(r, specfun::digamma(2.0),
                   -0.57721566490153286 + 1.0, 1e-12);
  });
  rn.check("specfun.digamma.recurrence", [&](case_result& r) {
    for (double x : {0.3, 0.9, 1.7, 4.2, 11.0}) {
      rn.expect_near(r, specfun::digamma(x + 1.0),
                     specfun::digamma(x) + 1.0 / x, 1e-11);
    }
  });
  rn.check("specfun.beta.values", [&](case_result& r) {
    rn.expect_near(r, specfun::beta(1.0, 1.0), 1.0, 1e-13);
    rn.expect_near(r, specfun::beta(2.0, 3.0), 1.0 / 12.0, 1e-11);
    rn.expect_near(r, specfun::beta(0.5, 0.5), 3.141592653589793, 1e-10);
  });

  // Oracle versus the closed forms; exercises the quadrature at the
  // configured tolerance, so an unreachable tolerance surfaces here.
  const double a = 1.0;
  const double b = 5.0;
  struct logpower_case {
    const char* name;
    model::side s;
    double gamma;
    const char* alpha;
  };
  const logpower_case cases[] = {
      {"oracle.logpower.left.g1.variable", model::side::left, 1.0, "t/20"},
      {"oracle.logpower.left.g2.variable", model::side::left, 2.0, "t/20"},
      {"oracle.logpower.right.g1.variable", model::side::right, 1.0, "t/20"},
      {"oracle.logpower.left.g1.constant", model::side::left, 1.0, "0.35"},
  };
  for (const logpower_case& lc : cases) {
    rn.check(lc.name, [&](case_result& r) {
      const bool left = lc.s == model::side::left;
      char cat[32];
      std::snprintf(cat, sizeof(cat), "%slogpow(%g)", left ? "" : "r",
                    lc.gamma);
      const auto x = model::function_model::from_catalog(cat, a, b);
      const auto order = model::order_function::from_source(lc.alpha, a, b);
      const closedform::log_power_spec spec{lc.s, lc.gamma, a, b};
      for (double t : {1.8, 3.0, 4.2}) {
        for (int type = 1; type <= 3; ++type) {
          const double got = oracle::evaluate(lc.s, type, x, order, t, cfg);
          const double want = closedform::exact_log_power(spec, type, order, t);
          rn.expect_near(r, got, want, 1e-6);
          if (!r.passed) return;
        }
      }
    });
  }

  rn.check("oracle.collapse.constant_order", [&](case_result& r) {
    const auto x = model::function_model::from_source("ln(t)*ln(t)", a, b);
    const auto order = model::order_function::from_source("0.35", a, b);
    for (double t : {1.5, 2.5, 4.0}) {
      const double v1 = oracle::evaluate(model::side::left, 1, x, order, t, cfg);
      const double v2 = oracle::evaluate(model::side::left, 2, x, order, t, cfg);
      const double v3 = oracle::evaluate(model::side::left, 3, x, order, t, cfg);
      rn.expect_near(r, v2, v1, 1e-9);
      rn.expect_near(r, v3, v1, 1e-9);
      if (!r.passed) return;
    }
  });

  rn.check("closedform.collapse.constant_order", [&](case_result& r) {
    const auto order = model::order_function::from_source("0.35", a, b);
    const closedform::log_power_spec spec{model::side::left, 2.0, a, b};
    for (double t : {1.5, 2.5, 4.0}) {
      const double v1 = closedform::exact_log_power(spec, 1, order, t);
      const double v2 = closedform::exact_log_power(spec, 2, order, t);
      const double v3 = closedform::exact_log_power(spec, 3, order, t);
      rn.expect_near(r, v2, v1, std::fabs(v1) * 1e-15);
      rn.expect_near(r, v3, v1, std::fabs(v1) * 1e-15);
      if (!r.passed) return;
    }
  });

  return std::move(rn.results);
}

}  // namespace vohd::selftest
