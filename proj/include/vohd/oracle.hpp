// SPDX-License-Identifier: Apache-2.0
//
// Direct numerical evaluation of the six operators for arbitrary function
// models. Type 1 is the defining integral; types 2 and 3 are assembled from
// type 1 plus two correction integrals (the relation formulas), so no
// numerical d/dt is ever taken.
#pragma once

#include "vohd/function_model.hpp"
#include "vohd/quadrature.hpp"

namespace vohd::oracle {

// (1/Gamma(1-alpha(t))) int (ln kernel)^{-alpha(t)} x'(tau) dtau, with the
// leading minus on the right side. Left needs a < t <= b, right a <= t < b.
double type1(model::side s, const model::function_model& x,
             const model::order_function& order, double t,
             const quad::quadrature_config& cfg = {});

// The t alpha'(t) term that turns type 1 into type 2. Zero when alpha'(t)=0.
double correction_12(model::side s, const model::function_model& x,
                     const model::order_function& order, double t,
                     const quad::quadrature_config& cfg = {});

// The psi(1-alpha) term that turns type 2 into type 3, with the right-side
// sign already folded in: type 3 = type 2 + correction_23 on both sides.
double correction_23(model::side s, const model::function_model& x,
                     const model::order_function& order, double t,
                     const quad::quadrature_config& cfg = {});

// Composes the above for type 1, 2, or 3.
double evaluate(model::side s, int type, const model::function_model& x,
                const model::order_function& order, double t,
                const quad::quadrature_config& cfg = {});

}  // namespace vohd::oracle
