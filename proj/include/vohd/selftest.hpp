// SPDX-License-Identifier: Apache-2.0
//
// Built-in consistency checks runnable from the CLI: special-function
// identities, oracle-versus-closed-form agreement, and the constant-order
// collapse. Case names are stable so callers can filter by substring.
#pragma once

#include <string>
#include <vector>

#include "vohd/quadrature.hpp"

namespace vohd::selftest {

struct case_result {
  std::string name;
  bool passed;
  std::string detail;  // empty on success, diagnostic on failure
};

// Runs every case whose name contains `filter` (empty runs all) under the
// given quadrature configuration. Never throws; failures are reported in
// the results.
std::vector<case_result> run(const std::string& filter,
                             const quad::quadrature_config& cfg);

}  // namespace vohd::selftest
