// SPDX-License-Identifier: Apache-2.0
//
// Tabular results and their renderings: a CSV document (17-significant-digit
// reals, lossless for doubles) and hand-emitted static SVG panels with
// deterministic bytes for fixed input.
#pragma once

#include <string>
#include <vector>

namespace vohd::report {

struct csv_document {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // each row matches columns in size

  std::string to_string() const;

  // Inverse of to_string; throws config_error on malformed input or when no
  // data rows are present.
  static csv_document parse(const std::string& text);

  // Column index by exact name, -1 when absent.
  int column(const std::string& name) const;
};

// Value panel: one polyline per value series (exact, oracle, approx_N*),
// overlaid against t. 800x600, SVG 1.1, byte-deterministic.
std::string render_value_panel(const csv_document& doc);

// Error panel: log10 of each err_N* series against t, clamped at 1e-18.
std::string render_error_panel(const csv_document& doc);

}  // namespace vohd::report
