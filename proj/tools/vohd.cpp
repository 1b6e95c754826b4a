// SPDX-License-Identifier: Apache-2.0
//
// vohd: variable-order log-kernel fractional derivatives.
// Subcommands: eval, compare, plot, selftest, paper-left, paper-right.
// Exit codes: 0 success, 1 selftest failure, 2 configuration error,
// 3 numerical failure.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vohd/closedform.hpp"
#include "vohd/errors.hpp"
#include "vohd/expansion.hpp"
#include "vohd/function_model.hpp"
#include "vohd/oracle.hpp"
#include "vohd/parallel.hpp"
#include "vohd/report.hpp"
#include "vohd/selftest.hpp"

namespace {

using vohd::config_error;
using vohd::numerical_error;

struct run_config {
  std::string side_name = "left";
  int type = 1;
  std::string x_source;
  std::string alpha_source = "t/20";
  double a = 1.0;
  double b = 5.0;
  int grid_count = 100;
  int n = 1;
  std::vector<int> big_n;  // --N, repeatable
  std::string method = "all";
  std::string out = "vohd";
  std::string format = "csv";
  double qtol = 1e-10;
};

vohd::model::side parse_side(const std::string& name) {
  if (name == "left") return vohd::model::side::left;
  if (name == "right") return vohd::model::side::right;
  throw config_error("side must be 'left' or 'right', got '" + name + "'");
}

void validate(run_config& cfg) {
  if (!(cfg.a < cfg.b)) throw config_error("interval requires a < b");
  if (!(cfg.a > 0.0)) throw config_error("interval requires a > 0");
  if (cfg.grid_count < 2) throw config_error("grid count must be >= 2");
  if (cfg.type < 1 || cfg.type > 3) {
    throw config_error("operator type must be 1, 2, or 3");
  }
  if (cfg.n < 1) throw config_error("expansion requires n >= 1");
  if (cfg.big_n.empty()) cfg.big_n = {10, 20, 30};
  for (int N : cfg.big_n) {
    if (N < cfg.n) {
      throw config_error("each N must be >= n, got N = " + std::to_string(N) +
                         " with n = " + std::to_string(cfg.n));
    }
  }
  if (cfg.x_source.empty()) throw config_error("missing function: --x");
  if (cfg.alpha_source.empty()) throw config_error("missing order: --alpha");
  if (cfg.method != "closed" && cfg.method != "oracle" &&
      cfg.method != "expansion" && cfg.method != "all") {
    throw config_error("method must be closed, oracle, expansion, or all");
  }
  if (cfg.format != "csv" && cfg.format != "svg" && cfg.format != "both") {
    throw config_error("format must be csv, svg, or both");
  }
  if (const char* env = std::getenv("VOHD_QTOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw config_error(std::string("VOHD_QTOL must be a positive real, "
                                     "got '") + env + "'");
    }
    cfg.qtol = v;
  }
  if (!(cfg.qtol > 0.0)) throw config_error("qtol must be positive");
}

std::vector<double> make_grid(vohd::model::side s, double a, double b,
                              int count) {
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double h = (b - a) / count;
  for (int i = 0; i < count; ++i) {
    // Left grids live in (a, b], right grids in [a, b).
    grid[static_cast<std::size_t>(i)] =
        s == vohd::model::side::left ? a + (i + 1) * h : a + i * h;
  }
  return grid;
}

// Numerical failures during a grid sweep are reported with the point that
// produced them.
template <class F>
auto at_point(double t, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const numerical_error& e) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), " (at t = %.17g)", t);
    throw numerical_error(std::string(e.what()) + buf);
  }
}

struct run_output {
  vohd::report::csv_document csv;
  std::vector<std::string> summary;
};

run_output run_pipeline(const run_config& cfg, bool compare) {
  const vohd::model::side s = parse_side(cfg.side_name);
  const auto x = vohd::model::function_model::from_source(cfg.x_source, cfg.a,
                                                          cfg.b);
  const auto order =
      vohd::model::order_function::from_source(cfg.alpha_source, cfg.a, cfg.b);
  const std::vector<double> grid = make_grid(s, cfg.a, cfg.b, cfg.grid_count);
  const std::size_t g = grid.size();
  const vohd::quad::quadrature_config qcfg{cfg.qtol, 12};

  const auto tag = x.as_log_power();
  const bool exact_available = tag.has_value() && tag->s == s;

  bool want_exact = cfg.method == "closed" || cfg.method == "all" ||
                    (cfg.method == "expansion" && compare);
  const bool want_oracle = cfg.method == "oracle" || cfg.method == "all";
  const bool want_expansion = cfg.method == "expansion" || cfg.method == "all";

  if (compare && !want_expansion) {
    throw config_error("nothing to compare: method '" + cfg.method +
                       "' yields no approximations; use expansion or all");
  }
  if (want_exact && !exact_available) {
    if (cfg.method == "closed") {
      throw config_error(
          "no closed form available: x is not a log-power for this side");
    }
    if (compare && cfg.method == "expansion") {
      throw config_error(
          "nothing to compare: no closed form for x; use method all");
    }
    want_exact = false;  // method=all degrades to oracle reference
  }
  if (compare && !want_exact && !want_oracle) {
    throw config_error("nothing to compare: no reference value source");
  }

  std::vector<double> exact(g), oracle_vals(g);
  if (want_exact) {
    const vohd::closedform::log_power_spec spec{tag->s, tag->gamma, cfg.a,
                                                cfg.b};
    vohd::parallel::parallel_for(g, [&](std::size_t i) {
      exact[i] = at_point(grid[i], [&] {
        return vohd::closedform::exact_log_power(spec, cfg.type, order,
                                                 grid[i]);
      });
    });
  }
  if (want_oracle) {
    vohd::parallel::parallel_for(g, [&](std::size_t i) {
      oracle_vals[i] = at_point(grid[i], [&] {
        return vohd::oracle::evaluate(s, cfg.type, x, order, grid[i], qcfg);
      });
    });
  }

  std::vector<std::vector<double>> approx(cfg.big_n.size()),
      bound(cfg.big_n.size());
  if (want_expansion) {
    for (std::size_t j = 0; j < cfg.big_n.size(); ++j) {
      vohd::expansion::approx_spec spec;
      spec.side = s;
      spec.type = cfg.type;
      spec.n = cfg.n;
      spec.N = cfg.big_n[j];
      spec.a = cfg.a;
      spec.b = cfg.b;
      spec.grid = grid;
      const vohd::expansion::moment_table moments(x, spec);
      approx[j].resize(g);
      bound[j].resize(g);
      vohd::parallel::parallel_for(g, [&](std::size_t i) {
        approx[j][i] = at_point(grid[i], [&] {
          return vohd::expansion::approximate(cfg.type, x, order, spec,
                                              moments, i);
        });
        if (compare) {
          bound[j][i] = at_point(grid[i], [&] {
            return vohd::expansion::error_bound(cfg.type, x, order, spec,
                                                grid[i]);
          });
        }
      });
    }
  }

  // Assemble the table: t, exact?, oracle?, then per N either the plain
  // approximation column (eval) or approx/err/bound (compare).
  run_output out;
  out.csv.columns.push_back("t");
  if (want_exact) out.csv.columns.push_back("exact");
  if (want_oracle) out.csv.columns.push_back("oracle");
  for (std::size_t j = 0; j < cfg.big_n.size() && want_expansion; ++j) {
    const std::string suffix = "_N" + std::to_string(cfg.big_n[j]);
    out.csv.columns.push_back("approx" + suffix);
    if (compare) {
      out.csv.columns.push_back("err" + suffix);
      out.csv.columns.push_back("bound" + suffix);
    }
  }

  const std::vector<double>& reference = want_exact ? exact : oracle_vals;
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<double> row;
    row.push_back(grid[i]);
    if (want_exact) row.push_back(exact[i]);
    if (want_oracle) row.push_back(oracle_vals[i]);
    for (std::size_t j = 0; j < cfg.big_n.size() && want_expansion; ++j) {
      row.push_back(approx[j][i]);
      if (compare) {
        row.push_back(std::fabs(approx[j][i] - reference[i]));
        row.push_back(bound[j][i]);
      }
    }
    out.csv.rows.push_back(std::move(row));
  }

  if (compare) {
    for (std::size_t j = 0; j < cfg.big_n.size(); ++j) {
      double max_err = 0.0;
      double max_bound = 0.0;
      bool certified = true;
      for (std::size_t i = 0; i < g; ++i) {
        const double err = std::fabs(approx[j][i] - reference[i]);
        max_err = std::fmax(max_err, err);
        max_bound = std::fmax(max_bound, bound[j][i]);
        if (!(err <= bound[j][i])) certified = false;
      }
      char line[160];
      std::snprintf(line, sizeof(line),
                    "N=%d: max_err=%.17g max_bound=%.17g bound_check=%s",
                    cfg.big_n[j], max_err, max_bound,
                    certified ? "PASS" : "FAIL");
      out.summary.push_back(line);
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw config_error("cannot open output file '" + path + "'");
  f << content;
  if (!f) throw config_error("failed writing output file '" + path + "'");
}

void emit(const run_config& cfg, const run_output& result,
          const std::string& base) {
  if (cfg.format == "csv" || cfg.format == "both") {
    write_file(base + ".csv", result.csv.to_string());
  }
  if (cfg.format == "svg" || cfg.format == "both") {
    write_file(base + "_values.svg",
               vohd::report::render_value_panel(result.csv));
    bool has_err = false;
    for (const std::string& c : result.csv.columns) {
      if (c.rfind("err_N", 0) == 0) has_err = true;
    }
    if (has_err) {
      write_file(base + "_errors.svg",
                 vohd::report::render_error_panel(result.csv));
    }
  }
  for (const std::string& line : result.summary) {
    std::cout << line << "\n";
  }
}

int run_paper_scenario(run_config cfg, vohd::model::side s) {
  cfg.side_name = s == vohd::model::side::left ? "left" : "right";
  cfg.x_source = s == vohd::model::side::left ? "lnt" : "rlogpow(1)";
  cfg.alpha_source = "t/20";
  cfg.a = 1.0;
  cfg.b = 5.0;
  cfg.n = 1;
  cfg.big_n = s == vohd::model::side::left ? std::vector<int>{10, 20, 30}
                                           : std::vector<int>{2, 4, 6};
  cfg.method = "all";
  cfg.format = "both";
  for (int type = 1; type <= 3; ++type) {
    cfg.type = type;
    validate(cfg);
    std::cout << "type " << type << ":\n";
    const run_output result = run_pipeline(cfg, true);
    emit(cfg, result, cfg.out + "_type" + std::to_string(type));
  }
  return 0;
}

int run_selftest(const std::string& filter, double qtol) {
  vohd::quad::quadrature_config qcfg;
  qcfg.tolerance = qtol;
  if (const char* env = std::getenv("VOHD_QTOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw config_error(std::string("VOHD_QTOL must be a positive real, "
                                     "got '") + env + "'");
    }
    qcfg.tolerance = v;
  }
  const auto results = vohd::selftest::run(filter, qcfg);
  if (results.empty()) {
    std::cout << "no cases match filter '" << filter << "'\n";
    return 1;
  }
  int failures = 0;
  for (const auto& r : results) {
    if (r.passed) {
      std::cout << "PASS  " << r.name << "\n";
    } else {
      ++failures;
      std::cout << "FAIL  " << r.name << ": " << r.detail << "\n";
    }
  }
  std::cout << results.size() << " cases, " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}

int run_plot(const std::string& input, const std::string& out_base) {
  std::ifstream f(input, std::ios::binary);
  if (!f) throw config_error("cannot open CSV file '" + input + "'");
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  const auto doc = vohd::report::csv_document::parse(text);
  write_file(out_base + "_values.svg", vohd::report::render_value_panel(doc));
  bool has_err = false;
  for (const std::string& c : doc.columns) {
    if (c.rfind("err_N", 0) == 0) has_err = true;
  }
  if (has_err) {
    write_file(out_base + "_errors.svg",
               vohd::report::render_error_panel(doc));
  }
  return 0;
}

void add_common_flags(CLI::App* sub, run_config& cfg) {
  sub->add_option("--side", cfg.side_name, "Operator side: left or right");
  sub->add_option("--type", cfg.type, "Operator type: 1, 2, or 3");
  sub->add_option("--x", cfg.x_source,
                  "Function x(t): formula or catalog name "
                  "(lnt, logpow(g), rlogpow(g))");
  sub->add_option("--alpha", cfg.alpha_source, "Order function alpha(t)");
  sub->add_option("--a", cfg.a, "Interval left endpoint (must be > 0)");
  sub->add_option("--b", cfg.b, "Interval right endpoint");
  sub->add_option("--grid", cfg.grid_count, "Number of grid points");
  sub->add_option("--n", cfg.n, "Expansion order n");
  sub->add_option("--N", cfg.big_n, "Truncation N (repeatable)");
  sub->add_option("--method", cfg.method,
                  "Value sources: closed, oracle, expansion, or all");
  sub->add_option("--out", cfg.out, "Output path base");
  sub->add_option("--format", cfg.format, "Output format: csv, svg, or both");
  sub->add_option("--qtol", cfg.qtol, "Quadrature absolute tolerance");
  sub->set_config("--config", "", "Plain key=value configuration file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-order log-kernel fractional derivatives"};
  app.require_subcommand(1);

  run_config eval_cfg;
  run_config compare_cfg;
  run_config left_cfg;
  left_cfg.out = "paper_left";
  run_config right_cfg;
  right_cfg.out = "paper_right";
  std::string plot_input;
  std::string plot_out = "plot";
  std::string selftest_filter;
  double selftest_qtol = 1e-10;

  CLI::App* ev = app.add_subcommand("eval", "Evaluate operators on a grid");
  add_common_flags(ev, eval_cfg);
  CLI::App* cmp = app.add_subcommand(
      "compare", "Evaluate and compare value sources with error bounds");
  add_common_flags(cmp, compare_cfg);
  CLI::App* plot = app.add_subcommand("plot", "Render SVG panels from a CSV");
  plot->add_option("input", plot_input, "CSV file produced by eval/compare")
      ->required();
  plot->add_option("--out", plot_out, "Output path base");
  CLI::App* st = app.add_subcommand("selftest", "Run built-in checks");
  st->add_option("filter", selftest_filter, "Case name substring filter");
  st->add_option("--qtol", selftest_qtol, "Quadrature absolute tolerance");
  CLI::App* pl = app.add_subcommand("paper-left",
                                    "Reproduce the left-side experiment");
  pl->add_option("--out", left_cfg.out, "Output path base");
  CLI::App* pr = app.add_subcommand("paper-right",
                                    "Reproduce the right-side experiment");
  pr->add_option("--out", right_cfg.out, "Output path base");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (ev->parsed()) {
      validate(eval_cfg);
      emit(eval_cfg, run_pipeline(eval_cfg, false), eval_cfg.out);
      return 0;
    }
    if (cmp->parsed()) {
      validate(compare_cfg);
      emit(compare_cfg, run_pipeline(compare_cfg, true), compare_cfg.out);
      return 0;
    }
    if (plot->parsed()) return run_plot(plot_input, plot_out);
    if (st->parsed()) return run_selftest(selftest_filter, selftest_qtol);
    if (pl->parsed()) {
      return run_paper_scenario(left_cfg, vohd::model::side::left);
    }
    if (pr->parsed()) {
      return run_paper_scenario(right_cfg, vohd::model::side::right);
    }
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const vohd::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
