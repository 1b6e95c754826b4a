// SPDX-License-Identifier: Apache-2.0
//
// Formula parsing and evaluation for one-variable expressions in t.
// Grammar: binary + - * / ^ (right-associative), unary minus, real literals,
// the variable t, and the functions ln, exp, sin, cos with parenthesized
// arguments. Evaluation is generic over double, dual, and jet scalars, so
// one AST yields values, first derivatives, and Taylor coefficients.
#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "vohd/taylor.hpp"

namespace vohd::expr {

enum class node_kind {
  number,
  variable,
  add,
  sub,
  mul,
  div,
  pow,
  negate,
  fn_ln,
  fn_exp,
  fn_sin,
  fn_cos,
};

struct node {
  node_kind kind;
  double value = 0.0;  // number payload; pow caches a t-free exponent here
  bool const_exponent = false;
  std::unique_ptr<node> lhs;
  std::unique_ptr<node> rhs;
};

// Immutable after construction; evaluation methods are const and pure.
class expression {
 public:
  expression() = default;
  explicit expression(std::shared_ptr<const node> root)
      : root_(std::move(root)) {}

  bool empty() const { return root_ == nullptr; }
  const node& root() const { return *root_; }

  double eval(double t) const;
  taylor::dual eval(taylor::dual t) const;
  taylor::jet eval(const taylor::jet& t) const;

  // Taylor coefficients x^(j)(t0)/j!, j = 0..k.
  taylor::jet jet(double t0, std::size_t k) const;

  // Minimal-parenthesis rendering; parse(to_string(e)) evaluates like e.
  std::string to_string() const;

 private:
  std::shared_ptr<const node> root_;
};

// Throws syntax_error (with byte offset) on malformed input or unknown
// identifiers.
expression parse(const std::string& source);

}  // namespace vohd::expr
