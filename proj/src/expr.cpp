// SPDX-License-Identifier: Apache-2.0
#include "vohd/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "vohd/errors.hpp"

namespace vohd::expr {
namespace {

// ---------------------------------------------------------------------------
// Scalar shims: one overload set so the evaluator works for double, dual,
// and jet alike. The double versions enforce the same domains the series
// versions do.

double sc_constant(double v, double) { return v; }
taylor::dual sc_constant(double v, taylor::dual) {
  return taylor::dual::constant(v);
}
taylor::jet sc_constant(double v, const taylor::jet& like) {
  return taylor::jet::constant(v, like.order());
}

double sc_div(double a, double b) {
  if (b == 0.0) throw pole_error("division by zero");
  return a / b;
}
taylor::dual sc_div(taylor::dual a, taylor::dual b) { return a / b; }
taylor::jet sc_div(const taylor::jet& a, const taylor::jet& b) {
  return a / b;
}

double sc_log(double x) {
  if (!(x > 0.0)) {
    throw domain_error("ln: requires positive argument, got " +
                       std::to_string(x));
  }
  return std::log(x);
}
taylor::dual sc_log(taylor::dual x) { return taylor::log(x); }
taylor::jet sc_log(const taylor::jet& x) { return taylor::log(x); }

double sc_exp(double x) { return std::exp(x); }
taylor::dual sc_exp(taylor::dual x) { return taylor::exp(x); }
taylor::jet sc_exp(const taylor::jet& x) { return taylor::exp(x); }

double sc_sin(double x) { return std::sin(x); }
taylor::dual sc_sin(taylor::dual x) { return taylor::sin(x); }
taylor::jet sc_sin(const taylor::jet& x) { return taylor::sin(x); }

double sc_cos(double x) { return std::cos(x); }
taylor::dual sc_cos(taylor::dual x) { return taylor::cos(x); }
taylor::jet sc_cos(const taylor::jet& x) { return taylor::cos(x); }

double sc_pow(double x, double e) {
  const double re = std::nearbyint(e);
  if (re == e && std::fabs(e) < 64.0) return std::pow(x, e);
  if (x == 0.0 && e > 0.0) return 0.0;  // 0^e = 0 for e > 0
  if (!(x > 0.0)) {
    throw domain_error(
        "pow: fractional exponent requires positive base, got " +
        std::to_string(x));
  }
  return std::pow(x, e);
}
taylor::dual sc_pow(taylor::dual x, double e) { return taylor::pow(x, e); }
taylor::jet sc_pow(const taylor::jet& x, double e) {
  return taylor::pow(x, e);
}

template <class T>
T eval_node(const node& n, const T& t) {
  switch (n.kind) {
    case node_kind::number:
      return sc_constant(n.value, t);
    case node_kind::variable:
      return t;
    case node_kind::add:
      return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
    case node_kind::sub:
      return eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
    case node_kind::mul:
      return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
    case node_kind::div:
      return sc_div(eval_node(*n.lhs, t), eval_node(*n.rhs, t));
    case node_kind::negate:
      return -eval_node(*n.lhs, t);
    case node_kind::pow: {
      T base = eval_node(*n.lhs, t);
      if (n.const_exponent) return sc_pow(base, n.value);
      // Variable exponent: u^v = exp(v ln u), u > 0 enforced by sc_log.
      return sc_exp(eval_node(*n.rhs, t) * sc_log(base));
    }
    case node_kind::fn_ln:
      return sc_log(eval_node(*n.lhs, t));
    case node_kind::fn_exp:
      return sc_exp(eval_node(*n.lhs, t));
    case node_kind::fn_sin:
      return sc_sin(eval_node(*n.lhs, t));
    case node_kind::fn_cos:
      return sc_cos(eval_node(*n.lhs, t));
  }
  throw error("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Tokenizer

enum class token_kind {
  number,
  identifier,
  plus,
  minus,
  star,
  slash,
  caret,
  lparen,
  rparen,
  end,
};

struct token {
  token_kind kind;
  std::size_t offset;
  double value = 0.0;
  std::string text;
};

std::vector<token> tokenize(const std::string& src) {
  std::vector<token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if ((c >= '0' && c <= '9') ||
        (c == '.' && i + 1 < src.size() && src[i + 1] >= '0' &&
         src[i + 1] <= '9')) {
      std::size_t j = i;
      while (j < src.size() && ((src[j] >= '0' && src[j] <= '9') ||
                                src[j] == '.')) {
        ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && src[k] >= '0' && src[k] <= '9') {
          while (k < src.size() && src[k] >= '0' && src[k] <= '9') ++k;
          j = k;
        }
      }
      double v = 0.0;
      const auto res = std::from_chars(src.data() + i, src.data() + j, v);
      if (res.ec != std::errc() || res.ptr != src.data() + j) {
        throw syntax_error("malformed number '" + src.substr(i, j - i) + "'",
                           i);
      }
      out.push_back({token_kind::number, i, v, {}});
      i = j;
      continue;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      std::size_t j = i;
      while (j < src.size() && ((src[j] >= 'a' && src[j] <= 'z') ||
                                (src[j] >= 'A' && src[j] <= 'Z') ||
                                (src[j] >= '0' && src[j] <= '9'))) {
        ++j;
      }
      out.push_back({token_kind::identifier, i, 0.0, src.substr(i, j - i)});
      i = j;
      continue;
    }
    token_kind k;
    switch (c) {
      case '+': k = token_kind::plus; break;
      case '-': k = token_kind::minus; break;
      case '*': k = token_kind::star; break;
      case '/': k = token_kind::slash; break;
      case '^': k = token_kind::caret; break;
      case '(': k = token_kind::lparen; break;
      case ')': k = token_kind::rparen; break;
      default:
        throw syntax_error(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, i, 0.0, {}});
    ++i;
  }
  out.push_back({token_kind::end, src.size(), 0.0, {}});
  return out;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser

class parser {
 public:
  explicit parser(std::vector<token> toks) : toks_(std::move(toks)) {}

  std::unique_ptr<node> run() {
    auto e = parse_expression();
    if (peek().kind != token_kind::end) {
      throw syntax_error("unexpected trailing input", peek().offset);
    }
    return e;
  }

 private:
  const token& peek() const { return toks_[pos_]; }
  const token& advance() { return toks_[pos_++]; }
  bool accept(token_kind k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(token_kind k, const char* what) {
    if (!accept(k)) throw syntax_error(std::string("expected ") + what,
                                       peek().offset);
  }

  static std::unique_ptr<node> make(node_kind k, std::unique_ptr<node> l,
                                    std::unique_ptr<node> r) {
    auto n = std::make_unique<node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  std::unique_ptr<node> parse_expression() {
    auto left = parse_term();
    for (;;) {
      if (accept(token_kind::plus)) {
        left = make(node_kind::add, std::move(left), parse_term());
      } else if (accept(token_kind::minus)) {
        left = make(node_kind::sub, std::move(left), parse_term());
      } else {
        return left;
      }
    }
  }

  std::unique_ptr<node> parse_term() {
    auto left = parse_unary();
    for (;;) {
      if (accept(token_kind::star)) {
        left = make(node_kind::mul, std::move(left), parse_unary());
      } else if (accept(token_kind::slash)) {
        left = make(node_kind::div, std::move(left), parse_unary());
      } else {
        return left;
      }
    }
  }

  std::unique_ptr<node> parse_unary() {
    if (accept(token_kind::minus)) {
      return make(node_kind::negate, parse_unary(), nullptr);
    }
    return parse_power();
  }

  std::unique_ptr<node> parse_power() {
    auto base = parse_primary();
    if (accept(token_kind::caret)) {
      // Exponent parses as unary so t^-2 works and ^ chains to the right.
      auto exponent = parse_unary();
      auto n = make(node_kind::pow, std::move(base), std::move(exponent));
      fold_exponent(*n);
      return n;
    }
    return base;
  }

  std::unique_ptr<node> parse_primary() {
    const token& tk = peek();
    switch (tk.kind) {
      case token_kind::number: {
        advance();
        auto n = std::make_unique<node>();
        n->kind = node_kind::number;
        n->value = tk.value;
        return n;
      }
      case token_kind::identifier: {
        advance();
        if (tk.text == "t") {
          auto n = std::make_unique<node>();
          n->kind = node_kind::variable;
          return n;
        }
        node_kind fk;
        if (tk.text == "ln") {
          fk = node_kind::fn_ln;
        } else if (tk.text == "exp") {
          fk = node_kind::fn_exp;
        } else if (tk.text == "sin") {
          fk = node_kind::fn_sin;
        } else if (tk.text == "cos") {
          fk = node_kind::fn_cos;
        } else {
          throw syntax_error("unknown identifier '" + tk.text + "'",
                             tk.offset);
        }
        expect(token_kind::lparen, "'(' after function name");
        auto arg = parse_expression();
        expect(token_kind::rparen, "')'");
        return make(fk, std::move(arg), nullptr);
      }
      case token_kind::lparen: {
        advance();
        auto e = parse_expression();
        expect(token_kind::rparen, "')'");
        return e;
      }
      default:
        throw syntax_error("expected expression", tk.offset);
    }
  }

  // If the exponent subtree never mentions t, evaluate it once and remember
  // the value; integer exponents then avoid the exp/ln route entirely.
  static void fold_exponent(node& n) {
    if (depends_on_t(*n.rhs)) return;
    n.const_exponent = true;
    n.value = eval_node<double>(*n.rhs, 0.0);
  }

  static bool depends_on_t(const node& n) {
    if (n.kind == node_kind::variable) return true;
    if (n.lhs && depends_on_t(*n.lhs)) return true;
    if (n.rhs && depends_on_t(*n.rhs)) return true;
    return false;
  }

  std::vector<token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printing. Precedence levels: add 1, mul 2, unary 3, pow 4. A child is
// parenthesized when its level is below what its position requires.

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int node_level(const node& n) {
  switch (n.kind) {
    case node_kind::add:
    case node_kind::sub:
      return 1;
    case node_kind::mul:
    case node_kind::div:
      return 2;
    case node_kind::negate:
      return 3;
    case node_kind::pow:
      return 4;
    case node_kind::number:
      return n.value < 0.0 ? 3 : 5;
    default:
      return 5;
  }
}

void print_node(const node& n, int min_level, std::string& out) {
  const int level = node_level(n);
  const bool parens = level < min_level;
  if (parens) out += '(';
  switch (n.kind) {
    case node_kind::number:
      out += format_number(n.value);
      break;
    case node_kind::variable:
      out += 't';
      break;
    case node_kind::add:
      print_node(*n.lhs, 1, out);
      out += '+';
      print_node(*n.rhs, 2, out);
      break;
    case node_kind::sub:
      print_node(*n.lhs, 1, out);
      out += '-';
      print_node(*n.rhs, 2, out);
      break;
    case node_kind::mul:
      print_node(*n.lhs, 2, out);
      out += '*';
      print_node(*n.rhs, 3, out);
      break;
    case node_kind::div:
      print_node(*n.lhs, 2, out);
      out += '/';
      print_node(*n.rhs, 3, out);
      break;
    case node_kind::negate:
      out += '-';
      print_node(*n.lhs, 3, out);
      break;
    case node_kind::pow:
      print_node(*n.lhs, 5, out);
      out += '^';
      print_node(*n.rhs, 4, out);
      break;
    case node_kind::fn_ln:
      out += "ln(";
      print_node(*n.lhs, 0, out);
      out += ')';
      break;
    case node_kind::fn_exp:
      out += "exp(";
      print_node(*n.lhs, 0, out);
      out += ')';
      break;
    case node_kind::fn_sin:
      out += "sin(";
      print_node(*n.lhs, 0, out);
      out += ')';
      break;
    case node_kind::fn_cos:
      out += "cos(";
      print_node(*n.lhs, 0, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

double expression::eval(double t) const { return eval_node<double>(root(), t); }

taylor::dual expression::eval(taylor::dual t) const {
  return eval_node<taylor::dual>(root(), t);
}

taylor::jet expression::eval(const taylor::jet& t) const {
  return eval_node<taylor::jet>(root(), t);
}

taylor::jet expression::jet(double t0, std::size_t k) const {
  return eval(taylor::jet::variable(t0, k));
}

std::string expression::to_string() const {
  std::string out;
  print_node(root(), 0, out);
  return out;
}

expression parse(const std::string& source) {
  parser p(tokenize(source));
  return expression(std::shared_ptr<const node>(p.run().release()));
}

}  // namespace vohd::expr
