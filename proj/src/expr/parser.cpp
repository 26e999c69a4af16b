#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "node.hpp"
#include "reebstrip/error.hpp"
#include "reebstrip/expr.hpp"

namespace reebstrip {

using detail::Node;
using detail::NodePtr;
using detail::Op;

namespace {

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

// Recursive descent:
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := ('-'|'+') unary | power
//   power   := primary ('^' integer)?
//   integer := ['-'] digits | '(' ['-'] digits ')'
//   primary := number | 'pi' | 'e' | var | func '(' expr ')' | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view src, const ParseOptions& opts) : src_(src), opts_(opts) {}

  FunctionExpr run() {
    NodePtr n = expr(opts_.variable);
    skip_ws();
    if (pos_ != src_.size()) throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "'", pos_);
    return FunctionExpr(n);
  }

 private:
  std::string_view src_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
  bool in_cumint_ = false;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr expr(const std::string& var) {
    NodePtr lhs = term(var);
    for (;;) {
      if (accept('+')) lhs = make(Op::Add, lhs, term(var));
      else if (accept('-')) lhs = make(Op::Sub, lhs, term(var));
      else return lhs;
    }
  }

  NodePtr term(const std::string& var) {
    NodePtr lhs = unary(var);
    for (;;) {
      if (accept('*')) lhs = make(Op::Mul, lhs, unary(var));
      else if (accept('/')) lhs = make(Op::Div, lhs, unary(var));
      else return lhs;
    }
  }

  NodePtr unary(const std::string& var) {
    if (accept('-')) return make(Op::Neg, unary(var));
    if (accept('+')) return unary(var);
    return power(var);
  }

  NodePtr power(const std::string& var) {
    NodePtr base = primary(var);
    if (!accept('^')) return base;
    bool paren = accept('(');
    bool neg = accept('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", start);
    int e = 0;
    auto [p, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, e);
    if (ec != std::errc()) throw ParseError("exponent out of range", start);
    if (paren) expect(')');
    auto n = std::make_shared<Node>();
    n->op = Op::Pow;
    n->a = base;
    n->exponent = neg ? -e : e;
    return n;
  }

  NodePtr number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = save;  // "2e" is not a literal exponent; leave 'e' for the caller
      }
    }
    double v = 0.0;
    auto [p, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || p != src_.data() + pos_) throw ParseError("malformed number", start);
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = v;
    return n;
  }

  NodePtr primary(const std::string& var) {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      NodePtr n = expr(var);
      expect(')');
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) throw ParseError(std::string("unexpected '") + c + "'", pos_);
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    std::string id(src_.substr(start, pos_ - start));

    if (id == var) {
      auto n = std::make_shared<Node>();
      n->op = Op::Var;
      n->name = id;
      return n;
    }
    if (id == "pi" || id == "e") {
      auto n = std::make_shared<Node>();
      n->op = Op::Const;
      n->name = id;
      n->value = id == "pi" ? std::numbers::pi : std::numbers::e;
      return n;
    }
    Op op;
    if (id == "sin") op = Op::Sin;
    else if (id == "cos") op = Op::Cos;
    else if (id == "exp") op = Op::Exp;
    else if (id == "atan") op = Op::Atan;
    else if (id == "sqrt") op = Op::Sqrt;
    else if (id == "cumint") op = Op::CumInt;
    else if (id == "x" || id == "t")
      throw ParseError("variable '" + id + "' not allowed here (use '" + var + "')", start);
    else
      throw ParseError("unknown identifier '" + id + "'", start);

    expect('(');
    if (op == Op::CumInt) {
      if (in_cumint_) throw ParseError("nested cumint is not supported", start);
      in_cumint_ = true;
      NodePtr kernel = expr("t");
      in_cumint_ = false;
      expect(')');
      auto n = std::make_shared<Node>();
      n->op = Op::CumInt;
      n->a = kernel;
      n->cache = std::make_shared<detail::CumintCache>();
      n->cache->kernel = kernel;
      n->cache->tau_q = opts_.tau_q;
      return n;
    }
    NodePtr arg = expr(var);
    expect(')');
    return make(op, arg);
  }
};

FunctionExpr FunctionExpr::parse(std::string_view text, const ParseOptions& opts) {
  return Parser(text, opts).run();
}

}  // namespace reebstrip
