#include <charconv>
#include <cmath>

#include "node.hpp"
#include "reebstrip/error.hpp"
#include "reebstrip/expr.hpp"

namespace reebstrip {

using detail::Node;
using detail::Op;

namespace {

template <class T> T lift(double c) {
  if constexpr (std::is_same_v<T, double>) return c;
  else return T(c);
}

template <class T> T evaluate(const Node& n, const T& x);

template <class T> T cumint_eval(const Node& n, const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return detail::cumint_value(*n.cache, x);
  } else {
    using U = decltype(x.v);
    U value = cumint_eval<U>(n, x.v);
    U k = evaluate<U>(*n.a, x.v);
    return T(value, k * x.d);
  }
}

template <class T> T ipow(const T& b, int e) {
  if (e == 0) return lift<T>(1.0);
  unsigned m = static_cast<unsigned>(e < 0 ? -e : e);
  T r = lift<T>(1.0);
  T p = b;
  while (m) {
    if (m & 1u) r = r * p;
    m >>= 1;
    if (m) p = p * p;
  }
  return e < 0 ? lift<T>(1.0) / r : r;
}

template <class T> T evaluate(const Node& n, const T& x) {
  using std::sin, std::cos, std::exp, std::atan, std::sqrt;
  switch (n.op) {
    case Op::Const: return lift<T>(n.value);
    case Op::Var: return x;
    case Op::Add: return evaluate(*n.a, x) + evaluate(*n.b, x);
    case Op::Sub: return evaluate(*n.a, x) - evaluate(*n.b, x);
    case Op::Mul: return evaluate(*n.a, x) * evaluate(*n.b, x);
    case Op::Div: {
      T d = evaluate(*n.b, x);
      if (value_of(d) == 0.0) throw DomainError("division by zero");
      return evaluate(*n.a, x) / d;
    }
    case Op::Neg: return -evaluate(*n.a, x);
    case Op::Pow: return ipow(evaluate(*n.a, x), n.exponent);
    case Op::Sin: return sin(evaluate(*n.a, x));
    case Op::Cos: return cos(evaluate(*n.a, x));
    case Op::Exp: return exp(evaluate(*n.a, x));
    case Op::Atan: return atan(evaluate(*n.a, x));
    case Op::Sqrt: {
      T a = evaluate(*n.a, x);
      if (value_of(a) < 0.0) throw DomainError("sqrt of negative value");
      return sqrt(a);
    }
    case Op::CumInt: return cumint_eval(n, x);
  }
  return lift<T>(0.0);
}

bool depends_on_var(const Node& n) {
  switch (n.op) {
    case Op::Const: return false;
    case Op::Var: return true;
    case Op::CumInt: return true;
    default: break;
  }
  return (n.a && depends_on_var(*n.a)) || (n.b && depends_on_var(*n.b));
}

bool contains_cumint(const Node& n) {
  if (n.op == Op::CumInt) return true;
  return (n.a && contains_cumint(*n.a)) || (n.b && contains_cumint(*n.b));
}

// Binding strength for printing: sum 1, product 2, unary minus 3, power 4, atom 5.
int prec(const Node& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    case Op::Const: return (n.name.empty() && n.value < 0) ? 3 : 5;
    default: return 5;
  }
}

std::string num(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string show(const Node& n);

std::string wrap(const Node& n, int min_prec) {
  std::string s = show(n);
  return prec(n) < min_prec ? "(" + s + ")" : s;
}

std::string show(const Node& n) {
  switch (n.op) {
    case Op::Const: return n.name.empty() ? num(n.value) : n.name;
    case Op::Var: return n.name;
    case Op::Add: return wrap(*n.a, 1) + "+" + wrap(*n.b, 2);
    case Op::Sub: return wrap(*n.a, 1) + "-" + wrap(*n.b, 2);
    case Op::Mul: return wrap(*n.a, 2) + "*" + wrap(*n.b, 3);
    case Op::Div: return wrap(*n.a, 2) + "/" + wrap(*n.b, 3);
    case Op::Neg: return "-" + wrap(*n.a, 3);
    case Op::Pow: {
      std::string e = n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent);
      return wrap(*n.a, 5) + "^" + e;
    }
    case Op::Sin: return "sin(" + show(*n.a) + ")";
    case Op::Cos: return "cos(" + show(*n.a) + ")";
    case Op::Exp: return "exp(" + show(*n.a) + ")";
    case Op::Atan: return "atan(" + show(*n.a) + ")";
    case Op::Sqrt: return "sqrt(" + show(*n.a) + ")";
    case Op::CumInt: return "cumint(" + show(*n.a) + ")";
  }
  return "?";
}

}  // namespace

double detail::kernel_eval(const Node& kernel, double t) { return evaluate<double>(kernel, t); }

FunctionExpr::FunctionExpr() : FunctionExpr(constant(0.0)) {}

FunctionExpr FunctionExpr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  return FunctionExpr(n);
}

double FunctionExpr::eval(double x) const { return evaluate<double>(*root_, x); }

double FunctionExpr::deriv(double x) const {
  return evaluate<Dual<double>>(*root_, Dual<double>(x, 1.0)).d;
}

Dual<Dual<double>> FunctionExpr::eval_dual2(double x) const {
  using D = Dual<double>;
  return evaluate<Dual<D>>(*root_, Dual<D>(D(x, 1.0), D(1.0, 0.0)));
}

Jet FunctionExpr::jet(double x) const {
  auto r = eval_dual2(x);
  return {r.v.v, r.v.d, r.d.d};
}

std::string FunctionExpr::print() const { return show(*root_); }
bool FunctionExpr::is_constant() const { return !depends_on_var(*root_); }
bool FunctionExpr::has_cumint() const { return contains_cumint(*root_); }

}  // namespace reebstrip
