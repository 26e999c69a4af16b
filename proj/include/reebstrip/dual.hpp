#pragma once

#include <cmath>
#include <type_traits>

namespace reebstrip {

/// Forward-mode dual number. Nesting (Dual<Dual<double>>) yields second
/// derivatives.
template <class T>
struct Dual {
  T v{};
  T d{};

  Dual() = default;
  Dual(T value, T deriv) : v(value), d(deriv) {}
  explicit Dual(double c) : v(c), d(0.0) {}
};

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};

inline double value_of(double x) { return x; }
template <class T> double value_of(const Dual<T>& x) { return value_of(x.v); }

template <class T> Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T> Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  T q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}
template <class T> Dual<T> operator*(double c, const Dual<T>& a) { return {c * a.v, c * a.d}; }

template <class T> Dual<T> sin(const Dual<T>& a) {
  using std::sin; using std::cos;
  return {sin(a.v), cos(a.v) * a.d};
}
template <class T> Dual<T> cos(const Dual<T>& a) {
  using std::sin; using std::cos;
  return {cos(a.v), -(sin(a.v) * a.d)};
}
template <class T> Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  T e = exp(a.v);
  return {e, e * a.d};
}
template <class T> Dual<T> atan(const Dual<T>& a) {
  using std::atan;
  T one(1.0);
  return {atan(a.v), a.d / (one + a.v * a.v)};
}
template <class T> Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T s = sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}

}  // namespace reebstrip
