// Nestable forward-mode dual numbers.
//
// Dual<double> carries one directional derivative; nesting
// (Dual<Dual<double>> and deeper) yields exact mixed partials of any
// expression built from the arithmetic below. All metric kernels are
// evaluated with these types, so tensor derivatives carry no
// finite-difference noise.
#pragma once

#include <cmath>
#include <type_traits>

namespace finsler {

template <class T>
struct Dual {
    T v{};  // value
    T d{};  // derivative along the seeded direction

    constexpr Dual() = default;
    constexpr Dual(T value) : v(value), d(T{}) {}
    constexpr Dual(T value, T deriv) : v(value), d(deriv) {}
    // promote a plain double through any nesting depth
    template <class U = T>
        requires(!std::is_same_v<U, double>)
    constexpr Dual(double value) : v(value), d(T{}) {}
};

using D0 = double;
using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

// plain value of a nested dual
constexpr double value(double x) { return x; }
template <class T>
constexpr double value(const Dual<T>& x) { return value(x.v); }

template <class T>
constexpr Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T>
constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T>
constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <class T>
constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}

template <class T> constexpr Dual<T> operator+(const Dual<T>& a, double c) { return {a.v + c, a.d}; }
template <class T> constexpr Dual<T> operator+(double c, const Dual<T>& a) { return {a.v + c, a.d}; }
template <class T> constexpr Dual<T> operator-(const Dual<T>& a, double c) { return {a.v - c, a.d}; }
template <class T> constexpr Dual<T> operator-(double c, const Dual<T>& a) { return {c - a.v, -a.d}; }
template <class T> constexpr Dual<T> operator*(const Dual<T>& a, double c) { return {a.v * c, a.d * c}; }
template <class T> constexpr Dual<T> operator*(double c, const Dual<T>& a) { return {a.v * c, a.d * c}; }
template <class T> constexpr Dual<T> operator/(const Dual<T>& a, double c) { return {a.v / c, a.d / c}; }
template <class T> constexpr Dual<T> operator/(double c, const Dual<T>& a) { return Dual<T>(T(c)) / a; }

template <class T> Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) { a = a + b; return a; }
template <class T> Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) { a = a - b; return a; }
template <class T> Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) { a = a * b; return a; }
template <class T> Dual<T>& operator/=(Dual<T>& a, const Dual<T>& b) { a = a / b; return a; }
template <class T> Dual<T>& operator+=(Dual<T>& a, double c) { a = a + c; return a; }
template <class T> Dual<T>& operator*=(Dual<T>& a, double c) { a = a * c; return a; }

// comparisons act on values; used for branching and pivot selection only
template <class T, class U>
constexpr bool operator<(const Dual<T>& a, const Dual<U>& b) { return value(a) < value(b); }
template <class T> constexpr bool operator<(const Dual<T>& a, double b) { return value(a) < b; }
template <class T> constexpr bool operator<(double a, const Dual<T>& b) { return a < value(b); }
template <class T> constexpr bool operator>(const Dual<T>& a, double b) { return value(a) > b; }
template <class T> constexpr bool operator>(double a, const Dual<T>& b) { return a > value(b); }
template <class T, class U>
constexpr bool operator>(const Dual<T>& a, const Dual<U>& b) { return value(a) > value(b); }

using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
    T r = sqrt(a.v);
    return {r, a.d / (2.0 * r)};
}
template <class T>
Dual<T> exp(const Dual<T>& a) {
    T e = exp(a.v);
    return {e, a.d * e};
}
template <class T>
Dual<T> log(const Dual<T>& a) { return {log(a.v), a.d / a.v}; }
template <class T>
Dual<T> sin(const Dual<T>& a) { return {sin(a.v), a.d * cos(a.v)}; }
template <class T>
Dual<T> cos(const Dual<T>& a) { return {cos(a.v), -(a.d * sin(a.v))}; }
template <class T>
Dual<T> sinh(const Dual<T>& a) { return {sinh(a.v), a.d * cosh(a.v)}; }
template <class T>
Dual<T> cosh(const Dual<T>& a) { return {cosh(a.v), a.d * sinh(a.v)}; }
template <class T>
Dual<T> tanh(const Dual<T>& a) {
    T t = tanh(a.v);
    return {t, a.d * (1.0 - t * t)};
}
template <class T>
Dual<T> pow(const Dual<T>& a, double p) {
    T f = pow(a.v, p);
    return {f, a.d * (p * pow(a.v, p - 1.0))};
}
template <class T>
Dual<T> pow(const Dual<T>& a, const Dual<T>& b) {
    return exp(b * log(a));
}

}  // namespace finsler
