#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlace {

/// Exact rational in canonical lowest terms with a positive denominator.
using Rational = mpq_class;

enum class Backend { Rational, Float };

std::string_view backend_name(Backend b);
Backend parse_backend(std::string_view name);

/// Parses "p/q", integers, and finite decimals ("0.25", "-1.5e-3") exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
/// Exact binary value of a double as a rational.
Rational rational_from_double(double x);

/// p/q in lowest terms. Prefer this over Rational(p, q), which does not
/// canonicalize.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

int sign(const Rational& q);
Rational abs(const Rational& q);
Rational binomial(long n, long k);  // generalized: n may be negative
Rational factorial(long n);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Backend backend = Backend::Rational;
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational from_int(long v) { return Rational(v); }
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static std::string to_string(const Rational& x) { return hyperlace::to_string(x); }
  static Rational parse(std::string_view s) { return parse_rational(s); }
  static Rational magnitude(const Rational& x) { return hyperlace::abs(x); }
  static void normalize(Rational& x) { x.canonicalize(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr Backend backend = Backend::Float;
  static constexpr bool exact = false;
  static bool is_zero(double x) { return x == 0.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double to_double(double x) { return x; }
  static std::string to_string(double x);
  static double parse(std::string_view s);
  static double magnitude(double x) { return std::fabs(x); }
  static void normalize(double&) {}
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

/// A point or direction in R^n; its length must match the polynomial it is used with.
template <class T>
using Vector = std::vector<T>;

Vector<Rational> parse_vector(std::string_view csv);
Vector<double> to_double(const Vector<Rational>& v);

template <class T>
Vector<T> unit_vector(std::size_t n, std::size_t i) {
  Vector<T> v(n, ScalarTraits<T>::from_int(0));
  v[i] = ScalarTraits<T>::from_int(1);
  return v;
}

template <class T>
Vector<T> ones(std::size_t n) {
  return Vector<T>(n, ScalarTraits<T>::from_int(1));
}

template <class T>
Vector<T> operator+(const Vector<T>& a, const Vector<T>& b);
template <class T>
Vector<T> operator-(const Vector<T>& a, const Vector<T>& b);
template <class T>
Vector<T> operator*(const T& s, const Vector<T>& a);

}  // namespace hyperlace
