#include "hyperlace/polycore/scalar.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "hyperlace/common/error.hpp"

namespace hyperlace {

std::string_view backend_name(Backend b) {
  return b == Backend::Rational ? "rational" : "float";
}

Backend parse_backend(std::string_view name) {
  if (name == "rational") return Backend::Rational;
  if (name == "float") return Backend::Float;
  fail(ErrorCode::ParseError, "unknown backend '" + std::string(name) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) fail(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) fail(ErrorCode::ParseError, "empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(s.substr(0, slash));
    mpz_class den = parse_integer(s.substr(slash + 1));
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(s) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  // decimal with optional exponent
  bool neg = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view ex = body.substr(e + 1);
    mpz_class z = parse_integer(ex);
    if (!z.fits_slong_p() || abs(z) > 4096) fail(ErrorCode::ParseError, "exponent out of range");
    exponent = z.get_si();
    body = body.substr(0, e);
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot);
    std::string_view fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      fail(ErrorCode::ParseError, "bad decimal '" + std::string(s) + "'");
    digits = std::string(ip) + std::string(fp);
    frac_len = static_cast<long>(fp.size());
  } else {
    if (!all_digits(body)) fail(ErrorCode::ParseError, "bad number '" + std::string(s) + "'");
    digits = std::string(body);
  }
  mpz_class num(digits, 10);
  long shift = exponent - frac_len;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
  Rational q = shift >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational rational_from_double(double x) {
  Rational q;
  q = x;  // mpq_set_d is exact
  return q;
}

int sign(const Rational& q) { return sgn(q); }
Rational abs(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

Rational binomial(long n, long k) {
  if (k < 0) return 0;
  Rational r = 1;
  for (long i = 0; i < k; ++i) {
    r *= Rational(n - i);
    r /= Rational(i + 1);
  }
  return r;
}

Rational factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

std::string ScalarTraits<double>::to_string(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double ScalarTraits<double>::parse(std::string_view s) {
  s = trim(s);
  if (s.find('/') != std::string_view::npos) return parse_rational(s).get_d();
  std::string tmp(s);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (end == tmp.c_str() || *end != '\0') fail(ErrorCode::ParseError, "bad float '" + tmp + "'");
  return v;
}

Vector<Rational> parse_vector(std::string_view csv) {
  Vector<Rational> out;
  std::string_view s = trim(csv);
  if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  while (!s.empty()) {
    auto comma = s.find(',');
    out.push_back(parse_rational(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

Vector<double> to_double(const Vector<Rational>& v) {
  Vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

template <class T>
Vector<T> operator+(const Vector<T>& a, const Vector<T>& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "vector sum: length mismatch");
  Vector<T> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

template <class T>
Vector<T> operator-(const Vector<T>& a, const Vector<T>& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "vector difference: length mismatch");
  Vector<T> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

template <class T>
Vector<T> operator*(const T& s, const Vector<T>& a) {
  Vector<T> out(a);
  for (auto& x : out) x *= s;
  return out;
}

template Vector<Rational> operator+(const Vector<Rational>&, const Vector<Rational>&);
template Vector<double> operator+(const Vector<double>&, const Vector<double>&);
template Vector<Rational> operator-(const Vector<Rational>&, const Vector<Rational>&);
template Vector<double> operator-(const Vector<double>&, const Vector<double>&);
template Vector<Rational> operator*(const Rational&, const Vector<Rational>&);
template Vector<double> operator*(const double&, const Vector<double>&);

}  // namespace hyperlace
