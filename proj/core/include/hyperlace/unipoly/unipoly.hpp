#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "hyperlace/polycore/scalar.hpp"

namespace hyperlace {

/// Dense univariate polynomial, coefficients ascending by degree. The zero
/// polynomial has no coefficients and degree -1; otherwise the leading
/// coefficient is nonzero.
template <class T>
class UniPoly {
 public:
  using Scalar = T;

  UniPoly() = default;
  explicit UniPoly(std::vector<T> coeffs);
  UniPoly(std::initializer_list<T> coeffs) : UniPoly(std::vector<T>(coeffs)) {}

  static UniPoly constant(T c) { return UniPoly(std::vector<T>{std::move(c)}); }
  /// The monomial c·t^k.
  static UniPoly monomial(std::size_t k, T c);
  /// prod (t - r_i).
  static UniPoly from_roots(const std::vector<T>& roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<T>& coeffs() const { return coeffs_; }
  /// Coefficient of t^k (zero past the degree).
  T coeff(std::size_t k) const;
  const T& leading() const { return coeffs_.back(); }

  T evaluate(const T& x) const;
  UniPoly derivative() const;
  /// f(a·t + b).
  UniPoly compose_affine(const T& a, const T& b) const;
  /// f(t + c).
  UniPoly taylor_shift(const T& c) const { return compose_affine(ScalarTraits<T>::from_int(1), c); }
  UniPoly pow(unsigned e) const;
  UniPoly monic() const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const T& s);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const T& s) { return a *= s; }
  friend UniPoly operator*(const T& s, UniPoly a) { return a *= s; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) { return multiply(a, b); }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  /// Euclidean division; the divisor must be nonzero.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& num, const UniPoly& den);

  std::string to_string(const char* var = "t") const;

 private:
  static UniPoly multiply(const UniPoly& a, const UniPoly& b);
  void trim();

  std::vector<T> coeffs_;
};

using QPoly = UniPoly<Rational>;
using FPoly = UniPoly<double>;

/// Scales a rational polynomial by a positive constant so that its
/// coefficients are coprime integers (sign of the leading coefficient kept).
QPoly primitive_part(const QPoly& f);
/// Monic gcd over Q; gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);
/// f / gcd(f, f'), primitive with positive leading coefficient.
QPoly squarefree_part(const QPoly& f);
/// Yun's decomposition: f = c · prod_i factors[i]^(i+1), each factor square-free.
std::vector<QPoly> squarefree_decomposition(const QPoly& f);

FPoly to_double(const QPoly& f);

}  // namespace hyperlace
