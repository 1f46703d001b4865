#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperlace/polycore/scalar.hpp"
#include "hyperlace/unipoly/unipoly.hpp"

namespace hyperlace {

using Exponent = std::vector<std::uint16_t>;

int total_degree(const Exponent& e);

/// Graded lexicographic order, largest monomial first: higher total degree
/// first, ties broken lexicographically with x_1 > x_2 > ... .
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Size caps applied to every polynomial built by this library.
struct PolyLimits {
  std::size_t max_nvars = 24;
  int max_degree = 16;
};

PolyLimits poly_limits();

/// Overrides the caps for the lifetime of the object. Not meant to be used
/// while other threads are building polynomials.
class ScopedPolyLimits {
 public:
  explicit ScopedPolyLimits(PolyLimits limits);
  ~ScopedPolyLimits();
  ScopedPolyLimits(const ScopedPolyLimits&) = delete;
  ScopedPolyLimits& operator=(const ScopedPolyLimits&) = delete;

 private:
  PolyLimits saved_;
};

/// Sparse multivariate polynomial; no zero coefficients are stored.
template <class T>
class MultiPoly {
 public:
  using Scalar = T;
  using Terms = std::map<Exponent, T, GradedLex>;

  explicit MultiPoly(std::size_t nvars = 0);
  MultiPoly(std::size_t nvars, Terms terms);

  static MultiPoly constant(std::size_t nvars, const T& c);
  static MultiPoly variable(std::size_t nvars, std::size_t i);
  static MultiPoly monomial(Exponent exp, const T& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Maximum total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  static constexpr Backend backend() { return ScalarTraits<T>::backend; }
  T coefficient(const Exponent& e) const;

  /// Adds c·x^e to the polynomial.
  void add_term(const Exponent& e, const T& c);

  T evaluate(const Vector<T>& x) const;
  MultiPoly partial(std::size_t i) const;
  /// D_v p = sum_k v_k dp/dx_k.
  MultiPoly directional_derivative(const Vector<T>& v) const;
  /// t -> p(base + t·dir).
  UniPoly<T> restrict_to_line(const Vector<T>& base, const Vector<T>& dir) const;
  /// x -> p(x - v).
  MultiPoly shift(const Vector<T>& v) const;
  /// Substitutes x_i -> images[i]; all images share one variable count.
  MultiPoly compose(const std::vector<MultiPoly>& images) const;
  /// Same polynomial viewed in `new_nvars` variables, variable i renamed to offset + i.
  MultiPoly embed(std::size_t new_nvars, std::size_t offset) const;
  MultiPoly pow(unsigned e) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const T& s);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const T& s) { return a *= s; }
  friend MultiPoly operator*(const T& s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return multiply(a, b); }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Human-readable form, e.g. "x1*x2 - 3/2*x3^2".
  std::string to_string() const;

 private:
  static MultiPoly multiply(const MultiPoly& a, const MultiPoly& b);
  void check_dim(std::size_t n, const char* what) const;
  void check_caps() const;

  std::size_t nvars_ = 0;
  Terms terms_;
};

using QMultiPoly = MultiPoly<Rational>;
using FMultiPoly = MultiPoly<double>;

FMultiPoly to_double(const QMultiPoly& p);

// --- built-in families ------------------------------------------------------

/// x_1 x_2 ... x_n.
QMultiPoly coordinate_product(std::size_t n);
/// e_d(x_1, ..., x_n).
QMultiPoly elementary_symmetric(std::size_t n, std::size_t d);
/// x_1^2 - x_2^2 - ... - x_n^2.
QMultiPoly lorentz(std::size_t n);
/// Determinant of a symmetric d x d matrix whose entries X_ij = X_ji are the
/// variables x_ij, i <= j, in row-major order (d = 2: x11, x12, x22).
QMultiPoly symmetric_determinant(std::size_t d);
/// Index of x_ij (either order) in the symmetric_determinant variable list.
std::size_t sym_index(std::size_t d, std::size_t i, std::size_t j);
/// Matrix side length d with d(d+1)/2 == n; throws otherwise.
std::size_t sym_side(std::size_t n);
/// h(x^1) h(x^2) ... h(x^k) on k disjoint blocks of h's variables.
template <class T>
MultiPoly<T> block_product(const MultiPoly<T>& h, std::size_t k);

}  // namespace hyperlace
