#pragma once

#include <string>
#include <utility>

#include "hyperlace/polycore/scalar.hpp"

namespace hyperlace {

/// Exact real number of the form a + b·sqrt(r) with rational a, b and r >= 0.
/// Perfect-square radicands are folded into the rational part on construction,
/// so `is_rational()` is exact.
class QuadSurd {
 public:
  QuadSurd() = default;
  explicit QuadSurd(Rational a) : a_(std::move(a)) {}
  QuadSurd(Rational a, Rational b, Rational r);

  /// sqrt(q) for q >= 0.
  static QuadSurd sqrt(const Rational& q);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_coeff() const { return b_; }
  const Rational& radicand() const { return r_; }
  bool is_rational() const { return sgn(b_) == 0; }

  int sign() const;
  double to_double() const;
  /// Rational bounds lo <= value <= hi with hi - lo <= width.
  std::pair<Rational, Rational> bracket(const Rational& width) const;
  std::string to_string() const;  // "a + b*sqrt(r)"

  QuadSurd operator-() const { return QuadSurd(-a_, -b_, r_); }
  friend QuadSurd operator+(const QuadSurd& x, const Rational& q) { return QuadSurd(x.a_ + q, x.b_, x.r_); }
  friend QuadSurd operator-(const QuadSurd& x, const Rational& q) { return QuadSurd(x.a_ - q, x.b_, x.r_); }
  friend QuadSurd operator*(const QuadSurd& x, const Rational& q) { return QuadSurd(x.a_ * q, x.b_ * q, x.r_); }
  friend QuadSurd operator/(const QuadSurd& x, const Rational& q) { return QuadSurd(x.a_ / q, x.b_ / q, x.r_); }
  /// Square of the value; stays in Q(sqrt(r)).
  QuadSurd squared() const;

 private:
  Rational a_{0};
  Rational b_{0};
  Rational r_{0};
};

/// Three-way exact comparison, radicands may differ.
int compare(const QuadSurd& x, const QuadSurd& y);
int compare(const QuadSurd& x, const Rational& q);

/// Sign of alpha + beta*sqrt(R) + gamma*sqrt(S), exact.
int sign_two_radicals(const Rational& alpha, const Rational& beta, const Rational& R,
                      const Rational& gamma, const Rational& S);

/// True when q is the square of a rational; sets root to the nonnegative root.
bool rational_sqrt(const Rational& q, Rational& root);

}  // namespace hyperlace
