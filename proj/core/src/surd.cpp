#include "hyperlace/common/surd.hpp"

#include <cmath>
#include <sstream>

#include "hyperlace/common/error.hpp"

namespace hyperlace {

bool rational_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  root = Rational(sn, sd);
  root.canonicalize();
  return true;
}

QuadSurd::QuadSurd(Rational a, Rational b, Rational r) : a_(std::move(a)), b_(std::move(b)), r_(std::move(r)) {
  require(sgn(r_) >= 0, ErrorCode::InvalidArgument, "negative radicand " + hyperlace::to_string(r_));
  Rational root;
  if (sgn(b_) == 0 || sgn(r_) == 0) {
    b_ = 0;
    r_ = 0;
  } else if (rational_sqrt(r_, root)) {
    a_ += b_ * root;
    b_ = 0;
    r_ = 0;
  }
}

QuadSurd QuadSurd::sqrt(const Rational& q) { return QuadSurd(Rational(0), Rational(1), q); }

int QuadSurd::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * r_;
  int c = cmp(lhs, rhs);
  if (c > 0) return sa;
  if (c < 0) return sb;
  return 0;
}

double QuadSurd::to_double() const {
  long double v = static_cast<long double>(a_.get_d());
  if (sgn(b_) != 0) v += static_cast<long double>(b_.get_d()) * std::sqrt(static_cast<long double>(r_.get_d()));
  return static_cast<double>(v);
}

std::pair<Rational, Rational> QuadSurd::bracket(const Rational& width) const {
  if (is_rational()) return {a_, a_};
  // sqrt(r) = sqrt(num*den)/den; scale by 4^s so the integer sqrt is accurate enough.
  mpz_class nd = r_.get_num() * r_.get_den();
  Rational babs = sgn(b_) < 0 ? Rational(-b_) : b_;
  unsigned long s = 0;
  for (;;) {
    mpz_class scaled = nd << (2 * s);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    mpz_class denom = r_.get_den() << s;
    Rational lo(root, denom), hi(mpz_class(root + 1), denom);
    lo.canonicalize();
    hi.canonicalize();
    if (babs * (hi - lo) <= width) {
      Rational x = a_ + b_ * lo, y = a_ + b_ * hi;
      if (x > y) std::swap(x, y);
      return {x, y};
    }
    s += 8;
  }
}

std::string QuadSurd::to_string() const {
  std::ostringstream os;
  os << hyperlace::to_string(a_);
  if (!is_rational()) {
    Rational mag = hyperlace::abs(b_);
    os << (sgn(b_) < 0 ? " - " : " + ");
    if (mag != 1) os << hyperlace::to_string(mag) << "*";
    os << "sqrt(" << hyperlace::to_string(r_) << ")";
  }
  return os.str();
}

QuadSurd QuadSurd::squared() const {
  return QuadSurd(a_ * a_ + b_ * b_ * r_, 2 * a_ * b_, r_);
}

int sign_two_radicals(const Rational& alpha, const Rational& beta, const Rational& R,
                      const Rational& gamma, const Rational& S) {
  QuadSurd u(alpha, beta, R);
  QuadSurd v(Rational(0), gamma, S);
  int su = u.sign();
  int sv = v.sign();
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  // opposite signs: compare magnitudes via squares
  Rational vsq = gamma * gamma * S;
  int c = (u.squared() - vsq).sign();
  if (c > 0) return su;
  if (c < 0) return sv;
  return 0;
}

int compare(const QuadSurd& x, const QuadSurd& y) {
  if (x.is_rational() || y.is_rational() || x.radicand() == y.radicand()) {
    Rational rad = x.is_rational() ? y.radicand() : x.radicand();
    Rational bx = x.is_rational() ? Rational(0) : x.radical_coeff();
    Rational by = y.is_rational() ? Rational(0) : y.radical_coeff();
    return QuadSurd(x.rational_part() - y.rational_part(), bx - by, rad).sign();
  }
  return sign_two_radicals(x.rational_part() - y.rational_part(), x.radical_coeff(), x.radicand(),
                           -y.radical_coeff(), y.radicand());
}

int compare(const QuadSurd& x, const Rational& q) { return (x - q).sign(); }

}  // namespace hyperlace
