#include "hyperlace/unipoly/unipoly.hpp"

#include <sstream>

#include "hyperlace/common/error.hpp"

namespace hyperlace {

template <class T>
UniPoly<T>::UniPoly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) ScalarTraits<T>::normalize(c);
  trim();
}

template <class T>
void UniPoly<T>::trim() {
  while (!coeffs_.empty() && ScalarTraits<T>::is_zero(coeffs_.back())) coeffs_.pop_back();
}

template <class T>
UniPoly<T> UniPoly<T>::monomial(std::size_t k, T c) {
  std::vector<T> v(k + 1, ScalarTraits<T>::from_int(0));
  v[k] = std::move(c);
  return UniPoly(std::move(v));
}

template <class T>
UniPoly<T> UniPoly<T>::from_roots(const std::vector<T>& roots) {
  UniPoly p = constant(ScalarTraits<T>::from_int(1));
  for (const auto& r : roots) p = p * UniPoly({T(-r), ScalarTraits<T>::from_int(1)});
  return p;
}

template <class T>
T UniPoly<T>::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : ScalarTraits<T>::from_int(0);
}

template <class T>
T UniPoly<T>::evaluate(const T& x) const {
  T acc = ScalarTraits<T>::from_int(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

template <class T>
UniPoly<T> UniPoly<T>::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly();
  std::vector<T> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k];
    d[k - 1] *= ScalarTraits<T>::from_int(static_cast<long>(k));
  }
  return UniPoly(std::move(d));
}

template <class T>
UniPoly<T> UniPoly<T>::compose_affine(const T& a, const T& b) const {
  // Horner in the ring: acc = acc·(a t + b) + c_k
  UniPoly lin({b, a});
  UniPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * lin;
    acc += constant(*it);
  }
  return acc;
}

template <class T>
UniPoly<T> UniPoly<T>::pow(unsigned e) const {
  UniPoly result = constant(ScalarTraits<T>::from_int(1));
  UniPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

template <class T>
UniPoly<T> UniPoly<T>::monic() const {
  require(!is_zero(), ErrorCode::InvalidArgument, "monic of the zero polynomial");
  T inv = ScalarTraits<T>::from_int(1);
  inv /= leading();
  return *this * inv;
}

template <class T>
UniPoly<T> UniPoly<T>::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

template <class T>
UniPoly<T>& UniPoly<T>::operator+=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), ScalarTraits<T>::from_int(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

template <class T>
UniPoly<T>& UniPoly<T>::operator-=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), ScalarTraits<T>::from_int(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

template <class T>
UniPoly<T>& UniPoly<T>::operator*=(const T& s) {
  if (ScalarTraits<T>::is_zero(s)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

template <class T>
UniPoly<T> UniPoly<T>::multiply(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, ScalarTraits<T>::from_int(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (ScalarTraits<T>::is_zero(a.coeffs_[i])) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(out));
}

template <class T>
std::pair<UniPoly<T>, UniPoly<T>> UniPoly<T>::divmod(const UniPoly& num, const UniPoly& den) {
  require(!den.is_zero(), ErrorCode::InvalidArgument, "polynomial division by zero");
  if (num.degree() < den.degree()) return {UniPoly(), num};
  std::vector<T> rem = num.coeffs_;
  std::vector<T> quo(num.coeffs_.size() - den.coeffs_.size() + 1, ScalarTraits<T>::from_int(0));
  const std::size_t dd = den.coeffs_.size() - 1;
  for (std::size_t k = quo.size(); k-- > 0;) {
    T q = rem[k + dd];
    q /= den.leading();
    quo[k] = q;
    if (ScalarTraits<T>::is_zero(q)) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= q * den.coeffs_[j];
    rem[k + dd] = ScalarTraits<T>::from_int(0);
  }
  rem.resize(dd);
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

template <class T>
std::string UniPoly<T>::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (ScalarTraits<T>::is_zero(coeffs_[k])) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << ScalarTraits<T>::to_string(coeffs_[k]) << ")";
    if (k >= 1) os << "*" << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

template class UniPoly<Rational>;
template class UniPoly<double>;

QPoly primitive_part(const QPoly& f) {
  if (f.is_zero()) return f;
  mpz_class den_lcm = 1, num_gcd = 0;
  for (const auto& c : f.coeffs()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  return f * scale;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = primitive_part(a), y = primitive_part(b);
  while (!y.is_zero()) {
    QPoly r = QPoly::divmod(x, y).second;
    x = std::move(y);
    y = primitive_part(r);
  }
  return x.is_zero() ? x : x.monic();
}

QPoly squarefree_part(const QPoly& f) {
  require(!f.is_zero(), ErrorCode::InvalidArgument, "square-free part of the zero polynomial");
  if (f.degree() <= 0) return QPoly::constant(Rational(1));
  QPoly g = gcd(f, f.derivative());
  QPoly s = primitive_part(QPoly::divmod(f, g).first);
  if (sgn(s.leading()) < 0) s = -s;
  return s;
}

std::vector<QPoly> squarefree_decomposition(const QPoly& f) {
  require(!f.is_zero(), ErrorCode::InvalidArgument, "square-free decomposition of the zero polynomial");
  std::vector<QPoly> out;
  if (f.degree() <= 0) return out;
  QPoly fp = f.derivative();
  QPoly a = gcd(f, fp);
  QPoly b = QPoly::divmod(f, a).first;
  QPoly c = QPoly::divmod(fp, a).first;
  QPoly d = c - b.derivative();
  while (b.degree() > 0) {
    QPoly g = gcd(b, d);
    out.push_back(g.is_zero() ? g : g.monic());
    b = QPoly::divmod(b, g).first;
    c = QPoly::divmod(d, g).first;
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

FPoly to_double(const QPoly& f) {
  std::vector<double> c;
  c.reserve(f.coeffs().size());
  for (const auto& q : f.coeffs()) c.push_back(q.get_d());
  return FPoly(std::move(c));
}

}  // namespace hyperlace
