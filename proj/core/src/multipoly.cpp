#include "hyperlace/polycore/multipoly.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>
#include <type_traits>

#include "hyperlace/common/error.hpp"

namespace hyperlace {

namespace {
std::atomic<std::size_t> g_max_nvars{24};
std::atomic<int> g_max_degree{16};
}  // namespace

PolyLimits poly_limits() { return {g_max_nvars.load(), g_max_degree.load()}; }

ScopedPolyLimits::ScopedPolyLimits(PolyLimits limits) : saved_(poly_limits()) {
  g_max_nvars = limits.max_nvars;
  g_max_degree = limits.max_degree;
}

ScopedPolyLimits::~ScopedPolyLimits() {
  g_max_nvars = saved_.max_nvars;
  g_max_degree = saved_.max_degree;
}

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

template <class T>
MultiPoly<T>::MultiPoly(std::size_t nvars) : nvars_(nvars) {
  check_caps();
}

template <class T>
MultiPoly<T>::MultiPoly(std::size_t nvars, Terms terms) : nvars_(nvars) {
  for (auto& [e, c] : terms) {
    require(e.size() == nvars, ErrorCode::DimensionMismatch, "exponent length differs from nvars");
    ScalarTraits<T>::normalize(c);
    if (!ScalarTraits<T>::is_zero(c)) terms_.emplace(e, c);
  }
  check_caps();
}

template <class T>
void MultiPoly<T>::check_caps() const {
  const auto lim = poly_limits();
  if (nvars_ > lim.max_nvars) {
    fail(ErrorCode::CapExceeded, "polynomial has " + std::to_string(nvars_) + " variables; cap is " +
                                     std::to_string(lim.max_nvars));
  }
  int d = degree();
  if (d > lim.max_degree) {
    fail(ErrorCode::CapExceeded,
         "polynomial has degree " + std::to_string(d) + "; cap is " + std::to_string(lim.max_degree));
  }
}

template <class T>
void MultiPoly<T>::check_dim(std::size_t n, const char* what) const {
  if (n != nvars_) {
    fail(ErrorCode::DimensionMismatch, std::string(what) + " has length " + std::to_string(n) +
                                           ", polynomial has " + std::to_string(nvars_) + " variables");
  }
}

template <class T>
MultiPoly<T> MultiPoly<T>::constant(std::size_t nvars, const T& c) {
  Terms t;
  t.emplace(Exponent(nvars, 0), c);
  return MultiPoly(nvars, std::move(t));
}

template <class T>
MultiPoly<T> MultiPoly<T>::variable(std::size_t nvars, std::size_t i) {
  require(i < nvars, ErrorCode::DimensionMismatch, "variable index out of range");
  Exponent e(nvars, 0);
  e[i] = 1;
  return monomial(std::move(e), ScalarTraits<T>::from_int(1));
}

template <class T>
MultiPoly<T> MultiPoly<T>::monomial(Exponent exp, const T& c) {
  const std::size_t n = exp.size();
  Terms t;
  t.emplace(std::move(exp), c);
  return MultiPoly(n, std::move(t));
}

template <class T>
int MultiPoly<T>::degree() const {
  // graded order: the first term has the largest total degree
  return terms_.empty() ? -1 : total_degree(terms_.begin()->first);
}

template <class T>
bool MultiPoly<T>::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = degree();
  return total_degree(terms_.rbegin()->first) == d;
}

template <class T>
T MultiPoly<T>::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ScalarTraits<T>::from_int(0) : it->second;
}

template <class T>
void MultiPoly<T>::add_term(const Exponent& e, const T& c) {
  check_dim(e.size(), "exponent");
  if (ScalarTraits<T>::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) {
    ScalarTraits<T>::normalize(it->second);
  } else {
    it->second += c;
    if (ScalarTraits<T>::is_zero(it->second)) terms_.erase(it);
  }
}

namespace {

template <class T>
std::vector<std::vector<T>> power_table(const Vector<T>& x, const std::vector<int>& max_exp) {
  std::vector<std::vector<T>> pw(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    pw[i].reserve(max_exp[i] + 1);
    pw[i].push_back(ScalarTraits<T>::from_int(1));
    for (int k = 1; k <= max_exp[i]; ++k) pw[i].push_back(pw[i].back() * x[i]);
  }
  return pw;
}

template <class Terms>
std::vector<int> max_exponents(std::size_t n, const Terms& terms) {
  std::vector<int> m(n, 0);
  for (const auto& [e, c] : terms) {
    for (std::size_t i = 0; i < n; ++i) m[i] = std::max<int>(m[i], e[i]);
  }
  return m;
}

}  // namespace

template <class T>
T MultiPoly<T>::evaluate(const Vector<T>& x) const {
  check_dim(x.size(), "evaluation point");
  auto pw = power_table(x, max_exponents(nvars_, terms_));
  T acc = ScalarTraits<T>::from_int(0);
  for (const auto& [e, c] : terms_) {
    T term = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i]) term *= pw[i][e[i]];
    }
    acc += term;
  }
  return acc;
}

template <class T>
MultiPoly<T> MultiPoly<T>::partial(std::size_t i) const {
  require(i < nvars_, ErrorCode::DimensionMismatch, "partial derivative index out of range");
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    --f[i];
    out.add_term(f, c * ScalarTraits<T>::from_int(e[i]));
  }
  return out;
}

template <class T>
MultiPoly<T> MultiPoly<T>::directional_derivative(const Vector<T>& v) const {
  check_dim(v.size(), "direction");
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0 || ScalarTraits<T>::is_zero(v[i])) continue;
      Exponent f = e;
      --f[i];
      out.add_term(f, c * v[i] * ScalarTraits<T>::from_int(e[i]));
    }
  }
  return out;
}

namespace {

// Integer-arithmetic restriction for rational data: scales the line by the
// common denominator L of base and dir and the coefficients by their common
// denominator C, works in Z, and divides by C * L^degree at the end.
template <class Terms>
QPoly restrict_rational(const Terms& terms, std::size_t nvars, int degree, const std::vector<int>& mx,
                        const Vector<Rational>& base, const Vector<Rational>& dir) {
  mpz_class L = 1, C = 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), base[i].get_den_mpz_t());
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), dir[i].get_den_mpz_t());
  }
  for (const auto& [e, c] : terms) mpz_lcm(C.get_mpz_t(), C.get_mpz_t(), c.get_den_mpz_t());
  const int dmax = std::max(degree, 0);
  std::vector<mpz_class> lpow(dmax + 1);
  lpow[0] = 1;
  for (int k = 1; k <= dmax; ++k) lpow[k] = lpow[k - 1] * L;

  std::vector<std::vector<std::vector<mpz_class>>> pw(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    const mpz_class b = base[i].get_num() * (L / base[i].get_den());
    const mpz_class d = dir[i].get_num() * (L / dir[i].get_den());
    pw[i].push_back({mpz_class(1)});
    for (int k = 1; k <= mx[i]; ++k) {
      const auto& prev = pw[i].back();
      std::vector<mpz_class> next(prev.size() + 1);
      for (std::size_t a = 0; a < prev.size(); ++a) {
        if (sgn(b) != 0) next[a] += prev[a] * b;
        if (sgn(d) != 0) next[a + 1] += prev[a] * d;
      }
      pw[i].push_back(std::move(next));
    }
  }
  const std::size_t len = static_cast<std::size_t>(dmax) + 1;
  std::vector<mpz_class> acc(len), term(len), tmp(len);
  for (const auto& [e, c] : terms) {
    std::size_t size = 1;
    int deg = 0;
    for (auto x : e) deg += x;
    term[0] = c.get_num() * (C / c.get_den()) * lpow[dmax - deg];
    for (std::size_t i = 0; i < nvars; ++i) {
      if (!e[i]) continue;
      const auto& f = pw[i][e[i]];
      for (std::size_t a = 0; a < size + f.size() - 1; ++a) tmp[a] = 0;
      for (std::size_t a = 0; a < size; ++a) {
        if (sgn(term[a]) == 0) continue;
        for (std::size_t b = 0; b < f.size(); ++b)
          if (sgn(f[b]) != 0) mpz_addmul(tmp[a + b].get_mpz_t(), term[a].get_mpz_t(), f[b].get_mpz_t());
      }
      size += f.size() - 1;
      std::swap(term, tmp);
    }
    for (std::size_t k = 0; k < size; ++k) acc[k] += term[k];
  }
  const mpz_class den = C * lpow[dmax];
  std::vector<Rational> out(len);
  for (std::size_t k = 0; k < len; ++k) {
    out[k] = Rational(acc[k], den);
    out[k].canonicalize();
  }
  return QPoly(std::move(out));
}

}  // namespace

template <class T>
UniPoly<T> MultiPoly<T>::restrict_to_line(const Vector<T>& base, const Vector<T>& dir) const {
  check_dim(base.size(), "base point");
  check_dim(dir.size(), "direction");
  const auto mx = max_exponents(nvars_, terms_);
  if constexpr (std::is_same_v<T, Rational>) return restrict_rational(terms_, nvars_, degree(), mx, base, dir);
  const T zero = ScalarTraits<T>::from_int(0);
  // pw[i][k] = coefficients of (base_i + t dir_i)^k
  std::vector<std::vector<std::vector<T>>> pw(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    pw[i].push_back({ScalarTraits<T>::from_int(1)});
    for (int k = 1; k <= mx[i]; ++k) {
      const auto& prev = pw[i].back();
      std::vector<T> next(prev.size() + 1, zero);
      for (std::size_t a = 0; a < prev.size(); ++a) {
        next[a] += prev[a] * base[i];
        next[a + 1] += prev[a] * dir[i];
      }
      pw[i].push_back(std::move(next));
    }
  }
  // accumulate coefficient vectors in reusable buffers
  const std::size_t len = static_cast<std::size_t>(std::max(degree(), 0)) + 1;
  std::vector<T> acc(len, zero), term(len, zero), tmp(len, zero);
  for (const auto& [e, c] : terms_) {
    std::size_t size = 1;
    term[0] = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      const auto& f = pw[i][e[i]];
      for (std::size_t a = 0; a < size + f.size() - 1; ++a) tmp[a] = zero;
      for (std::size_t a = 0; a < size; ++a) {
        if (ScalarTraits<T>::is_zero(term[a])) continue;
        for (std::size_t b = 0; b < f.size(); ++b)
          if (!ScalarTraits<T>::is_zero(f[b])) tmp[a + b] += term[a] * f[b];
      }
      size += f.size() - 1;
      std::swap(term, tmp);
    }
    for (std::size_t k = 0; k < size; ++k) acc[k] += term[k];
  }
  return UniPoly<T>(std::move(acc));
}

template <class T>
MultiPoly<T> MultiPoly<T>::compose(const std::vector<MultiPoly>& images) const {
  check_dim(images.size(), "image list");
  require(!images.empty() || nvars_ == 0, ErrorCode::InvalidArgument, "compose needs images");
  const std::size_t m = images.empty() ? 0 : images.front().nvars();
  for (const auto& im : images) {
    require(im.nvars() == m, ErrorCode::DimensionMismatch, "compose images differ in variable count");
  }
  const auto mx = max_exponents(nvars_, terms_);
  std::vector<std::vector<MultiPoly>> pw(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    pw[i].push_back(MultiPoly::constant(m, ScalarTraits<T>::from_int(1)));
    for (int k = 1; k <= mx[i]; ++k) pw[i].push_back(pw[i].back() * images[i]);
  }
  MultiPoly out(m);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(m, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i]) term = term * pw[i][e[i]];
    }
    out += term;
  }
  return out;
}

template <class T>
MultiPoly<T> MultiPoly<T>::shift(const Vector<T>& v) const {
  check_dim(v.size(), "shift vector");
  std::vector<MultiPoly> images;
  images.reserve(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    images.push_back(variable(nvars_, i) - constant(nvars_, v[i]));
  }
  return compose(images);
}

template <class T>
MultiPoly<T> MultiPoly<T>::embed(std::size_t new_nvars, std::size_t offset) const {
  require(offset + nvars_ <= new_nvars, ErrorCode::DimensionMismatch, "embedding does not fit");
  Terms t;
  for (const auto& [e, c] : terms_) {
    Exponent f(new_nvars, 0);
    std::copy(e.begin(), e.end(), f.begin() + static_cast<long>(offset));
    t.emplace(std::move(f), c);
  }
  return MultiPoly(new_nvars, std::move(t));
}

template <class T>
MultiPoly<T> MultiPoly<T>::pow(unsigned e) const {
  MultiPoly result = constant(nvars_, ScalarTraits<T>::from_int(1));
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

template <class T>
MultiPoly<T> MultiPoly<T>::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

template <class T>
MultiPoly<T>& MultiPoly<T>::operator+=(const MultiPoly& o) {
  check_dim(o.nvars_, "summand");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

template <class T>
MultiPoly<T>& MultiPoly<T>::operator-=(const MultiPoly& o) {
  check_dim(o.nvars_, "subtrahend");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

template <class T>
MultiPoly<T>& MultiPoly<T>::operator*=(const T& s) {
  if (ScalarTraits<T>::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

template <class T>
MultiPoly<T> MultiPoly<T>::multiply(const MultiPoly& a, const MultiPoly& b) {
  a.check_dim(b.nvars_, "factor");
  const auto lim = poly_limits();
  if (a.degree() + b.degree() > lim.max_degree && !a.is_zero() && !b.is_zero()) {
    fail(ErrorCode::CapExceeded, "product degree " + std::to_string(a.degree() + b.degree()) +
                                     " exceeds cap " + std::to_string(lim.max_degree));
  }
  MultiPoly out(a.nvars_);
  Exponent f(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.nvars_; ++i) f[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(f, ca * cb);
    }
  }
  return out;
}

template <class T>
std::string MultiPoly<T>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string cs = ScalarTraits<T>::to_string(c);
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool is_const = total_degree(e) == 0;
    bool unit = cs == "1";
    if (!unit || is_const) os << cs;
    bool need_star = !unit;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (need_star) os << "*";
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

template class MultiPoly<Rational>;
template class MultiPoly<double>;

FMultiPoly to_double(const QMultiPoly& p) {
  FMultiPoly::Terms t;
  for (const auto& [e, c] : p.terms()) t.emplace(e, c.get_d());
  return FMultiPoly(p.nvars(), std::move(t));
}

// --- families ---------------------------------------------------------------

QMultiPoly coordinate_product(std::size_t n) {
  return QMultiPoly::monomial(Exponent(n, 1), Rational(1));
}

QMultiPoly elementary_symmetric(std::size_t n, std::size_t d) {
  require(d <= n, ErrorCode::InvalidArgument,
          "elementary symmetric degree " + std::to_string(d) + " exceeds variable count " + std::to_string(n));
  QMultiPoly::Terms t;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(d), true);
  do {
    Exponent e(n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = pick[i] ? 1 : 0;
    t.emplace(std::move(e), Rational(1));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return QMultiPoly(n, std::move(t));
}

QMultiPoly lorentz(std::size_t n) {
  require(n >= 2, ErrorCode::InvalidArgument, "Lorentz form needs at least 2 variables");
  QMultiPoly p(n);
  for (std::size_t i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = 2;
    p.add_term(e, Rational(i == 0 ? 1 : -1));
  }
  return p;
}

std::size_t sym_index(std::size_t d, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  require(j < d, ErrorCode::DimensionMismatch, "matrix index out of range");
  // rows 0..i-1 contribute d, d-1, ..., d-i+1 entries
  return i * d - i * (i - 1) / 2 + (j - i);
}

std::size_t sym_side(std::size_t n) {
  for (std::size_t d = 1; d * (d + 1) / 2 <= n; ++d) {
    if (d * (d + 1) / 2 == n) return d;
  }
  fail(ErrorCode::DimensionMismatch, std::to_string(n) + " is not a triangular number");
}

QMultiPoly symmetric_determinant(std::size_t d) {
  require(d >= 1 && d <= 5, ErrorCode::InvalidArgument, "symmetric determinant supports 1 <= d <= 5");
  const std::size_t n = d * (d + 1) / 2;
  QMultiPoly p(n);
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) inversions += perm[a] > perm[b];
    }
    Exponent e(n, 0);
    for (std::size_t r = 0; r < d; ++r) ++e[sym_index(d, r, perm[r])];
    p.add_term(e, Rational(inversions % 2 ? -1 : 1));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

template <class T>
MultiPoly<T> block_product(const MultiPoly<T>& h, std::size_t k) {
  require(k >= 1, ErrorCode::InvalidArgument, "block product needs k >= 1");
  const std::size_t n = h.nvars();
  MultiPoly<T> g = h.embed(k * n, 0);
  for (std::size_t b = 1; b < k; ++b) g = g * h.embed(k * n, b * n);
  return g;
}

template QMultiPoly block_product(const QMultiPoly&, std::size_t);
template FMultiPoly block_product(const FMultiPoly&, std::size_t);

}  // namespace hyperlace
