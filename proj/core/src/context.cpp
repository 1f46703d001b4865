#include "hyperlace/hyperb/context.hpp"

#include <algorithm>
#include <cmath>

#include "hyperlace/common/error.hpp"
#include "hyperlace/common/parallel.hpp"

namespace hyperlace {

std::string family_name(Family f) {
  switch (f) {
    case Family::Generic: return "generic";
    case Family::Monomial: return "monomial";
    case Family::ElementarySymmetric: return "elementary_symmetric";
    case Family::SymmetricDeterminant: return "symmetric_determinant";
    case Family::Lorentz: return "lorentz";
    case Family::BlockProduct: return "block_product";
    case Family::MixedOperator: return "mixed_operator";
  }
  return "unknown";
}

namespace {

template <class T>
T zero() {
  return ScalarTraits<T>::from_int(0);
}

template <class T>
int sign_of(const T& x) {
  if constexpr (is_exact_v<T>) {
    return sgn(x);
  } else {
    return (x > 0) - (x < 0);
  }
}

// h == c * f for some nonzero c
template <class T>
bool is_multiple_of(const MultiPoly<T>& h, const QMultiPoly& f) {
  if (h.nvars() != f.nvars() || h.term_count() != f.term_count() || h.is_zero()) return false;
  const T c = h.terms().begin()->second / ScalarTraits<T>::from_rational(f.terms().begin()->second);
  for (const auto& [e, fc] : f.terms()) {
    auto it = h.terms().find(e);
    if (it == h.terms().end()) return false;
    if (it->second != c * ScalarTraits<T>::from_rational(fc)) return false;
  }
  return true;
}

// Positive definite via an unpivoted LDL^T: all pivots positive.
template <class T>
bool positive_definite(std::vector<std::vector<T>> a) {
  const std::size_t d = a.size();
  for (std::size_t k = 0; k < d; ++k) {
    if (!(a[k][k] > zero<T>())) return false;
    for (std::size_t i = k + 1; i < d; ++i) {
      T f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < d; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

template <class T>
std::vector<std::string> render(const Vector<T>& x) {
  std::vector<std::string> out;
  for (const auto& v : x) out.push_back(ScalarTraits<T>::to_string(v));
  return out;
}

template <class T>
bool restriction_real_rooted(const UniPoly<T>& p) {
  if (p.degree() < 1) return true;
  if constexpr (is_exact_v<T>) {
    return is_real_rooted(p);
  } else {
    try {
      float_real_roots(p);
      return true;
    } catch (const Error& err) {
      if (err.code() == ErrorCode::NotRealRooted) return false;
      throw;
    }
  }
}

template <class T>
Vector<T> negate(const Vector<T>& v) {
  Vector<T> out = v;
  for (auto& x : out) x = -x;
  return out;
}

}  // namespace

template <class T>
HyperbolicContext<T> HyperbolicContext<T>::from_parts(MultiPoly<T> h, Vector<T> e, Certification cert) {
  require(h.is_homogeneous(), ErrorCode::InvalidArgument, "hyperbolic polynomial must be homogeneous");
  require(e.size() == h.nvars(), ErrorCode::DimensionMismatch, "direction length differs from nvars");
  HyperbolicContext ctx;
  ctx.h_at_e_ = h.evaluate(e);
  require(!ScalarTraits<T>::is_zero(ctx.h_at_e_), ErrorCode::PreconditionViolated, "h(e) = 0");
  ctx.degree_ = std::max(h.degree(), 0);
  ctx.h_ = std::move(h);
  ctx.e_ = std::move(e);
  ctx.cert_ = std::move(cert);
  return ctx;
}

template <class T>
UniPoly<T> HyperbolicContext<T>::char_poly(const Vector<T>& x) const {
  require(x.size() == nvars(), ErrorCode::DimensionMismatch, "point length differs from nvars");
  UniPoly<T> p = h_.restrict_to_line(negate(x), e_);
  T inv = ScalarTraits<T>::from_int(1);
  inv /= h_at_e_;
  return p * inv;
}

template <class T>
Family recognize_family(const MultiPoly<T>& h, const Vector<T>& e) {
  const std::size_t n = h.nvars();
  if (h.is_zero() || e.size() != n) return Family::Generic;
  const int d = h.degree();
  if (h.term_count() == 1) {
    const auto& exp = h.terms().begin()->first;
    for (std::size_t i = 0; i < n; ++i) {
      if (exp[i] && ScalarTraits<T>::is_zero(e[i])) return Family::Generic;
    }
    return Family::Monomial;
  }
  if (d >= 1 && static_cast<std::size_t>(d) < n && is_multiple_of(h, elementary_symmetric(n, d))) {
    int s = sign_of(e[0]);
    bool same = s != 0;
    for (const auto& x : e) same = same && sign_of(x) == s;
    if (same) return Family::ElementarySymmetric;
  }
  if (d == 2 && n >= 2 && is_multiple_of(h, lorentz(n))) {
    T rest = zero<T>();
    for (std::size_t i = 1; i < n; ++i) rest += e[i] * e[i];
    if (e[0] * e[0] > rest) return Family::Lorentz;
  }
  try {
    const std::size_t side = sym_side(n);
    if (side >= 2 && side <= 5 && d == static_cast<int>(side) &&
        is_multiple_of(h, symmetric_determinant(side))) {
      auto m = unflatten_symmetric(e);
      if (positive_definite(m) || positive_definite(unflatten_symmetric(negate(e)))) {
        return Family::SymmetricDeterminant;
      }
    }
  } catch (const Error&) {
  }
  return Family::Generic;
}

template <class T>
HyperbolicContext<T> certify_hyperbolic(const MultiPoly<T>& h, const Vector<T>& e,
                                        const CertifyStrategy& strategy) {
  require(h.is_homogeneous(), ErrorCode::InvalidArgument, "hyperbolic polynomial must be homogeneous");
  require(e.size() == h.nvars(), ErrorCode::DimensionMismatch, "direction length differs from nvars");
  require(!ScalarTraits<T>::is_zero(h.evaluate(e)), ErrorCode::PreconditionViolated, "h(e) = 0");

  const Family fam = recognize_family(h, e);
  Certification cert;
  cert.family = fam;
  bool structural = strategy.kind == CertifyStrategy::Kind::Structural ||
                    (strategy.kind == CertifyStrategy::Kind::Auto && fam != Family::Generic);
  if (structural) {
    if (fam == Family::Generic) {
      fail(ErrorCode::NoStructuralRule, "no structural hyperbolicity rule matches this polynomial and direction");
    }
    cert.strategy = "structural";
    switch (fam) {
      case Family::Monomial:
        cert.evidence.push_back("h is a monomial and e is nonzero on its support");
        break;
      case Family::ElementarySymmetric:
        cert.evidence.push_back("h is a multiple of e_" + std::to_string(h.degree()) +
                                " and e lies in an open orthant cone");
        break;
      case Family::Lorentz:
        cert.evidence.push_back("h is a multiple of the Lorentz form and e lies inside the light cone");
        break;
      case Family::SymmetricDeterminant:
        cert.evidence.push_back("h is a multiple of det(X) and e is a definite matrix");
        break;
      default:
        break;
    }
    return HyperbolicContext<T>::from_parts(h, e, std::move(cert));
  }

  cert.strategy = "sampled";
  cert.samples = strategy.samples;
  cert.seed = strategy.seed;
  Rng rng(strategy.seed);
  std::vector<Vector<T>> points(strategy.samples);
  for (auto& x : points) {
    x.resize(h.nvars());
    for (auto& c : x) c = ScalarTraits<T>::from_int(rng.uniform_int(-strategy.box, strategy.box));
  }
  auto ok = parallel_map(points.size(), [&](std::size_t i) {
    return restriction_real_rooted(h.restrict_to_line(negate(points[i]), e)) ? 1 : 0;
  });
  for (std::size_t i = 0; i < ok.size(); ++i) {
    if (!ok[i]) {
      throw Error(ErrorCode::NotHyperbolic,
                  "sampled counterexample: h(te - x) is not real-rooted at sample " + std::to_string(i))
          .with_witness(render(points[i]));
    }
  }
  cert.evidence.push_back(std::to_string(strategy.samples) + " restrictions t -> h(te - x) real-rooted, x from [-" +
                          std::to_string(strategy.box) + ", " + std::to_string(strategy.box) + "]^n" +
                          (is_exact_v<T> ? " (Sturm)" : " (float roots, tol 1e-9)"));
  return HyperbolicContext<T>::from_parts(h, e, std::move(cert));
}

template <class T>
HyperbolicContext<T> certify_block_product(const HyperbolicContext<T>& ctx, std::size_t k) {
  MultiPoly<T> g = block_product(ctx.h(), k);
  Vector<T> e;
  for (std::size_t b = 0; b < k; ++b) e.insert(e.end(), ctx.e().begin(), ctx.e().end());
  Certification cert;
  cert.strategy = "structural";
  cert.family = Family::BlockProduct;
  cert.evidence.push_back("product of " + std::to_string(k) + " copies of a " + ctx.certification().strategy +
                          "-certified " + family_name(ctx.family()) + " polynomial on disjoint blocks");
  return HyperbolicContext<T>::from_parts(std::move(g), std::move(e), std::move(cert));
}

template <class T>
Spectrum spectrum(const HyperbolicContext<T>& ctx, const Vector<T>& x) {
  UniPoly<T> p = ctx.char_poly(x);
  Spectrum s;
  if constexpr (is_exact_v<T>) {
    s.exact = real_roots_descending(p);
    for (const auto& a : s.exact) s.values.push_back(a.to_double());
  } else {
    if (p.degree() >= 1) s.values = float_real_roots(p);
    std::reverse(s.values.begin(), s.values.end());
  }
  return s;
}

template <class T>
T trace(const HyperbolicContext<T>& ctx, const Vector<T>& v) {
  require(v.size() == ctx.nvars(), ErrorCode::DimensionMismatch, "vector length differs from nvars");
  return ctx.h().directional_derivative(v).evaluate(ctx.e()) / ctx.h_at_e();
}

template <class T>
int rank(const HyperbolicContext<T>& ctx, const Vector<T>& v) {
  require(v.size() == ctx.nvars(), ErrorCode::DimensionMismatch, "vector length differs from nvars");
  UniPoly<T> p = ctx.h().restrict_to_line(ctx.e(), negate(v));
  if constexpr (is_exact_v<T>) {
    return std::max(p.degree(), 0);
  } else {
    double scale = 0;
    for (double c : p.coeffs()) scale = std::max(scale, std::fabs(c));
    int r = 0;
    for (int i = 0; i <= p.degree(); ++i) {
      if (std::fabs(p.coeffs()[i]) > 1e-9 * scale) r = i;
    }
    return r;
  }
}

AlgebraicReal lambda_max(const QContext& ctx, const Vector<Rational>& x) {
  auto roots = real_roots_descending(ctx.char_poly(x));
  require(!roots.empty(), ErrorCode::InvalidArgument, "degree-0 context has no eigenvalues");
  return roots.front();
}

AlgebraicReal lambda_min(const QContext& ctx, const Vector<Rational>& x) {
  auto roots = real_roots_descending(ctx.char_poly(x));
  require(!roots.empty(), ErrorCode::InvalidArgument, "degree-0 context has no eigenvalues");
  return roots.back();
}

AlgebraicReal seminorm(const QContext& ctx, const Vector<Rational>& x) {
  AlgebraicReal top = lambda_max(ctx, x);
  AlgebraicReal neg_bottom = lambda_max(ctx, negate(x));  // -lambda_min(x)
  return compare(top, neg_bottom) >= 0 ? top : neg_bottom;
}

double seminorm(const FContext& ctx, const Vector<double>& x) {
  Spectrum s = spectrum(ctx, x);
  require(!s.values.empty(), ErrorCode::InvalidArgument, "degree-0 context has no eigenvalues");
  return std::max(s.max(), -s.min());
}

template <class T>
bool cone_membership(const HyperbolicContext<T>& ctx, const Vector<T>& x, ConeMode mode) {
  UniPoly<T> p = ctx.char_poly(x);
  if (p.degree() < 1) return true;
  if constexpr (is_exact_v<T>) {
    const Rational bound = root_bound(p);
    int nonpositive = real_root_count(p, -bound, Rational(0));
    if (mode == ConeMode::Open) return nonpositive == 0;
    int zero_mult = 0;
    while (sgn(p.coeff(zero_mult)) == 0) ++zero_mult;
    return nonpositive - zero_mult == 0;
  } else {
    auto roots = float_real_roots(p);
    double scale = 1.0;
    for (double r : roots) scale = std::max(scale, std::fabs(r));
    const double lmin = roots.front();
    if (std::fabs(lmin) <= 1e-9 * scale) {
      throw Error(ErrorCode::BoundaryUndecided, "lambda_min is within tolerance of zero")
          .with_witness({std::to_string(lmin)});
    }
    return lmin > 0;
  }
}

template <class T>
bool in_lineality_space(const HyperbolicContext<T>& ctx, const Vector<T>& x) {
  UniPoly<T> p = ctx.char_poly(x);
  if constexpr (is_exact_v<T>) {
    return p == UniPoly<T>::monomial(ctx.degree(), Rational(1));
  } else {
    for (int i = 0; i < p.degree(); ++i) {
      if (std::fabs(p.coeffs()[i]) > 1e-9) return false;
    }
    return true;
  }
}

template <class T>
Vector<T> flatten_symmetric(const std::vector<std::vector<T>>& m) {
  const std::size_t d = m.size();
  Vector<T> v(d * (d + 1) / 2);
  for (std::size_t i = 0; i < d; ++i) {
    require(m[i].size() == d, ErrorCode::DimensionMismatch, "matrix is not square");
    for (std::size_t j = i; j < d; ++j) v[sym_index(d, i, j)] = m[i][j];
  }
  return v;
}

template <class T>
std::vector<std::vector<T>> unflatten_symmetric(const Vector<T>& v) {
  const std::size_t d = sym_side(v.size());
  std::vector<std::vector<T>> m(d, std::vector<T>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m[i][j] = v[sym_index(d, i, j)];
  }
  return m;
}

namespace {

int orientation(const QContext& ctx) {
  // +1 when the cone is the "positive" member of its family, -1 otherwise
  switch (ctx.family()) {
    case Family::ElementarySymmetric:
    case Family::Lorentz:
      return sgn(ctx.e()[0]) >= 0 ? 1 : -1;
    case Family::SymmetricDeterminant:
      return sgn(ctx.e()[0]) >= 0 ? 1 : -1;
    default:
      return 1;
  }
}

Vector<Rational> scaled(Vector<Rational> v, int s) {
  if (s < 0) {
    for (auto& x : v) x = -x;
  }
  return v;
}

Vector<Rational> random_psd(std::size_t d, Rng& rng, bool add_identity) {
  std::vector<std::vector<Rational>> b(d, std::vector<Rational>(d));
  for (auto& row : b) {
    for (auto& x : row) x = rng.uniform_int(-3, 3);
  }
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) m[i][j] += b[i][k] * b[j][k];
    }
    if (add_identity) m[i][i] += ratio(rng.uniform_int(1, 4), 4);
  }
  return flatten_symmetric(m);
}

}  // namespace

Vector<Rational> sample_cone_point(const QContext& ctx, Rng& rng) {
  const std::size_t n = ctx.nvars();
  const int orient = orientation(ctx);
  switch (ctx.family()) {
    case Family::Monomial: {
      Vector<Rational> v(n);
      const auto& exp = ctx.h().terms().begin()->first;
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = ratio(rng.uniform_int(1, 20), 4);
        if (exp[i] && sgn(ctx.e()[i]) < 0) v[i] = -v[i];
      }
      return v;
    }
    case Family::ElementarySymmetric: {
      Vector<Rational> v(n);
      for (auto& x : v) x = ratio(rng.uniform_int(1, 20), 4);
      return scaled(std::move(v), orient);
    }
    case Family::Lorentz: {
      Vector<Rational> v(n);
      Rational l1 = 0;
      for (std::size_t i = 1; i < n; ++i) {
        v[i] = ratio(rng.uniform_int(-10, 10), 2);
        l1 += abs(v[i]);
      }
      v[0] = l1 + ratio(rng.uniform_int(1, 8), 4);
      return scaled(std::move(v), orient);
    }
    case Family::SymmetricDeterminant:
      return scaled(random_psd(sym_side(n), rng, true), orient);
    default: {
      Vector<Rational> r(n);
      for (auto& x : r) x = Rational(rng.uniform_int(-5, 5));
      Rational s = 1;
      for (int it = 0; it < 64; ++it) {
        Vector<Rational> v = ctx.e();
        for (std::size_t i = 0; i < n; ++i) v[i] += s * r[i];
        if (cone_membership(ctx, v, ConeMode::Open)) return v;
        s /= 2;
      }
      return ctx.e();
    }
  }
}

Vector<Rational> sample_rank_one(const QContext& ctx, Rng& rng) {
  const std::size_t n = ctx.nvars();
  const int orient = orientation(ctx);
  switch (ctx.family()) {
    case Family::Monomial: {
      std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(n) - 1));
      Vector<Rational> v(n, Rational(0));
      v[i] = ratio(rng.uniform_int(1, 8), 4);
      if (sgn(ctx.e()[i]) < 0) v[i] = -v[i];
      return v;
    }
    case Family::ElementarySymmetric: {
      std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(n) - 1));
      Vector<Rational> v(n, Rational(0));
      v[i] = ratio(rng.uniform_int(1, 8), 4);
      return scaled(std::move(v), orient);
    }
    case Family::Lorentz: {
      static const long triples[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {1, 0, 1}, {0, 1, 1}};
      const auto& t = triples[rng.uniform_int(0, 4)];
      Vector<Rational> v(n, Rational(0));
      Rational c(rng.uniform_int(1, 4), 4);
      v[0] = c * t[2];
      if (n == 2) {
        v[1] = v[0] * (rng.uniform_int(0, 1) ? 1 : -1);
      } else {
        std::size_t a = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long>(n) - 1));
        std::size_t b = a;
        while (b == a) b = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long>(n) - 1));
        v[a] = c * t[0] * (rng.uniform_int(0, 1) ? 1 : -1);
        v[b] = c * t[1] * (rng.uniform_int(0, 1) ? 1 : -1);
      }
      return scaled(std::move(v), orient);
    }
    case Family::SymmetricDeterminant: {
      const std::size_t d = sym_side(n);
      std::vector<Rational> w(d);
      bool nonzero = false;
      while (!nonzero) {
        for (auto& x : w) {
          x = rng.uniform_int(-3, 3);
          nonzero = nonzero || sgn(x) != 0;
        }
      }
      std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) m[i][j] = w[i] * w[j];
      }
      return scaled(flatten_symmetric(m), orient);
    }
    default:
      fail(ErrorCode::InvalidArgument, "no rank-one sampler for family " + family_name(ctx.family()));
  }
}

template class HyperbolicContext<Rational>;
template class HyperbolicContext<double>;

#define HYPERLACE_INSTANTIATE(T)                                                                   \
  template HyperbolicContext<T> certify_hyperbolic(const MultiPoly<T>&, const Vector<T>&,         \
                                                   const CertifyStrategy&);                        \
  template HyperbolicContext<T> certify_block_product(const HyperbolicContext<T>&, std::size_t);   \
  template Family recognize_family(const MultiPoly<T>&, const Vector<T>&);                         \
  template Spectrum spectrum(const HyperbolicContext<T>&, const Vector<T>&);                       \
  template T trace(const HyperbolicContext<T>&, const Vector<T>&);                                 \
  template int rank(const HyperbolicContext<T>&, const Vector<T>&);                                \
  template bool cone_membership(const HyperbolicContext<T>&, const Vector<T>&, ConeMode);          \
  template bool in_lineality_space(const HyperbolicContext<T>&, const Vector<T>&);                 \
  template Vector<T> flatten_symmetric(const std::vector<std::vector<T>>&);                        \
  template std::vector<std::vector<T>> unflatten_symmetric(const Vector<T>&);

HYPERLACE_INSTANTIATE(Rational)
HYPERLACE_INSTANTIATE(double)

}  // namespace hyperlace
