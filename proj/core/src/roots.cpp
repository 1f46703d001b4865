#include "hyperlace/unipoly/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <unsupported/Eigen/Polynomials>

#include "hyperlace/common/error.hpp"
#include "hyperlace/common/random.hpp"

namespace hyperlace {

namespace {

using IntPoly = std::vector<mpz_class>;

IntPoly to_int_poly(const QPoly& f) {
  QPoly p = primitive_part(f);
  IntPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.get_num());
  return out;
}

int int_sign_at(const IntPoly& p, const Rational& x) {
  if (p.empty()) return 0;
  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  mpz_class acc = p.back();
  mpz_class dp = 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    dp *= den;
    acc *= num;
    acc += p[i] * dp;
  }
  return sgn(acc);
}

int int_sign_at_inf(const IntPoly& p, bool positive) {
  if (p.empty()) return 0;
  int s = sgn(p.back());
  if (!positive && (p.size() - 1) % 2 == 1) s = -s;
  return s;
}

int count_changes(const std::vector<int>& signs) {
  int changes = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

// Yun factors of f plus its square-free part.
struct Factored {
  std::vector<QPoly> factors;  // factors[i] has multiplicity i+1
  QPoly squarefree;
};

Factored factor_squarefree(const QPoly& f) {
  Factored out;
  out.factors = squarefree_decomposition(f);
  out.squarefree = QPoly::constant(Rational(1));
  for (const auto& g : out.factors) out.squarefree = out.squarefree * g;
  out.squarefree = primitive_part(out.squarefree);
  return out;
}

std::vector<RootBracket> isolate_squarefree(const QPoly& s, const SturmSequence& sturm) {
  std::vector<RootBracket> out;
  if (s.degree() < 1) return out;
  const IntPoly ip = to_int_poly(s);
  const Rational bound = root_bound(s);
  struct Item {
    Rational lo, hi;
    int count;
  };
  std::vector<Item> stack{{-bound, bound, sturm.count(-bound, bound)}};
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    if (it.count == 0) continue;
    if (it.count == 1) {
      if (int_sign_at(ip, it.hi) == 0) {
        out.push_back({it.hi, it.hi, 1});
      } else {
        out.push_back({it.lo, it.hi, 1});
      }
      continue;
    }
    Rational mid = (it.lo + it.hi) / 2;
    int left = sturm.count(it.lo, mid);
    // push right first so the left half is processed first
    stack.push_back({mid, it.hi, it.count - left});
    stack.push_back({it.lo, mid, left});
  }
  return out;
}

// Assigns multiplicities to brackets isolating the roots of the square-free part.
void assign_multiplicities(std::vector<RootBracket>& brackets, const std::vector<QPoly>& factors) {
  if (factors.size() <= 1) return;
  std::vector<std::optional<SturmSequence>> seqs(factors.size());
  for (auto& b : brackets) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() < 1) continue;
      bool hit;
      if (b.exact()) {
        hit = sgn(factors[i].evaluate(b.lo)) == 0;
      } else {
        if (!seqs[i]) seqs[i].emplace(factors[i]);
        hit = seqs[i]->count(b.lo, b.hi) > 0;
      }
      if (hit) {
        b.multiplicity = static_cast<int>(i) + 1;
        break;
      }
    }
  }
}

void refine_bracket(const IntPoly& ip, RootBracket& b, int sign_hi, const Rational& tol) {
  while (!b.exact() && b.hi - b.lo > tol) {
    Rational mid = (b.lo + b.hi) / 2;
    int s = int_sign_at(ip, mid);
    if (s == 0) {
      b.lo = b.hi = mid;
    } else if (s == sign_hi) {
      b.hi = mid;
    } else {
      b.lo = mid;
    }
  }
}

}  // namespace

SturmSequence::SturmSequence(const QPoly& squarefree) {
  require(!squarefree.is_zero(), ErrorCode::InvalidArgument, "Sturm sequence of the zero polynomial");
  QPoly a = primitive_part(squarefree);
  QPoly b = primitive_part(a.derivative());
  seq_.push_back(to_int_poly(a));
  while (!b.is_zero()) {
    seq_.push_back(to_int_poly(b));
    QPoly r = QPoly::divmod(a, b).second;
    a = std::move(b);
    b = primitive_part(-r);
  }
}

int SturmSequence::changes_at(const Rational& x) const {
  std::vector<int> signs;
  signs.reserve(seq_.size());
  for (const auto& p : seq_) signs.push_back(int_sign_at(p, x));
  return count_changes(signs);
}

int SturmSequence::changes_at_neg_inf() const {
  std::vector<int> signs;
  for (const auto& p : seq_) signs.push_back(int_sign_at_inf(p, false));
  return count_changes(signs);
}

int SturmSequence::changes_at_pos_inf() const {
  std::vector<int> signs;
  for (const auto& p : seq_) signs.push_back(int_sign_at_inf(p, true));
  return count_changes(signs);
}

int SturmSequence::count(const Rational& lo, const Rational& hi) const {
  require(lo <= hi, ErrorCode::InvalidArgument, "Sturm count needs lo <= hi");
  return changes_at(lo) - changes_at(hi);
}

int SturmSequence::count_all() const { return changes_at_neg_inf() - changes_at_pos_inf(); }

int sign_at(const QPoly& f, const Rational& x) { return sgn(f.evaluate(x)); }

Rational root_bound(const QPoly& f) {
  require(f.degree() >= 1, ErrorCode::InvalidArgument, "root bound of a constant");
  Rational m = 0;
  for (int i = 0; i < f.degree(); ++i) {
    Rational r = abs(f.coeffs()[i] / f.leading());
    if (r > m) m = r;
  }
  Rational b = 1;
  while (b <= m + 1) b *= 2;
  return b;
}

int real_root_count(const QPoly& f, const Rational& lo, const Rational& hi) {
  require(!f.is_zero(), ErrorCode::InvalidArgument, "root count of the zero polynomial");
  require(lo < hi, ErrorCode::InvalidArgument, "root count needs lo < hi");
  int total = 0;
  auto factors = squarefree_decomposition(f);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() < 1) continue;
    total += static_cast<int>(i + 1) * SturmSequence(factors[i]).count(lo, hi);
  }
  return total;
}

int real_root_count(const QPoly& f) {
  require(!f.is_zero(), ErrorCode::InvalidArgument, "root count of the zero polynomial");
  int total = 0;
  auto factors = squarefree_decomposition(f);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() < 1) continue;
    total += static_cast<int>(i + 1) * SturmSequence(factors[i]).count_all();
  }
  return total;
}

int real_root_count(const FPoly&) {
  fail(ErrorCode::BackendMismatch,
       "exact root counting needs the rational backend; use float_real_roots for float polynomials");
}

bool is_real_rooted(const QPoly& f) {
  require(!f.is_zero(), ErrorCode::InvalidArgument, "real-rootedness of the zero polynomial");
  return real_root_count(f) == f.degree();
}

std::vector<RootBracket> isolate_real_roots(const QPoly& f) {
  require(!f.is_zero(), ErrorCode::InvalidArgument, "root isolation of the zero polynomial");
  if (f.degree() < 1) return {};
  Factored fac = factor_squarefree(f);
  SturmSequence sturm(fac.squarefree);
  auto brackets = isolate_squarefree(fac.squarefree, sturm);
  assign_multiplicities(brackets, fac.factors);
  return brackets;
}

namespace {

std::vector<RootBracket> isolate_checked(const QPoly& f) {
  require(!f.is_zero() && f.degree() >= 1, ErrorCode::InvalidArgument,
          "largest root of a constant polynomial");
  if (f.degree() > 60) {
    // Sturm chains at this degree are expensive; try a float-hinted certificate first.
    QPoly s = squarefree_part(f);
    if (s.degree() == f.degree()) {
      try {
        auto approx = float_real_roots(to_double(s), 1e-6);
        if (auto br = isolate_with_hints(s, approx)) return *br;
      } catch (const Error&) {
      }
    }
  }
  Factored fac = factor_squarefree(f);
  SturmSequence sturm(fac.squarefree);
  auto brackets = isolate_squarefree(fac.squarefree, sturm);
  assign_multiplicities(brackets, fac.factors);
  int total = 0;
  for (const auto& b : brackets) total += b.multiplicity;
  if (total != f.degree()) {
    throw Error(ErrorCode::NotRealRooted, "polynomial is not real-rooted: " + f.to_string())
        .with_witness({f.to_string()});
  }
  return brackets;
}

}  // namespace

RootBracket largest_root_bracket(const QPoly& f, const Rational& tol) {
  auto brackets = isolate_checked(f);
  RootBracket b = brackets.back();
  if (!b.exact()) {
    QPoly s = squarefree_part(f);
    IntPoly ip = to_int_poly(s);
    int sign_hi = int_sign_at(ip, b.hi);
    refine_bracket(ip, b, sign_hi, tol);
  }
  return b;
}

Rational largest_root(const QPoly& f, const Rational& tol) { return largest_root_bracket(f, tol).midpoint(); }

std::optional<std::vector<RootBracket>> isolate_with_hints(const QPoly& f, std::vector<double> approx) {
  const int n = f.degree();
  if (n < 1 || static_cast<int>(approx.size()) != n) return std::nullopt;
  std::sort(approx.begin(), approx.end());
  for (double a : approx) {
    if (!std::isfinite(a)) return std::nullopt;
  }
  const IntPoly ip = to_int_poly(f);
  const Rational bound = root_bound(f);
  std::vector<Rational> probes;
  probes.reserve(n + 1);
  probes.push_back(-bound);
  for (int i = 1; i < n; ++i) probes.push_back(rational_from_double(0.5 * (approx[i - 1] + approx[i])));
  probes.push_back(bound);
  for (int i = 1; i <= n; ++i) {
    if (!(probes[i - 1] < probes[i])) return std::nullopt;
  }
  std::vector<int> signs(n + 1);
  for (int i = 0; i <= n; ++i) {
    signs[i] = int_sign_at(ip, probes[i]);
    if (signs[i] == 0) return std::nullopt;
    if (i > 0 && signs[i] == signs[i - 1]) return std::nullopt;
  }
  std::vector<RootBracket> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back({probes[i], probes[i + 1], 1});
  return out;
}

// ---------------------------------------------------------------------------

AlgebraicReal::AlgebraicReal(const Rational& q) : poly_({Rational(-q), Rational(1)}), lo_(q), hi_(q) {
  poly_ = primitive_part(poly_);
}

AlgebraicReal::AlgebraicReal(const QPoly& f, const RootBracket& bracket)
    : poly_(primitive_part(f)), lo_(bracket.lo), hi_(bracket.hi) {
  if (lo_ != hi_) {
    sign_hi_ = sign_at(poly_, hi_);
    if (sign_hi_ == 0) lo_ = hi_;
  }
}

double AlgebraicReal::to_double() const {
  if (is_rational()) return lo_.get_d();
  AlgebraicReal copy = *this;
  Rational scale = std::max(abs(lo_), abs(hi_));
  if (scale < 1) scale = 1;
  copy.refine_to(scale / Rational(mpz_class(1) << 60));
  return copy.midpoint().get_d();
}

void AlgebraicReal::refine() {
  if (is_rational()) return;
  Rational mid = (lo_ + hi_) / 2;
  int s = sign_at(poly_, mid);
  if (s == 0) {
    lo_ = hi_ = mid;
  } else if (s == sign_hi_) {
    hi_ = mid;
  } else {
    lo_ = mid;
  }
}

void AlgebraicReal::refine_to(const Rational& width) {
  if (is_rational()) return;
  IntPoly ip = to_int_poly(poly_);
  RootBracket b{lo_, hi_, 1};
  refine_bracket(ip, b, sign_hi_, width);
  lo_ = b.lo;
  hi_ = b.hi;
}

int compare(AlgebraicReal a, const Rational& q) {
  if (a.is_rational()) return cmp(a.lo_, q) < 0 ? -1 : (cmp(a.lo_, q) > 0 ? 1 : 0);
  if (q <= a.lo_) return 1;
  if (q >= a.hi_) return -1;
  int s = sign_at(a.poly_, q);
  if (s == 0) return 0;
  return s == a.sign_hi_ ? -1 : 1;
}

int compare(AlgebraicReal a, AlgebraicReal b) {
  if (a.is_rational()) return -compare(std::move(b), a.lo_);
  if (b.is_rational()) return compare(std::move(a), b.lo_);
  QPoly g = gcd(a.poly_, b.poly_);
  std::optional<SturmSequence> gs;
  if (g.degree() >= 1) gs.emplace(g);
  while (true) {
    if (a.is_rational()) return -compare(std::move(b), a.lo_);
    if (b.is_rational()) return compare(std::move(a), b.lo_);
    if (a.hi_ <= b.lo_) return -1;
    if (b.hi_ <= a.lo_) return 1;
    if (gs) {
      Rational L = std::max(a.lo_, b.lo_);
      Rational H = std::min(a.hi_, b.hi_);
      int c = gs->count(L, H) - (sign_at(g, H) == 0 ? 1 : 0);
      if (c >= 1) return 0;
    }
    a.refine();
    b.refine();
  }
}

int compare(AlgebraicReal a, const QuadSurd& s) {
  if (s.is_rational()) return compare(std::move(a), s.rational_part());
  if (a.is_rational()) return -compare(s, a.lo_);
  // p(s) in Q(sqrt r)
  const Rational& r = s.radicand();
  Rational A = 0, B = 0;
  const auto& c = a.poly_.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    Rational nA = A * s.rational_part() + B * s.radical_coeff() * r;
    Rational nB = A * s.radical_coeff() + B * s.rational_part();
    A = nA + c[i];
    B = std::move(nB);
  }
  if (sgn(A) == 0 && sgn(B) == 0 && compare(s, a.lo_) > 0 && compare(s, a.hi_) < 0) return 0;
  while (true) {
    if (a.is_rational()) return -compare(s, a.lo_);
    if (compare(s, a.hi_) >= 0) return -1;
    if (compare(s, a.lo_) <= 0) return 1;
    a.refine();
  }
}

AlgebraicReal largest_root_exact(const QPoly& f, const Rational& tol) {
  RootBracket b = largest_root_bracket(f, tol);
  if (b.exact()) return AlgebraicReal(b.lo);
  return AlgebraicReal(squarefree_part(f), b);
}

std::vector<AlgebraicReal> real_roots_descending(const QPoly& f) {
  require(!f.is_zero(), ErrorCode::InvalidArgument, "roots of the zero polynomial");
  std::vector<AlgebraicReal> out;
  if (f.degree() < 1) return out;
  auto brackets = isolate_checked(f);
  QPoly s = squarefree_part(f);
  for (auto it = brackets.rbegin(); it != brackets.rend(); ++it) {
    AlgebraicReal a(s, *it);
    for (int k = 0; k < it->multiplicity; ++k) out.push_back(a);
  }
  return out;
}

bool interleaves(const QPoly& f, const QPoly& g) {
  require(!f.is_zero() && !g.is_zero(), ErrorCode::InvalidArgument, "interleaving with the zero polynomial");
  require(f.degree() == g.degree() - 1, ErrorCode::InvalidArgument,
          "interleaving needs deg f = deg g - 1");
  require(sgn(f.leading()) > 0 && sgn(g.leading()) > 0, ErrorCode::InvalidArgument,
          "interleaving needs positive leading coefficients");
  auto fa = real_roots_descending(f);
  auto gb = real_roots_descending(g);
  std::reverse(fa.begin(), fa.end());
  std::reverse(gb.begin(), gb.end());
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (compare(gb[i], fa[i]) > 0) return false;
    if (compare(fa[i], gb[i + 1]) > 0) return false;
  }
  return true;
}

std::string MixtureVerdict::label() const {
  return counterexample ? "counterexample" : "no-counterexample(" + std::to_string(trials) + ")";
}

MixtureVerdict mixture_realrooted_probe(const std::vector<QPoly>& fs, std::size_t trials,
                                        std::uint64_t seed) {
  require(!fs.empty(), ErrorCode::InvalidArgument, "mixture probe needs at least one polynomial");
  const int deg = fs.front().degree();
  for (const auto& f : fs) {
    require(f.degree() == deg, ErrorCode::InvalidArgument, "mixture probe needs equal degrees");
    require(!f.is_zero() && sgn(f.leading()) > 0, ErrorCode::InvalidArgument,
            "mixture probe needs positive leading coefficients");
  }
  const std::size_t m = fs.size();
  MixtureVerdict v;
  auto test = [&](std::vector<Rational> w) {
    QPoly comb;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(w[i]) != 0) comb += fs[i] * w[i];
    }
    ++v.trials;
    if (comb.degree() >= 1 && !is_real_rooted(comb)) {
      v.counterexample = true;
      v.weights = std::move(w);
      v.combination = std::move(comb);
      return true;
    }
    return false;
  };
  if (trials == 0) return v;
  if (test(std::vector<Rational>(m, Rational(1, m)))) return v;
  for (std::size_t i = 0; i < m && v.trials < trials; ++i) {
    for (std::size_t j = i + 1; j < m && v.trials < trials; ++j) {
      std::vector<Rational> w(m, Rational(0));
      w[i] = w[j] = Rational(1, 2);
      if (test(std::move(w))) return v;
    }
  }
  Rng rng(seed);
  while (v.trials < trials) {
    std::vector<Rational> w(m);
    Rational total = 0;
    for (auto& x : w) {
      x = rng.uniform_int(0, 1000);
      total += x;
    }
    if (sgn(total) == 0) continue;
    for (auto& x : w) x /= total;
    if (test(std::move(w))) return v;
  }
  return v;
}

std::vector<double> float_real_roots(const FPoly& f, double rel_tol) {
  require(!f.is_zero(), ErrorCode::InvalidArgument, "roots of the zero polynomial");
  const auto& c = f.coeffs();
  double cmax = 0;
  for (double x : c) cmax = std::max(cmax, std::fabs(x));
  std::size_t zeros = 0;
  while (zeros + 1 < c.size() && std::fabs(c[zeros]) <= 1e-13 * cmax) ++zeros;
  std::vector<double> rest(c.begin() + static_cast<long>(zeros), c.end());
  const int n = static_cast<int>(rest.size()) - 1;
  std::vector<double> roots(zeros, 0.0);
  if (n == 1) {
    roots.push_back(-rest[0] / rest[1]);
  } else if (n >= 2) {
    Eigen::VectorXd coeffs(n + 1);
    for (int i = 0; i <= n; ++i) coeffs[i] = rest[i];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(coeffs);
    const auto& rs = solver.roots();
    double scale = 1.0;
    for (Eigen::Index i = 0; i < rs.size(); ++i) scale = std::max(scale, std::abs(rs[i]));
    FPoly p(rest);
    FPoly dp = p.derivative();
    for (Eigen::Index i = 0; i < rs.size(); ++i) {
      if (std::fabs(rs[i].imag()) > rel_tol * scale) {
        throw Error(ErrorCode::NotRealRooted, "float polynomial has a non-real root")
            .with_witness({std::to_string(rs[i].real()) + " + " + std::to_string(rs[i].imag()) + "i"});
      }
      double x = rs[i].real();
      for (int it = 0; it < 3; ++it) {
        double fx = p.evaluate(x), dfx = dp.evaluate(x);
        if (dfx == 0.0) break;
        double nx = x - fx / dfx;
        if (!std::isfinite(nx) || std::fabs(p.evaluate(nx)) >= std::fabs(fx)) break;
        x = nx;
      }
      roots.push_back(x);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double largest_root(const FPoly& f) {
  require(f.degree() >= 1, ErrorCode::InvalidArgument, "largest root of a constant polynomial");
  return float_real_roots(f).back();
}

}  // namespace hyperlace
