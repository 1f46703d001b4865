#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperlace/common/surd.hpp"
#include "hyperlace/unipoly/unipoly.hpp"

namespace hyperlace {

/// Rational interval holding exactly `multiplicity` roots (counted with
/// multiplicity) of one distinct real root. lo == hi means the root is the
/// rational lo itself; otherwise the root lies in the open interval (lo, hi).
struct RootBracket {
  Rational lo;
  Rational hi;
  int multiplicity = 1;

  bool exact() const { return lo == hi; }
  Rational midpoint() const { return (lo + hi) / 2; }
};

/// Sturm sequence of a square-free polynomial, stored with integer
/// coefficients so that sign evaluations stay in Z.
class SturmSequence {
 public:
  explicit SturmSequence(const QPoly& squarefree);

  /// Number of distinct roots in (lo, hi].
  int count(const Rational& lo, const Rational& hi) const;
  /// Number of distinct real roots.
  int count_all() const;
  int changes_at(const Rational& x) const;
  int changes_at_neg_inf() const;
  int changes_at_pos_inf() const;
  std::size_t length() const { return seq_.size(); }

 private:
  std::vector<std::vector<mpz_class>> seq_;
};

/// Sign of f(x), evaluated exactly.
int sign_at(const QPoly& f, const Rational& x);
/// Power of two strictly greater than the modulus of every complex root.
Rational root_bound(const QPoly& f);

/// Number of real roots of f in (lo, hi], counted with multiplicity.
int real_root_count(const QPoly& f, const Rational& lo, const Rational& hi);
/// Number of real roots of f, counted with multiplicity.
int real_root_count(const QPoly& f);
/// The float backend has no exact root count; this overload always throws.
int real_root_count(const FPoly& f);
/// Exact decision: every complex root of f is real (f nonzero).
bool is_real_rooted(const QPoly& f);

/// Isolating brackets for the distinct real roots, ascending.
std::vector<RootBracket> isolate_real_roots(const QPoly& f);

inline const Rational& default_root_tol() {
  static const Rational tol(1, 1000000000000);  // 1e-12
  return tol;
}

/// Bracket of width <= tol around the largest root. Throws when f is
/// constant or not real-rooted.
RootBracket largest_root_bracket(const QPoly& f, const Rational& tol = default_root_tol());
/// Midpoint of largest_root_bracket: within tol/2 of the largest root.
Rational largest_root(const QPoly& f, const Rational& tol = default_root_tol());

/// Isolates the roots of a square-free f of degree n from n approximate
/// roots: succeeds when f changes sign exactly n times across rational probe
/// points placed between the approximations, which proves f real-rooted and
/// brackets every root. Returns nothing when the certificate fails.
std::optional<std::vector<RootBracket>> isolate_with_hints(const QPoly& f,
                                                           std::vector<double> approx_roots);

/// A real algebraic number: the unique root of a square-free polynomial
/// inside an isolating bracket.
class AlgebraicReal {
 public:
  explicit AlgebraicReal(const Rational& q);
  /// `bracket` must isolate a single root of f (as produced by isolation).
  AlgebraicReal(const QPoly& f, const RootBracket& bracket);

  bool is_rational() const { return lo_ == hi_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const QPoly& poly() const { return poly_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  double to_double() const;

  /// Halves the bracket (or detects an exact rational root).
  void refine();
  void refine_to(const Rational& width);

  friend int compare(AlgebraicReal a, AlgebraicReal b);
  friend int compare(AlgebraicReal a, const Rational& q);
  friend int compare(AlgebraicReal a, const QuadSurd& s);

 private:
  int sign_right_of_root() const { return sign_hi_; }

  QPoly poly_;  // primitive, square-free
  Rational lo_;
  Rational hi_;
  int sign_hi_ = 0;  // sign of poly at hi (nonzero unless exact)
};

/// Largest real root as an algebraic number (same failures as largest_root_bracket).
AlgebraicReal largest_root_exact(const QPoly& f, const Rational& tol = default_root_tol());

/// All real roots with multiplicity, descending, as algebraic numbers.
std::vector<AlgebraicReal> real_roots_descending(const QPoly& f);

/// f interleaves g: with deg f = deg g - 1 and roots a_1<=...<=a_{n-1} of f,
/// b_1<=...<=b_n of g, checks b_1 <= a_1 <= b_2 <= ... <= a_{n-1} <= b_n.
bool interleaves(const QPoly& f, const QPoly& g);

struct MixtureVerdict {
  bool counterexample = false;
  std::size_t trials = 0;          // combinations tested
  std::vector<Rational> weights;   // set when a counterexample was found
  QPoly combination;

  std::string label() const;
};

/// Tests convex combinations of fs for real-rootedness: the uniform mixture,
/// every pairwise midpoint, then seeded random weights until `trials`
/// combinations have been tested.
MixtureVerdict mixture_realrooted_probe(const std::vector<QPoly>& fs, std::size_t trials,
                                        std::uint64_t seed);

/// Real roots of a float polynomial, ascending. Roots whose imaginary part is
/// below rel_tol times max(1, |largest root|) count as real; any other root
/// raises NotRealRooted. Low-order coefficients below 1e-13 of the largest
/// coefficient are treated as zero roots.
std::vector<double> float_real_roots(const FPoly& f, double rel_tol = 1e-9);
double largest_root(const FPoly& f);

}  // namespace hyperlace
