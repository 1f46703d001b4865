#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperlace/common/random.hpp"
#include "hyperlace/polycore/multipoly.hpp"
#include "hyperlace/unipoly/roots.hpp"

namespace hyperlace {

/// Known families with a structural hyperbolicity rule.
enum class Family {
  Generic,               // no structural rule; sampled evidence only
  Monomial,              // c·x^a, e with nonzero entries on the support
  ElementarySymmetric,   // c·e_d(x), e in the open positive orthant
  SymmetricDeterminant,  // c·det(X), e a positive definite matrix
  Lorentz,               // c·(x1^2 - x2^2 - ...), e inside the light cone
  BlockProduct,          // product of copies of a certified polynomial on disjoint blocks
  MixedOperator,         // prod_j (1 - y_j D_{v_j}) h with v_j in the closed cone
};

std::string family_name(Family f);

struct CertifyStrategy {
  enum class Kind { Auto, Structural, Sampled };
  Kind kind = Kind::Auto;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  long box = 10;  // sampled points come from the integer box [-box, box]^n

  static CertifyStrategy structural() { return {Kind::Structural}; }
  static CertifyStrategy sampled(std::size_t n, std::uint64_t seed) { return {Kind::Sampled, n, seed}; }
};

struct Certification {
  std::string strategy;  // "structural" | "sampled"
  Family family = Family::Generic;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> evidence;
};

/// A polynomial h with a direction e such that h(e) != 0, together with the
/// evidence that h is hyperbolic with respect to e.
template <class T>
class HyperbolicContext {
 public:
  /// Assembles a context from already-established parts. Prefer
  /// certify_hyperbolic; this exists for constructions whose hyperbolicity
  /// follows from another certified context.
  static HyperbolicContext from_parts(MultiPoly<T> h, Vector<T> e, Certification cert);

  const MultiPoly<T>& h() const { return h_; }
  const Vector<T>& e() const { return e_; }
  const T& h_at_e() const { return h_at_e_; }
  int degree() const { return degree_; }
  std::size_t nvars() const { return h_.nvars(); }
  const Certification& certification() const { return cert_; }
  Family family() const { return cert_.family; }

  /// t -> h(te - x) / h(e), monic of degree d; its roots are the eigenvalues of x.
  UniPoly<T> char_poly(const Vector<T>& x) const;

 private:
  MultiPoly<T> h_;
  Vector<T> e_;
  T h_at_e_{};
  int degree_ = 0;
  Certification cert_;
};

using QContext = HyperbolicContext<Rational>;
using FContext = HyperbolicContext<double>;

/// Certifies h hyperbolic with respect to e. Auto uses the structural rule
/// when h is (a nonzero multiple of) a built-in family, else sampling.
template <class T>
HyperbolicContext<T> certify_hyperbolic(const MultiPoly<T>& h, const Vector<T>& e,
                                        const CertifyStrategy& strategy = {});

/// Context for h(x^1)...h(x^k) with direction e (+) ... (+) e.
template <class T>
HyperbolicContext<T> certify_block_product(const HyperbolicContext<T>& ctx, std::size_t k);

/// Family recognized for (h, e), or Generic.
template <class T>
Family recognize_family(const MultiPoly<T>& h, const Vector<T>& e);

/// Eigenvalues lambda_1 >= ... >= lambda_d with multiplicity.
struct Spectrum {
  std::vector<double> values;        // descending
  std::vector<AlgebraicReal> exact;  // rational backend only, descending
  bool is_exact() const { return !exact.empty() || values.empty(); }
  double max() const { return values.front(); }
  double min() const { return values.back(); }
};

template <class T>
Spectrum spectrum(const HyperbolicContext<T>& ctx, const Vector<T>& x);

/// tr(v) = D_v h(e) / h(e).
template <class T>
T trace(const HyperbolicContext<T>& ctx, const Vector<T>& v);

/// rk(v) = deg_t h(e - t v). Float contexts treat coefficients below
/// 1e-9 of the largest one as zero.
template <class T>
int rank(const HyperbolicContext<T>& ctx, const Vector<T>& v);

/// max(lambda_max(x), -lambda_min(x)).
AlgebraicReal seminorm(const QContext& ctx, const Vector<Rational>& x);
double seminorm(const FContext& ctx, const Vector<double>& x);

/// lambda_max(x), exactly.
AlgebraicReal lambda_max(const QContext& ctx, const Vector<Rational>& x);
AlgebraicReal lambda_min(const QContext& ctx, const Vector<Rational>& x);

enum class ConeMode { Open, Closed };

/// lambda_min(x) > 0 (open) or >= 0 (closed). Float contexts throw
/// BoundaryUndecided when lambda_min is within 1e-9 (relative) of zero.
template <class T>
bool cone_membership(const HyperbolicContext<T>& ctx, const Vector<T>& x, ConeMode mode);

/// x lies in the lineality space: every eigenvalue of x is zero.
template <class T>
bool in_lineality_space(const HyperbolicContext<T>& ctx, const Vector<T>& x);

/// Random point of the open hyperbolicity cone, drawn per family.
Vector<Rational> sample_cone_point(const QContext& ctx, Rng& rng);
/// Random nonzero vector of rank one in the closed cone, drawn per family.
Vector<Rational> sample_rank_one(const QContext& ctx, Rng& rng);

/// Flattens a symmetric matrix (row-major, d x d) into determinant coordinates.
template <class T>
Vector<T> flatten_symmetric(const std::vector<std::vector<T>>& m);
template <class T>
std::vector<std::vector<T>> unflatten_symmetric(const Vector<T>& v);

}  // namespace hyperlace
