#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperlace/common/surd.hpp"
#include "hyperlace/hyperb/context.hpp"

namespace hyperlace {

/// prod_j (1 - y_j D_{v_j}) h in the variables x_1..x_n, y_1..y_m.
struct MixedPoly {
  QMultiPoly poly;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Vector<Rational>> vs;
  std::vector<bool> rank_one;
};

/// Operator product; every v must lie in the closed cone of ctx.
MixedPoly mixed_operator_poly(const QContext& ctx, const std::vector<Vector<Rational>>& vs);
/// h(x - y_1 v_1 - ... - y_m v_m); agrees with the operator product when all
/// ranks are at most one. Throws PreconditionViolated otherwise.
QMultiPoly mixed_substitution_poly(const QContext& ctx, const std::vector<Vector<Rational>>& vs);
/// Context for the operator product with direction (e, 0); its closed cone is
/// the set queried by cone_membership on (x, y) points.
QContext mixed_context(const QContext& ctx, const std::vector<Vector<Rational>>& vs);

/// chi(t) = prod_j (1 - D_{v_j}) h evaluated at te. Throws NotRealRooted if
/// the result is not real-rooted (which signals a bad input).
QPoly mixed_char_poly(const QContext& ctx, const std::vector<Vector<Rational>>& vs);

/// delta(alpha, m) = (1 - 1/m + sqrt(alpha - (1/m)(1 - 1/m)))^2 kept exact.
QuadSurd delta_bound(const Rational& alpha, std::size_t m);

/// (eps t + (1 - 1/m) t/(t - 1)) / (1 - 1/m + t/m), the bound before
/// minimizing over t > 1.
double delta_objective(double eps, std::size_t m, double t);

struct DeltaGridCheck {
  double grid_min = 0;
  double argmin = 0;
  double delta = 0;
  bool never_below = true;  // objective >= delta - 1e-12 everywhere on the grid
  bool attains = true;      // grid minimum within 1e-7 of delta
  bool ok() const { return never_below && attains; }
};

/// Compares delta(eps, m) with the objective minimized on a log grid over
/// t in (1, 1e6] refined by golden-section search. The minimum equals delta
/// for eps >= 1/m; below that it is approached only as t -> infinity.
DeltaGridCheck delta_infimum_check(const Rational& eps, std::size_t m);

struct BoundReport {
  std::size_t m = 0;
  Rational eps;
  RootBracket largest_root;
  QuadSurd bound;
  double largest_root_value = 0;
  double bound_value = 0;
  double margin = 0;  // bound - largest root
  bool pass = false;
};

/// Checks that the largest root of chi is at most delta(eps, m). Requires
/// sum v_i = e exactly and tr(v_i) <= eps; violations throw PreconditionViolated.
BoundReport mainbound_check(const QContext& ctx, const std::vector<Vector<Rational>>& vs, const Rational& eps);

/// xi[g](point) = g(point) / D_v g(point); throws ConeBoundary when the
/// denominator vanishes.
Rational xi(const QMultiPoly& g, const Vector<Rational>& v, const Vector<Rational>& point);

/// T_{k,d}(sum a_j t^j) = -sum_{j=0}^{d} ((j+1)/(k+1) a_{j+1} + (d-1-j) a_j) (d-j)! C(k+1, d-j) t^j.
QPoly tkd_apply(int k, int d, const QPoly& f);

/// g_v(t) = (1 - D_v)^k (1 - D_e + k D_v) h(te); needs v and e - kv in the open cone.
QPoly gv_poly(const QContext& ctx, const Vector<Rational>& v, int k);

struct ExploreReport {
  Rational eps;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t evaluations = 0;
  std::vector<Vector<Rational>> best;
  double best_value = 0;
  int candidate_k = 0;
  std::vector<Vector<Rational>> candidate;
  double candidate_value = 0;
  double delta_value = 0;
  bool exceeds_candidate = false;  // would contradict the conjectured optimum
  bool exceeds_delta = false;      // would contradict the proven bound
  std::string label = "heuristic";
};

/// Hill-climbing search for configurations v_1..v_m in the closed cone with
/// sum e and traces <= eps that maximize the largest root of chi. Compares the
/// best found value with the configuration k = floor(d/eps) copies of
/// (eps/d)e plus the remainder. No optimality claim.
ExploreReport central_explore(const QContext& ctx, const Rational& eps, std::size_t m, std::size_t budget,
                              std::uint64_t seed);

/// (D_u D_v h(w))^2 - D_u^2 h(w) D_v^2 h(w); nonnegative for u, v, w in the cone.
Rational mixed_discriminant_gap(const QContext& ctx, const Vector<Rational>& u, const Vector<Rational>& v,
                                const Vector<Rational>& w);

struct ShiftCheck {
  bool premise = false;     // x + t_i e_i and x + t_j e_j both in the closed cone
  bool conclusion = false;  // x + (t_j/(t_j - 1)) v_j + e_j + t_i e_i in the closed cone
};

/// Shifted-membership implication for the closed cone of the operator
/// product: `mixed` must come from mixed_context(ctx, vs). Requires
/// t_i, t_j > 1, i != j and x in the closed cone of ctx.
ShiftCheck shifted_membership_check(const QContext& ctx, const QContext& mixed,
                                    const std::vector<Vector<Rational>>& vs, const Vector<Rational>& x,
                                    std::size_t i, std::size_t j, const Rational& ti, const Rational& tj);

}  // namespace hyperlace
