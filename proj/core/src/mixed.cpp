#include "hyperlace/mixedchar/mixed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "hyperlace/common/error.hpp"
#include "hyperlace/common/parallel.hpp"

namespace hyperlace {

namespace {

void check_vectors(const QContext& ctx, const std::vector<Vector<Rational>>& vs) {
  require(!vs.empty(), ErrorCode::InvalidArgument, "need at least one vector");
  for (std::size_t j = 0; j < vs.size(); ++j) {
    require(vs[j].size() == ctx.nvars(), ErrorCode::DimensionMismatch, "vector length differs from nvars");
    if (!cone_membership(ctx, vs[j], ConeMode::Closed))
      throw Error(ErrorCode::OutsideCone, "v_" + std::to_string(j + 1) + " is outside the closed cone")
          .with_witness({std::to_string(j)});
  }
}

Vector<Rational> embed_vector(const Vector<Rational>& v, std::size_t total) {
  Vector<Rational> out(total, Rational(0));
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

Vector<Rational> zeros(std::size_t n) { return Vector<Rational>(n, Rational(0)); }

std::string vector_string(const Vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s;
}

}  // namespace

MixedPoly mixed_operator_poly(const QContext& ctx, const std::vector<Vector<Rational>>& vs) {
  check_vectors(ctx, vs);
  const std::size_t n = ctx.nvars();
  const std::size_t m = vs.size();
  const std::size_t total = n + m;
  require(total <= poly_limits().max_nvars, ErrorCode::CapExceeded, "n + m exceeds the variable cap");

  MixedPoly out;
  out.n = n;
  out.m = m;
  out.vs = vs;
  QMultiPoly p = ctx.h().embed(total, 0);
  for (std::size_t j = 0; j < m; ++j) {
    QMultiPoly dv = p.directional_derivative(embed_vector(vs[j], total));
    p -= QMultiPoly::variable(total, n + j) * dv;
    out.rank_one.push_back(rank(ctx, vs[j]) <= 1);
  }
  out.poly = std::move(p);
  return out;
}

QMultiPoly mixed_substitution_poly(const QContext& ctx, const std::vector<Vector<Rational>>& vs) {
  require(!vs.empty(), ErrorCode::InvalidArgument, "need at least one vector");
  const std::size_t n = ctx.nvars();
  const std::size_t m = vs.size();
  const std::size_t total = n + m;
  require(total <= poly_limits().max_nvars, ErrorCode::CapExceeded, "n + m exceeds the variable cap");
  for (std::size_t j = 0; j < m; ++j) {
    require(vs[j].size() == n, ErrorCode::DimensionMismatch, "vector length differs from nvars");
    if (rank(ctx, vs[j]) > 1)
      throw Error(ErrorCode::PreconditionViolated, "substitution needs rank <= 1 vectors")
          .with_witness({std::to_string(j)});
  }
  std::vector<QMultiPoly> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    QMultiPoly img = QMultiPoly::variable(total, i);
    for (std::size_t j = 0; j < m; ++j)
      if (sgn(vs[j][i]) != 0) img -= QMultiPoly::variable(total, n + j) * vs[j][i];
    images.push_back(std::move(img));
  }
  return ctx.h().compose(images);
}

QContext mixed_context(const QContext& ctx, const std::vector<Vector<Rational>>& vs) {
  MixedPoly mp = mixed_operator_poly(ctx, vs);
  Certification cert;
  cert.strategy = "structural";
  cert.family = Family::MixedOperator;
  cert.evidence.push_back("base: " + family_name(ctx.family()) + " (" + ctx.certification().strategy + ")");
  cert.evidence.push_back("operator vectors lie in the closed cone of the base");
  return QContext::from_parts(std::move(mp.poly), embed_vector(ctx.e(), mp.n + mp.m), std::move(cert));
}

QPoly mixed_char_poly(const QContext& ctx, const std::vector<Vector<Rational>>& vs) {
  check_vectors(ctx, vs);
  // Setting every y_j = 1 commutes with the operators, so apply (1 - D_{v_j})
  // directly in the x variables.
  QMultiPoly q = ctx.h();
  for (const auto& v : vs) q -= q.directional_derivative(v);
  QPoly chi = q.restrict_to_line(zeros(ctx.nvars()), ctx.e());
  if (chi.degree() > 0 && !is_real_rooted(chi))
    throw Error(ErrorCode::NotRealRooted, "mixed characteristic polynomial is not real-rooted")
        .with_witness({chi.to_string("t")});
  return chi;
}

QuadSurd delta_bound(const Rational& alpha, std::size_t m) {
  require(m >= 1, ErrorCode::InvalidArgument, "m must be positive");
  const Rational inv_m = ratio(1, static_cast<long>(m));
  const Rational p = 1 - inv_m;
  const Rational q = alpha - inv_m * p;
  require(sgn(q) >= 0, ErrorCode::InvalidArgument, "alpha below (1/m)(1 - 1/m)");
  // (p + sqrt(q))^2 = p^2 + q + 2p sqrt(q)
  return QuadSurd(Rational(p * p + q), Rational(2 * p), q);
}

double delta_objective(double eps, std::size_t m, double t) {
  const double p = 1.0 - 1.0 / static_cast<double>(m);
  return (eps * t + p * t / (t - 1.0)) / (p + t / static_cast<double>(m));
}

DeltaGridCheck delta_infimum_check(const Rational& eps, std::size_t m) {
  DeltaGridCheck out;
  const double e = eps.get_d();
  out.delta = delta_bound(eps, m).to_double();
  // t = 1 + 10^s, s in [-6, 6]
  const int points = 4001;
  double best = std::numeric_limits<double>::infinity();
  double best_s = 0;
  for (int i = 0; i < points; ++i) {
    const double s = -6.0 + 12.0 * i / (points - 1);
    const double val = delta_objective(e, m, 1.0 + std::pow(10.0, s));
    if (val < out.delta - 1e-12 * std::max(1.0, out.delta)) out.never_below = false;
    if (val < best) {
      best = val;
      best_s = s;
    }
  }
  double lo = best_s - 12.0 / (points - 1), hi = best_s + 12.0 / (points - 1);
  const double g = (std::sqrt(5.0) - 1) / 2;
  auto f = [&](double s) { return delta_objective(e, m, 1.0 + std::pow(10.0, s)); };
  for (int it = 0; it < 200; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (f(a) < f(b)) hi = b;
    else lo = a;
  }
  const double s = (lo + hi) / 2;
  if (f(s) < best) {
    best = f(s);
    best_s = s;
  }
  if (best < out.delta - 1e-12 * std::max(1.0, out.delta)) out.never_below = false;
  out.grid_min = best;
  out.argmin = 1.0 + std::pow(10.0, best_s);
  out.attains = std::abs(best - out.delta) <= 1e-7 * std::max(1.0, out.delta);
  return out;
}

BoundReport mainbound_check(const QContext& ctx, const std::vector<Vector<Rational>>& vs, const Rational& eps) {
  require(!vs.empty(), ErrorCode::InvalidArgument, "need at least one vector");
  Vector<Rational> sum = zeros(ctx.nvars());
  for (std::size_t j = 0; j < vs.size(); ++j) {
    require(vs[j].size() == ctx.nvars(), ErrorCode::DimensionMismatch, "vector length differs from nvars");
    sum = sum + vs[j];
    Rational tr = trace(ctx, vs[j]);
    if (tr > eps)
      throw Error(ErrorCode::PreconditionViolated, "tr(v_" + std::to_string(j + 1) + ") exceeds eps")
          .with_witness({std::to_string(j), to_string(tr)});
  }
  if (sum != ctx.e())
    throw Error(ErrorCode::PreconditionViolated, "vectors do not sum to e").with_witness({vector_string(sum)});

  BoundReport r;
  r.m = vs.size();
  r.eps = eps;
  QPoly chi = mixed_char_poly(ctx, vs);
  r.bound = delta_bound(eps, r.m);
  r.bound_value = r.bound.to_double();
  r.largest_root = largest_root_bracket(chi);
  AlgebraicReal top = largest_root_exact(chi);
  r.largest_root_value = top.to_double();
  r.margin = r.bound_value - r.largest_root_value;
  r.pass = compare(top, r.bound) <= 0;
  return r;
}

Rational xi(const QMultiPoly& g, const Vector<Rational>& v, const Vector<Rational>& point) {
  require(v.size() == g.nvars() && point.size() == g.nvars(), ErrorCode::DimensionMismatch,
          "vector length differs from nvars");
  Rational den = g.directional_derivative(v).evaluate(point);
  if (sgn(den) == 0) throw Error(ErrorCode::ConeBoundary, "D_v g vanishes at the point");
  return g.evaluate(point) / den;
}

QPoly tkd_apply(int k, int d, const QPoly& f) {
  require(k >= 1 && d >= 1, ErrorCode::InvalidArgument, "k and d must be positive");
  require(f.degree() <= d + 1, ErrorCode::InvalidArgument, "input degree exceeds d + 1");
  std::vector<Rational> out(static_cast<std::size_t>(d) + 1, Rational(0));
  const Rational k1(k + 1);
  for (int j = 0; j <= d; ++j) {
    Rational inner = Rational(j + 1) / k1 * f.coeff(j + 1) + Rational(d - 1 - j) * f.coeff(j);
    out[j] = -inner * factorial(d - j) * binomial(k + 1, d - j);
  }
  return QPoly(std::move(out));
}

QPoly gv_poly(const QContext& ctx, const Vector<Rational>& v, int k) {
  require(k >= 1, ErrorCode::InvalidArgument, "k must be positive");
  require(v.size() == ctx.nvars(), ErrorCode::DimensionMismatch, "vector length differs from nvars");
  if (!cone_membership(ctx, v, ConeMode::Open)) fail(ErrorCode::OutsideCone, "v is outside the open cone");
  if (!cone_membership(ctx, ctx.e() - Rational(k) * v, ConeMode::Open))
    fail(ErrorCode::OutsideCone, "e - kv is outside the open cone");
  const QMultiPoly& h = ctx.h();
  QMultiPoly q = h - h.directional_derivative(ctx.e()) + h.directional_derivative(v) * Rational(k);
  for (int i = 0; i < k; ++i) q -= q.directional_derivative(v);
  return q.restrict_to_line(zeros(ctx.nvars()), ctx.e());
}

Rational mixed_discriminant_gap(const QContext& ctx, const Vector<Rational>& u, const Vector<Rational>& v,
                                const Vector<Rational>& w) {
  const QMultiPoly du = ctx.h().directional_derivative(u);
  const QMultiPoly dv = ctx.h().directional_derivative(v);
  const Rational uv = du.directional_derivative(v).evaluate(w);
  const Rational uu = du.directional_derivative(u).evaluate(w);
  const Rational vv = dv.directional_derivative(v).evaluate(w);
  return uv * uv - uu * vv;
}

ShiftCheck shifted_membership_check(const QContext& ctx, const QContext& mixed,
                                    const std::vector<Vector<Rational>>& vs, const Vector<Rational>& x,
                                    std::size_t i, std::size_t j, const Rational& ti, const Rational& tj) {
  const std::size_t n = ctx.nvars();
  const std::size_t m = vs.size();
  require(mixed.nvars() == n + m, ErrorCode::DimensionMismatch, "mixed context has the wrong variable count");
  require(i < m && j < m && i != j, ErrorCode::InvalidArgument, "need distinct indices below m");
  require(ti > 1 && tj > 1, ErrorCode::InvalidArgument, "t_i and t_j must exceed 1");
  if (!cone_membership(ctx, x, ConeMode::Closed)) fail(ErrorCode::OutsideCone, "x is outside the closed cone");

  ShiftCheck out;
  Vector<Rational> pi = embed_vector(x, n + m), pj = pi;
  pi[n + i] = ti;
  pj[n + j] = tj;
  out.premise = cone_membership(mixed, pi, ConeMode::Closed) && cone_membership(mixed, pj, ConeMode::Closed);
  Vector<Rational> q = embed_vector(x + Rational(tj / (tj - 1)) * vs[j], n + m);
  q[n + j] += 1;
  q[n + i] += ti;
  out.conclusion = cone_membership(mixed, q, ConeMode::Closed);
  return out;
}

namespace {

bool feasible(const QContext& ctx, const std::vector<Vector<Rational>>& vs, const Rational& eps) {
  for (const auto& v : vs) {
    if (trace(ctx, v) > eps) return false;
    if (!cone_membership(ctx, v, ConeMode::Closed)) return false;
  }
  return true;
}

AlgebraicReal score(const QContext& ctx, const std::vector<Vector<Rational>>& vs) {
  return largest_root_exact(mixed_char_poly(ctx, vs));
}

}  // namespace

ExploreReport central_explore(const QContext& ctx, const Rational& eps, std::size_t m, std::size_t budget,
                              std::uint64_t seed) {
  require(m >= 1, ErrorCode::InvalidArgument, "m must be positive");
  require(sgn(eps) > 0, ErrorCode::InvalidArgument, "eps must be positive");
  const long d = ctx.degree();
  if (Rational(static_cast<long>(m)) * eps < Rational(d))
    fail(ErrorCode::Infeasible, "m * eps < d: no configuration has traces <= eps");
  const std::size_t n = ctx.nvars();

  ExploreReport r;
  r.eps = eps;
  r.m = m;
  r.seed = seed;
  r.budget = budget;
  r.delta_value = delta_bound(eps, m).to_double();

  // k copies of (eps/d)e, then the remainder.
  Rational kq = Rational(d) / eps;
  mpz_class kz = kq.get_num() / kq.get_den();
  r.candidate_k = static_cast<int>(kz.get_si());
  const Rational step = eps / Rational(d);
  r.candidate.assign(m, zeros(n));
  for (std::size_t j = 0; j < m && j < static_cast<std::size_t>(r.candidate_k); ++j) r.candidate[j] = step * ctx.e();
  const Rational rest = 1 - Rational(r.candidate_k) * step;
  if (sgn(rest) > 0) {
    require(static_cast<std::size_t>(r.candidate_k) < m, ErrorCode::Internal, "candidate remainder has no slot");
    r.candidate[r.candidate_k] = rest * ctx.e();
  }
  AlgebraicReal cand = score(ctx, r.candidate);
  r.candidate_value = cand.to_double();

  std::vector<Vector<Rational>> current(m, ratio(1, static_cast<long>(m)) * ctx.e());
  AlgebraicReal cur = score(ctx, current);
  r.evaluations = 2;
  if (compare(cand, cur) > 0) {
    current = r.candidate;
    cur = cand;
  }

  Rng rng(seed);
  const std::size_t batch = std::max<std::size_t>(1, std::min<std::size_t>(8, worker_count() * 2));
  long scale_den = 4;
  std::size_t stale = 0;
  while (r.evaluations < budget) {
    const std::size_t count = std::min(batch, budget - r.evaluations);
    std::vector<std::vector<Vector<Rational>>> proposals(count, current);
    for (auto& prop : proposals) {
      std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(m) - 1));
      std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(m) - 1));
      if (m > 1)
        while (j == i) j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(m) - 1));
      Vector<Rational> moved;
      if (rng.uniform01() < 0.5) {
        moved = ratio(rng.uniform_int(1, scale_den), scale_den) * prop[i];
      } else {
        Vector<Rational> dir = sample_cone_point(ctx, rng);
        Rational t = trace(ctx, dir);
        moved = Rational(trace(ctx, prop[i]) * ratio(rng.uniform_int(1, scale_den), scale_den) / t) * dir;
      }
      prop[i] = prop[i] - moved;
      prop[j] = prop[j] + moved;
    }
    auto results = parallel_map(count, [&](std::size_t t) -> std::optional<AlgebraicReal> {
      if (!feasible(ctx, proposals[t], eps)) return std::nullopt;
      return score(ctx, proposals[t]);
    });
    r.evaluations += count;
    std::optional<std::size_t> best;
    for (std::size_t t = 0; t < count; ++t) {
      if (!results[t]) continue;
      if (!best || compare(*results[t], *results[*best]) > 0) best = t;
    }
    if (best && compare(*results[*best], cur) > 0) {
      current = proposals[*best];
      cur = *results[*best];
      stale = 0;
    } else if (++stale % 8 == 0 && scale_den < (1L << 20)) {
      scale_den *= 2;
    }
  }

  r.best = current;
  r.best_value = cur.to_double();
  r.exceeds_candidate = compare(cur, cand) > 0;
  r.exceeds_delta = compare(cur, delta_bound(eps, m)) > 0;
  return r;
}

}  // namespace hyperlace
