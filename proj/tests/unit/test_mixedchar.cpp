#include <gtest/gtest.h>

#include <cmath>

#include "hyperlace/common/error.hpp"
#include "hyperlace/mixedchar/mixed.hpp"
#include "test_contexts.hpp"

using namespace hyperlace;
using namespace hyperlace::testing;

namespace {

QContext product_ctx(std::size_t n) { return certify_hyperbolic(coordinate_product(n), ones<Rational>(n)); }

// Random rational multiple (1/8 .. 1) of a rank-one cone vector.
Vector<Rational> scaled_rank_one(const QContext& ctx, Rng& rng) {
  return ratio(rng.uniform_int(1, 8), 8) * sample_rank_one(ctx, rng);
}

std::vector<Vector<Rational>> cone_vectors(const QContext& ctx, Rng& rng, std::size_t m) {
  std::vector<Vector<Rational>> vs;
  for (std::size_t j = 0; j < m; ++j) vs.push_back(sample_cone_point(ctx, rng));
  return vs;
}

QPoly monic_from_rational_roots(const std::vector<Rational>& roots) { return QPoly::from_roots(roots); }

}  // namespace

TEST(MixedOperator, SingleOperatorOnProduct) {
  MixedPoly mp = mixed_operator_poly(product_ctx(2), {V({1, 0})});
  EXPECT_EQ(mp.n, 2u);
  EXPECT_EQ(mp.m, 1u);
  EXPECT_EQ(mp.poly, M(3, {{"1", {1, 1, 0}}, {"-1", {0, 1, 1}}}));
  EXPECT_TRUE(mp.rank_one[0]);
}

TEST(MixedOperator, TwoOperatorsExpand) {
  MixedPoly mp = mixed_operator_poly(product_ctx(2), {V({1, 0}), V({0, 1})});
  QMultiPoly expected =
      M(4, {{"1", {1, 1, 0, 0}}, {"-1", {0, 1, 1, 0}}, {"-1", {1, 0, 0, 1}}, {"1", {0, 0, 1, 1}}});
  EXPECT_EQ(mp.poly, expected);
}

TEST(MixedOperator, RejectsVectorOutsideCone) {
  try {
    mixed_operator_poly(product_ctx(2), {V({1, 1}), V({1, -1})});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::OutsideCone);
    EXPECT_EQ(err.witness().front(), "1");
  }
}

TEST(MixedOperator, VariableCapEnforced) {
  ScopedPolyLimits limits({4, 16});
  EXPECT_THROW(mixed_operator_poly(product_ctx(2), {V({1, 0}), V({0, 1}), V({1, 1})}), Error);
}

TEST(MixedOperator, RankOneMatchesSubstitution) {
  auto contexts = builtin_contexts();
  Rng rng(11);
  for (int c = 0; c < 50; ++c) {
    const QContext& ctx = contexts[c % contexts.size()];
    const std::size_t m = static_cast<std::size_t>(rng.uniform_int(1, 3));
    std::vector<Vector<Rational>> vs;
    for (std::size_t j = 0; j < m; ++j) vs.push_back(scaled_rank_one(ctx, rng));
    MixedPoly mp = mixed_operator_poly(ctx, vs);
    for (bool r : mp.rank_one) EXPECT_TRUE(r);
    EXPECT_EQ(mp.poly, mixed_substitution_poly(ctx, vs)) << "case " << c;
  }
}

TEST(MixedOperator, SubstitutionRejectsHigherRank) {
  EXPECT_THROW(mixed_substitution_poly(product_ctx(2), {V({1, 1})}), Error);
}

TEST(MixedOperator, AffineInEachVector) {
  auto contexts = builtin_contexts();
  Rng rng(5);
  for (const auto& ctx : contexts) {
    auto vs = cone_vectors(ctx, rng, 2);
    Vector<Rational> w = sample_cone_point(ctx, rng);
    Rational p = ratio(rng.uniform_int(1, 9), 10);
    auto mix = vs;
    mix[1] = Rational(1 - p) * vs[1] + p * w;
    auto with_w = vs;
    with_w[1] = w;
    QMultiPoly lhs = mixed_operator_poly(ctx, mix).poly;
    QMultiPoly rhs = mixed_operator_poly(ctx, vs).poly * Rational(1 - p) + mixed_operator_poly(ctx, with_w).poly * p;
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(MixedContext, DirectionAndFamily) {
  QContext ctx = product_ctx(2);
  QContext mixed = mixed_context(ctx, {V({1, 0}), V({0, 1})});
  EXPECT_EQ(mixed.family(), Family::MixedOperator);
  EXPECT_EQ(mixed.e(), V({1, 1, 0, 0}));
  EXPECT_EQ(mixed.degree(), 2);
  // rho e + 1 lies in the open cone exactly when rho exceeds the largest root of chi (= 1 here)
  EXPECT_TRUE(cone_membership(mixed, VS({"3/2", "3/2", "1", "1"}), ConeMode::Open));
  EXPECT_FALSE(cone_membership(mixed, V({1, 1, 1, 1}), ConeMode::Open));
  EXPECT_TRUE(cone_membership(mixed, V({1, 1, 1, 1}), ConeMode::Closed));
  EXPECT_FALSE(cone_membership(mixed, VS({"1/2", "1/2", "1", "1"}), ConeMode::Closed));
}

TEST(MixedCharPoly, SingleVectorEqualToDirection) {
  auto contexts = builtin_contexts();
  for (const auto& ctx : contexts) {
    QPoly chi = mixed_char_poly(ctx, {ctx.e()});
    const int d = ctx.degree();
    std::vector<Rational> c(d + 1, Rational(0));
    c[d] = ctx.h_at_e();
    c[d - 1] = -Rational(d) * ctx.h_at_e();
    EXPECT_EQ(chi, QPoly(c));
    EXPECT_EQ(largest_root(chi), Rational(d));
  }
}

TEST(MixedCharPoly, CoordinateVectorsGiveShiftedPower) {
  for (std::size_t d = 1; d <= 5; ++d) {
    std::vector<Vector<Rational>> vs;
    for (std::size_t i = 0; i < d; ++i) vs.push_back(unit_vector<Rational>(d, i));
    EXPECT_EQ(mixed_char_poly(product_ctx(d), vs), P({-1, 1}).pow(static_cast<unsigned>(d)));
  }
}

TEST(MixedCharPoly, ZeroVectors) {
  QContext ctx = certify_hyperbolic(lorentz(3), V({2, 1, 0}));
  QPoly chi = mixed_char_poly(ctx, {V({0, 0, 0}), V({0, 0, 0})});
  EXPECT_EQ(chi, QPoly::monomial(2, ctx.h_at_e()));
}

TEST(MixedCharPoly, MatchesOperatorProductAtTeOne) {
  auto contexts = builtin_contexts();
  Rng rng(8);
  for (const auto& ctx : contexts) {
    auto vs = cone_vectors(ctx, rng, 3);
    MixedPoly mp = mixed_operator_poly(ctx, vs);
    Vector<Rational> base(mp.n + mp.m, Rational(0)), dir(mp.n + mp.m, Rational(0));
    for (std::size_t i = 0; i < mp.n; ++i) dir[i] = ctx.e()[i];
    for (std::size_t j = 0; j < mp.m; ++j) base[mp.n + j] = 1;
    EXPECT_EQ(mixed_char_poly(ctx, vs), mp.poly.restrict_to_line(base, dir));
  }
}

TEST(MixedCharPoly, RealRootedOnSampledCones) {
  auto contexts = builtin_contexts();
  Rng rng(21);
  for (const auto& ctx : contexts) {
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<Vector<Rational>> vs;
      const long m = rng.uniform_int(1, 4);
      for (long j = 0; j < m; ++j)
        vs.push_back(rng.uniform01() < 0.5 ? scaled_rank_one(ctx, rng) : sample_cone_point(ctx, rng));
      EXPECT_TRUE(is_real_rooted(mixed_char_poly(ctx, vs)));
    }
  }
}

TEST(DeltaBound, ExactValues) {
  for (const char* a : {"1", "2", "7/3", "1/2"}) {
    QuadSurd d = delta_bound(Q(a), 1);
    EXPECT_TRUE(d.is_rational());
    EXPECT_EQ(compare(d, Q(a)), 0);
  }
  EXPECT_NEAR(delta_bound(Q(1), 2).to_double(), 1.8660254037844386, 1e-15);
  EXPECT_NEAR(delta_bound(Q(1), 1000000).to_double(), 4.0, 1e-5);
  EXPECT_EQ(compare(delta_bound(Q(1), 2), QuadSurd(Q(1, 2), Q(1, 2), Q(3)).squared()), 0);
}

TEST(DeltaBound, NegativeRadicandRejected) {
  try {
    delta_bound(Q(1, 10), 2);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::InvalidArgument);
  }
}

TEST(DeltaBound, InfimumOverTMatchesClosedForm) {
  for (std::size_t m : {1u, 2u, 3u, 4u, 8u, 50u}) {
    for (const char* eps : {"1", "1/2", "3/4", "2", "1/4"}) {
      Rational e = Q(eps);
      if (e < ratio(static_cast<long>(m) - 1, static_cast<long>(m * m))) continue;
      DeltaGridCheck g = delta_infimum_check(e, m);
      EXPECT_TRUE(g.never_below);
      // below eps = 1/m the minimizer escapes to t -> infinity (never reached with traces summing to d >= 1)
      if (e * static_cast<long>(m) < 1) continue;
      EXPECT_TRUE(g.ok()) << "m=" << m << " eps=" << eps << " min=" << g.grid_min << " delta=" << g.delta;
    }
  }
}

TEST(MainBound, CoordinateVectors) {
  for (std::size_t d = 1; d <= 5; ++d) {
    std::vector<Vector<Rational>> vs;
    for (std::size_t i = 0; i < d; ++i) vs.push_back(unit_vector<Rational>(d, i));
    BoundReport r = mainbound_check(product_ctx(d), vs, Q(1));
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.largest_root_value, 1.0, 1e-12);
    EXPECT_GE(r.margin, 0.0);
  }
}

TEST(MainBound, SingleVectorZeroMargin) {
  auto contexts = builtin_contexts();
  for (const auto& ctx : contexts) {
    const long d = ctx.degree();
    BoundReport r = mainbound_check(ctx, {ctx.e()}, Q(d));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.margin, 0.0);
    EXPECT_TRUE(r.largest_root.exact());
    EXPECT_EQ(r.largest_root.lo, Rational(d));
  }
}

TEST(MainBound, PreconditionsReported) {
  QContext ctx = product_ctx(2);
  try {
    mainbound_check(ctx, {V({1, 0}), V({0, 1})}, Q(1, 2));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::PreconditionViolated);
  }
  try {
    mainbound_check(ctx, {V({1, 0}), V({0, 2})}, Q(5));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::PreconditionViolated);
  }
}

TEST(MainBound, RandomSplitsOfDirection) {
  auto contexts = builtin_contexts();
  Rng rng(77);
  for (const auto& ctx : contexts) {
    for (int rep = 0; rep < 5; ++rep) {
      const long m = rng.uniform_int(2, 4);
      // convex weights times e, perturbed by moving a cone vector between two slots
      std::vector<Vector<Rational>> vs;
      for (long j = 0; j < m; ++j) vs.push_back(ratio(1, m) * ctx.e());
      Vector<Rational> r = ratio(1, 20 * m) * sample_cone_point(ctx, rng);
      if (cone_membership(ctx, vs[0] - r, ConeMode::Closed)) {
        vs[0] = vs[0] - r;
        vs[1] = vs[1] + r;
      }
      Rational eps(0);
      for (const auto& v : vs) eps = std::max(eps, trace(ctx, v));
      EXPECT_TRUE(mainbound_check(ctx, vs, eps).pass);
    }
  }
}

TEST(Xi, ValuesAndHomogeneity) {
  QMultiPoly h = coordinate_product(2);
  EXPECT_EQ(xi(h, V({1, 0}), V({1, 1})), Rational(1));
  auto contexts = builtin_contexts();
  Rng rng(4);
  for (const auto& ctx : contexts) {
    Vector<Rational> v = sample_cone_point(ctx, rng);
    Vector<Rational> z = sample_cone_point(ctx, rng);
    EXPECT_EQ(xi(ctx.h(), v, Rational(2) * z), 2 * xi(ctx.h(), v, z));
  }
}

TEST(Xi, BoundaryReported) {
  try {
    xi(coordinate_product(2), V({1, 0}), V({1, 0}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::ConeBoundary);
  }
}

TEST(Xi, DerivativeDoesNotDecrease) {
  auto contexts = builtin_contexts();
  Rng rng(31);
  for (const auto& ctx : contexts) {
    if (ctx.degree() < 2) continue;
    for (int rep = 0; rep < 20; ++rep) {
      Vector<Rational> u = sample_cone_point(ctx, rng);
      Vector<Rational> v = sample_cone_point(ctx, rng);
      Vector<Rational> z = sample_cone_point(ctx, rng);
      EXPECT_GE(xi(ctx.h().directional_derivative(u), v, z), xi(ctx.h(), v, z));
    }
  }
}

TEST(Tkd, MatchesOperatorExpansionOnProduct) {
  QContext ctx = product_ctx(2);
  for (const char* a : {"1/5", "1/3", "1/4"}) {
    Rational av = Q(a);
    Vector<Rational> v{av, Rational(Q(1, 2) - av)};
    // (1 - D_v)(1 - D_e + D_v) x1 x2 at te, expanded by hand
    const Rational& v1 = v[0];
    const Rational& v2 = v[1];
    // (1 - D_e + D_v)h = x1x2 - (x1 + x2) + v2 x1 + v1 x2
    // applying (1 - D_v) removes v2 x1 + v1 x2 and adds v1 + v2 - 2 v1 v2
    QPoly expected({Rational(v1 + v2 - 2 * v1 * v2), Rational(-2), Rational(1)});
    EXPECT_EQ(gv_poly(ctx, v, 1), expected);
    EXPECT_EQ(tkd_apply(1, 2, ctx.h().restrict_to_line(Rational(-1) * v, ctx.e())), expected);
  }
}

TEST(Tkd, ImageOfShiftedPowerIsRealRooted) {
  QPoly f = P({0, 1}).taylor_shift(Q(-1, 4)).pow(3);
  QPoly g = tkd_apply(2, 3, f);
  EXPECT_EQ(g.degree(), 3);
  EXPECT_TRUE(is_real_rooted(g));
}

TEST(Tkd, Linear) {
  Rng rng(9);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Rational> a(5), b(5);
    for (auto& c : a) c = rng.lattice_rational(-5, 5, 3);
    for (auto& c : b) c = rng.lattice_rational(-5, 5, 3);
    QPoly f(a), g(b);
    Rational s = rng.lattice_rational(-3, 3, 2);
    EXPECT_EQ(tkd_apply(3, 4, f + g * s), tkd_apply(3, 4, f) + tkd_apply(3, 4, g) * s);
  }
}

TEST(Tkd, RejectsHighDegree) { EXPECT_THROW(tkd_apply(2, 2, P({0, 0, 0, 0, 1})), Error); }

TEST(Tkd, RealRootedOnRootedInputs) {
  Rng rng(123);
  for (int rep = 0; rep < 60; ++rep) {
    const int k = static_cast<int>(rng.uniform_int(1, 4));
    const int d = static_cast<int>(rng.uniform_int(1, 6));
    std::vector<Rational> roots;
    for (int i = 0; i < d; ++i) roots.push_back(rng.lattice_rational(0, 1, 12) / k);
    EXPECT_TRUE(is_real_rooted(tkd_apply(k, d, monic_from_rational_roots(roots)))) << "k=" << k << " d=" << d;
  }
}

TEST(Gv, AgreesWithMixedCharAndTkd) {
  auto contexts = builtin_contexts();
  Rng rng(17);
  for (const auto& ctx : contexts) {
    for (int k = 1; k <= 3; ++k) {
      Vector<Rational> v;
      for (int tries = 0; tries < 50; ++tries) {
        Vector<Rational> c = sample_cone_point(ctx, rng);
        c = Rational(Rational(ctx.degree()) / (trace(ctx, c) * 2 * k)) * c;
        if (cone_membership(ctx, ctx.e() - Rational(k) * c, ConeMode::Open)) {
          v = c;
          break;
        }
      }
      ASSERT_FALSE(v.empty());
      QPoly g = gv_poly(ctx, v, k);
      std::vector<Vector<Rational>> vs(k, v);
      vs.push_back(ctx.e() - Rational(k) * v);
      EXPECT_EQ(g, mixed_char_poly(ctx, vs));
      EXPECT_EQ(g, tkd_apply(k, ctx.degree(), ctx.h().restrict_to_line(Rational(-1) * v, ctx.e())));
    }
  }
}

TEST(Gv, CandidateConfiguration) {
  // v = (eps/d) e with k copies and the remainder e - kv
  QContext ctx = certify_hyperbolic(elementary_symmetric(4, 3), ones<Rational>(4));
  const Rational eps = Q(4, 5);
  const int k = 3;  // floor(3 / (4/5))
  Vector<Rational> v = Rational(eps / 3) * ctx.e();
  std::vector<Vector<Rational>> vs(k, v);
  vs.push_back(ctx.e() - Rational(k) * v);
  EXPECT_EQ(gv_poly(ctx, v, k), mixed_char_poly(ctx, vs));
}

TEST(Gv, ConePreconditions) {
  QContext ctx = product_ctx(2);
  EXPECT_THROW(gv_poly(ctx, V({1, 0}), 1), Error);
  EXPECT_THROW(gv_poly(ctx, VS({"2/3", "2/3"}), 2), Error);
}

TEST(Explore, SingleSlotIsForced) {
  ExploreReport r = central_explore(product_ctx(2), Q(2), 1, 20, 1);
  EXPECT_NEAR(r.best_value, 2.0, 1e-12);
  EXPECT_NEAR(r.delta_value, 2.0, 1e-12);
  EXPECT_FALSE(r.exceeds_delta);
  EXPECT_EQ(r.label, "heuristic");
}

TEST(Explore, InfeasibleTraceBudget) {
  try {
    central_explore(product_ctx(3), Q(1, 2), 4, 10, 1);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::Infeasible);
  }
}

TEST(Explore, StaysBelowBoundsAndIsDeterministic) {
  QContext ctx = certify_hyperbolic(elementary_symmetric(4, 2), ones<Rational>(4));
  ExploreReport a = central_explore(ctx, Q(3, 4), 4, 60, 42);
  ExploreReport b = central_explore(ctx, Q(3, 4), 4, 60, 42);
  EXPECT_EQ(a.best, b.best);
  EXPECT_FALSE(a.exceeds_delta);
  EXPECT_FALSE(a.exceeds_candidate);
  EXPECT_LE(a.best_value, a.delta_value + 1e-12);
  EXPECT_EQ(a.candidate_k, 2);
  Vector<Rational> sum(4, Rational(0));
  for (const auto& v : a.best) {
    EXPECT_LE(trace(ctx, v), Q(3, 4));
    sum = sum + v;
  }
  EXPECT_EQ(sum, ctx.e());
}

TEST(MixedDiscriminant, NonnegativeOnCone) {
  auto contexts = builtin_contexts();
  Rng rng(64);
  for (const auto& ctx : contexts) {
    for (int rep = 0; rep < 30; ++rep) {
      auto pick = [&]() { return rng.uniform01() < 0.3 ? scaled_rank_one(ctx, rng) : sample_cone_point(ctx, rng); };
      Vector<Rational> u = pick(), v = pick(), w = pick();
      EXPECT_GE(mixed_discriminant_gap(ctx, u, v, w), Rational(0));
    }
  }
}

TEST(ShiftedMembership, ImplicationHolds) {
  auto contexts = builtin_contexts();
  Rng rng(99);
  int checked = 0;
  for (const auto& ctx : contexts) {
    for (int rep = 0; rep < 6; ++rep) {
      auto vs = cone_vectors(ctx, rng, 2);
      QContext mixed = mixed_context(ctx, vs);
      Vector<Rational> x = sample_cone_point(ctx, rng);
      Rational xi0 = xi(ctx.h(), vs[0], x), xi1 = xi(ctx.h(), vs[1], x);
      Rational lo = std::min(xi0, xi1);
      // scale so that both xi values exceed 2
      Rational c = Rational(3) / lo;
      if (c < 1) c = 1;
      x = c * x;
      xi0 *= c;
      xi1 *= c;
      Rational ti = 1 + Rational(xi0 - 1) * ratio(rng.uniform_int(1, 10), 10);
      Rational tj = 1 + Rational(xi1 - 1) * ratio(rng.uniform_int(1, 10), 10);
      ShiftCheck s = shifted_membership_check(ctx, mixed, vs, x, 0, 1, ti, tj);
      EXPECT_TRUE(s.premise);
      EXPECT_TRUE(s.conclusion);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 30);
}
