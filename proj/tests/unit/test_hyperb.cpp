#include <gtest/gtest.h>

#include <cmath>

#include "hyperlace/common/error.hpp"
#include "hyperlace/hyperb/context.hpp"
#include "test_contexts.hpp"

using namespace hyperlace;
using namespace hyperlace::testing;

TEST(Certify, StructuralFamilies) {
  auto prod = certify_hyperbolic(coordinate_product(3), ones<Rational>(3), CertifyStrategy::structural());
  EXPECT_EQ(prod.certification().strategy, "structural");
  EXPECT_EQ(prod.family(), Family::Monomial);
  auto lor = certify_hyperbolic(lorentz(3), V({1, 0, 0}), CertifyStrategy::structural());
  EXPECT_EQ(lor.family(), Family::Lorentz);
  auto det = certify_hyperbolic(symmetric_determinant(3), identity_flat(3));
  EXPECT_EQ(det.family(), Family::SymmetricDeterminant);
  auto e2 = certify_hyperbolic(elementary_symmetric(4, 2) * Rational(1, 6), ones<Rational>(4));
  EXPECT_EQ(e2.family(), Family::ElementarySymmetric);
  EXPECT_EQ(e2.h_at_e(), Rational(1));
}

TEST(Certify, SampledCounterexample) {
  QMultiPoly h = M(2, {{"1", {2, 0}}, {"1", {0, 2}}});
  EXPECT_THROW(certify_hyperbolic(h, V({1, 0}), CertifyStrategy::structural()), Error);
  try {
    certify_hyperbolic(h, V({1, 0}), CertifyStrategy::sampled(200, 1));
    FAIL() << "expected a counterexample";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NotHyperbolic);
    EXPECT_EQ(err.witness().size(), 2u);
  }
}

TEST(Certify, SampledAcceptsAndRecordsEvidence) {
  auto ctx = certify_hyperbolic(lorentz(3), V({2, 1, 0}), CertifyStrategy::sampled(50, 3));
  EXPECT_EQ(ctx.certification().strategy, "sampled");
  EXPECT_EQ(ctx.certification().samples, 50u);
  EXPECT_EQ(ctx.certification().seed, 3u);
}

TEST(Certify, Preconditions) {
  QMultiPoly inhom = coordinate_product(2) + QMultiPoly::variable(2, 0);
  EXPECT_THROW(certify_hyperbolic(inhom, V({1, 1})), Error);
  EXPECT_THROW(certify_hyperbolic(lorentz(2), V({1, 1})), Error);  // h(e) = 0
}

TEST(Spectrum, Examples) {
  auto prod = certify_hyperbolic(coordinate_product(3), ones<Rational>(3));
  Spectrum s = spectrum(prod, V({3, 1, 2}));
  ASSERT_EQ(s.exact.size(), 3u);
  EXPECT_EQ(compare(s.exact[0], Rational(3)), 0);
  EXPECT_EQ(compare(s.exact[1], Rational(2)), 0);
  EXPECT_EQ(compare(s.exact[2], Rational(1)), 0);
  auto lor = certify_hyperbolic(lorentz(3), V({1, 0, 0}));
  Spectrum l = spectrum(lor, V({1, 1, 0}));
  EXPECT_EQ(compare(l.exact[0], Rational(2)), 0);
  EXPECT_EQ(compare(l.exact[1], Rational(0)), 0);
  for (const auto& ctx : builtin_contexts()) {
    Spectrum one = spectrum(ctx, ctx.e());
    ASSERT_EQ(static_cast<int>(one.exact.size()), ctx.degree());
    for (const auto& a : one.exact) EXPECT_EQ(compare(a, Rational(1)), 0);
  }
}

TEST(Spectrum, HomogeneityUnderAffineMaps) {
  Rng rng(5);
  for (const auto& ctx : builtin_contexts()) {
    for (int i = 0; i < 5; ++i) {
      Vector<Rational> x(ctx.nvars());
      for (auto& c : x) c = rng.lattice_rational(-3, 3, 2);
      Rational s = rng.lattice_rational(-2, 2, 3), t = rng.lattice_rational(-2, 2, 5);
      QPoly p = ctx.char_poly(x);
      QPoly q = ctx.char_poly(s * x + t * ctx.e());
      // q(u) = s^d p((u - t)/s) for s != 0
      if (sgn(s) == 0) continue;
      QPoly expected = p.compose_affine(Rational(1) / s, -t / s);
      Rational sd = 1;
      for (int k = 0; k < ctx.degree(); ++k) sd *= s;
      EXPECT_EQ(q, expected * sd);
      Spectrum a = spectrum(ctx, x), b = spectrum(ctx, s * x + t * ctx.e());
      for (std::size_t k = 0; k < a.values.size(); ++k) {
        std::size_t j = sgn(s) > 0 ? k : a.values.size() - 1 - k;
        EXPECT_NEAR(b.values[j], s.get_d() * a.values[k] + t.get_d(), 1e-9);
      }
    }
  }
}

TEST(Trace, Examples) {
  auto ed = certify_hyperbolic(elementary_symmetric(6, 2), ones<Rational>(6));
  EXPECT_EQ(trace(ed, unit_vector<Rational>(6, 2)), ratio(2, 6));
  Rng rng(8);
  for (const auto& ctx : builtin_contexts()) {
    EXPECT_EQ(trace(ctx, ctx.e()), Rational(ctx.degree()));
    Vector<Rational> u(ctx.nvars()), v(ctx.nvars());
    for (auto& c : u) c = rng.lattice_rational(-3, 3, 2);
    for (auto& c : v) c = rng.lattice_rational(-3, 3, 2);
    EXPECT_EQ(trace(ctx, u + v), trace(ctx, u) + trace(ctx, v));
    // trace = sum of eigenvalues: -coefficient of t^{d-1} in the monic char poly
    EXPECT_EQ(trace(ctx, u), -ctx.char_poly(u).coeff(ctx.degree() - 1));
    double sum = 0;
    for (double x : spectrum(ctx, u).values) sum += x;
    EXPECT_NEAR(sum, trace(ctx, u).get_d(), 1e-9);
  }
}

TEST(Rank, Examples) {
  auto prod = certify_hyperbolic(coordinate_product(3), ones<Rational>(3));
  EXPECT_EQ(rank(prod, unit_vector<Rational>(3, 0)), 1);
  auto lor = certify_hyperbolic(lorentz(3), V({1, 0, 0}));
  EXPECT_EQ(rank(lor, V({1, 1, 0})), 1);
  for (const auto& ctx : builtin_contexts()) EXPECT_EQ(rank(ctx, ctx.e()), ctx.degree());
  Rng rng(2);
  for (const auto& ctx : builtin_contexts()) {
    for (int i = 0; i < 5; ++i) EXPECT_EQ(rank(ctx, sample_rank_one(ctx, rng)), 1);
  }
}

TEST(Seminorm, Examples) {
  auto prod = certify_hyperbolic(coordinate_product(3), ones<Rational>(3));
  EXPECT_EQ(compare(seminorm(prod, V({3, 1, 2})), Rational(3)), 0);
  EXPECT_EQ(compare(seminorm(prod, V({1, -5, 2})), Rational(5)), 0);
  for (const auto& ctx : builtin_contexts()) {
    EXPECT_EQ(compare(seminorm(ctx, ctx.e()), Rational(1)), 0);
    Vector<Rational> neg = ctx.e();
    for (auto& c : neg) c = -c;
    EXPECT_EQ(compare(seminorm(ctx, neg), Rational(1)), 0);
  }
}

TEST(ConeMembership, Examples) {
  auto prod = certify_hyperbolic(coordinate_product(3), ones<Rational>(3));
  EXPECT_TRUE(cone_membership(prod, V({1, 2, 3}), ConeMode::Open));
  EXPECT_FALSE(cone_membership(prod, V({1, -2, 3}), ConeMode::Closed));
  EXPECT_TRUE(cone_membership(prod, V({0, 2, 3}), ConeMode::Closed));
  EXPECT_FALSE(cone_membership(prod, V({0, 2, 3}), ConeMode::Open));
  auto lor = certify_hyperbolic(lorentz(3), V({1, 0, 0}));
  EXPECT_TRUE(cone_membership(lor, V({1, 1, 0}), ConeMode::Closed));
  EXPECT_FALSE(cone_membership(lor, V({1, 1, 0}), ConeMode::Open));
  for (const auto& ctx : builtin_contexts()) EXPECT_TRUE(cone_membership(ctx, ctx.e(), ConeMode::Open));
}

TEST(ConeMembership, FloatBoundaryIsReported) {
  FMultiPoly h = to_double(lorentz(3));
  auto ctx = certify_hyperbolic(h, Vector<double>{1.0, 0.0, 0.0});
  EXPECT_TRUE(cone_membership(ctx, {2.0, 1.0, 0.0}, ConeMode::Open));
  try {
    cone_membership(ctx, {1.0, 1.0, 0.0}, ConeMode::Closed);
    FAIL() << "expected boundary-undecided";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::BoundaryUndecided);
  }
}

TEST(ConeMembership, SamplesAreInsideAndConeIsConvex) {
  Rng rng(31);
  for (const auto& ctx : builtin_contexts()) {
    for (int i = 0; i < 10; ++i) {
      Vector<Rational> x = sample_cone_point(ctx, rng), y = sample_cone_point(ctx, rng);
      ASSERT_TRUE(cone_membership(ctx, x, ConeMode::Open));
      Rational p = rng.lattice_rational(0, 1, 7);
      EXPECT_TRUE(cone_membership(ctx, p * x + Rational(1 - p) * y, ConeMode::Open));
    }
  }
}

TEST(Lineality, LorentzHasTrivialLinealityProductHasNone) {
  auto e2 = certify_hyperbolic(elementary_symmetric(3, 1), ones<Rational>(3));
  // e_1 has lineality space {sum x = 0}
  EXPECT_TRUE(in_lineality_space(e2, V({1, -1, 0})));
  EXPECT_FALSE(in_lineality_space(e2, V({1, 0, 0})));
  auto lor = certify_hyperbolic(lorentz(3), V({1, 0, 0}));
  EXPECT_FALSE(in_lineality_space(lor, V({1, 1, 0})));
  EXPECT_TRUE(in_lineality_space(lor, V({0, 0, 0})));
}

TEST(BlockProduct, ContextAndScaleBridge) {
  auto ctx = certify_hyperbolic(elementary_symmetric(3, 2), ones<Rational>(3));
  auto g = certify_block_product(ctx, 2);
  EXPECT_EQ(g.family(), Family::BlockProduct);
  EXPECT_EQ(g.degree(), 4);
  EXPECT_EQ(g.nvars(), 6u);
  Vector<Rational> x = V({1, 0, 2, 0, 3, 0});
  EXPECT_EQ(g.char_poly(x), ctx.char_poly(V({1, 0, 2})) * ctx.char_poly(V({0, 3, 0})));
}

TEST(Eigenvalues, MinConcaveMaxConvex) {
  Rng rng(2024);
  for (const auto& ctx : builtin_contexts()) {
    for (int i = 0; i < 200; ++i) {
      Vector<Rational> x = sample_cone_point(ctx, rng), y = sample_cone_point(ctx, rng);
      Spectrum sx = spectrum(ctx, x), sy = spectrum(ctx, y), sm = spectrum(ctx, ratio(1, 2) * (x + y));
      EXPECT_GE(sm.min(), (sx.min() + sy.min()) / 2 - 1e-9);
      EXPECT_LE(sm.max(), (sx.max() + sy.max()) / 2 + 1e-9);
    }
  }
}

TEST(Eigenvalues, QuotientByDerivativeIsConcave) {
  Rng rng(2025);
  for (const auto& ctx : builtin_contexts()) {
    for (int i = 0; i < 200; ++i) {
      Vector<Rational> v = sample_cone_point(ctx, rng);
      QMultiPoly dv = ctx.h().directional_derivative(v);
      auto f = [&](const Vector<Rational>& x) -> Rational { return ctx.h().evaluate(x) / dv.evaluate(x); };
      Vector<Rational> x = sample_cone_point(ctx, rng), y = sample_cone_point(ctx, rng);
      EXPECT_GE(f(ratio(1, 2) * (x + y)), (f(x) + f(y)) / 2);
    }
  }
}

TEST(Eigenvalues, TraceAndSeminormMatchSpectrum) {
  Rng rng(2026);
  for (const auto& ctx : builtin_contexts()) {
    for (int i = 0; i < 20; ++i) {
      Vector<Rational> x(ctx.nvars());
      for (auto& xi : x) xi = rng.lattice_rational(-3, 3, 4);
      Spectrum s = spectrum(ctx, x);
      double sum = 0;
      for (double l : s.values) sum += l;
      EXPECT_NEAR(trace(ctx, x).get_d(), sum, 1e-9);
      EXPECT_NEAR(seminorm(ctx, x).to_double(), std::max(std::abs(s.max()), std::abs(s.min())), 1e-9);
    }
  }
}
