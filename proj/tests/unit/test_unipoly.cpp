#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hyperlace/common/error.hpp"
#include "hyperlace/common/random.hpp"
#include "hyperlace/unipoly/jacobi.hpp"
#include "hyperlace/unipoly/roots.hpp"
#include "test_util.hpp"

using namespace hyperlace;
using namespace hyperlace::testing;

namespace {

QPoly random_real_rooted(Rng& rng, int deg, std::vector<Rational>* roots_out = nullptr) {
  std::vector<Rational> roots;
  for (int i = 0; i < deg; ++i) roots.push_back(rng.lattice_rational(-4, 4, 3));
  if (roots_out) *roots_out = roots;
  return QPoly::from_roots(roots);
}

}  // namespace

TEST(UniPoly, Arithmetic) {
  QPoly a = P({-1, 0, 1});
  EXPECT_EQ(a.degree(), 2);
  EXPECT_EQ(a.derivative(), P({0, 2}));
  EXPECT_EQ(a * P({1, 1}), P({-1, -1, 1, 1}));
  auto [q, r] = QPoly::divmod(P({-1, 0, 1}), P({-1, 1}));
  EXPECT_EQ(q, P({1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(P({0, 1}).compose_affine(Rational(2), Rational(-1)), P({-1, 2}));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((a - a).degree(), -1);
}

TEST(UniPoly, GcdAndSquarefree) {
  QPoly f = P({-1, 1}).pow(3) * P({2, 1});
  EXPECT_EQ(gcd(f, f.derivative()), P({-1, 1}).pow(2));
  EXPECT_EQ(squarefree_part(f), P({-1, 1}) * P({2, 1}));
  auto parts = squarefree_decomposition(f);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], P({2, 1}));
  EXPECT_EQ(parts[1].degree(), 0);
  EXPECT_EQ(parts[2], P({-1, 1}));
}

TEST(RealRootCount, Basics) {
  EXPECT_EQ(real_root_count(P({-1, 0, 1})), 2);
  EXPECT_EQ(real_root_count(P({1, 0, 1})), 0);
  EXPECT_EQ(real_root_count(P({1, -6, 6})), 2);
  EXPECT_EQ(real_root_count(P({-1, 1}).pow(3)), 3);
  EXPECT_EQ(real_root_count(P({-1, 0, 1}), Rational(0), Rational(1)), 1);  // half-open (0, 1]
  EXPECT_THROW(real_root_count(QPoly()), Error);
  EXPECT_THROW(real_root_count(to_double(P({-1, 0, 1}))), Error);
}

TEST(RealRootCount, AgreesWithCompanionRoots) {
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    int deg = static_cast<int>(rng.uniform_int(1, 7));
    std::vector<Rational> roots;
    QPoly f = random_real_rooted(rng, deg, &roots);
    EXPECT_EQ(real_root_count(f), deg);
    EXPECT_TRUE(is_real_rooted(f));
    // perturb into a polynomial with a complex pair: multiply by t^2 + 1
    QPoly g = f * P({1, 0, 1});
    EXPECT_FALSE(is_real_rooted(g));
    std::sort(roots.begin(), roots.end());
    auto fr = float_real_roots(to_double(f), 1e-4);
    ASSERT_EQ(fr.size(), roots.size());
    for (std::size_t k = 0; k < roots.size(); ++k) EXPECT_NEAR(fr[k], roots[k].get_d(), 1e-4);
  }
}

TEST(LargestRoot, Values) {
  EXPECT_EQ(largest_root(P({-1, 0, 1})), Rational(1));
  Rational r = largest_root(P({1, -6, 6}));
  EXPECT_NEAR(r.get_d(), (3 + std::sqrt(3.0)) / 6, 1e-12);
  RootBracket b = largest_root_bracket(P({1, -6, 6}));
  EXPECT_LE(b.hi - b.lo, default_root_tol());
  for (int d = 1; d <= 6; ++d) {
    QPoly f = P({-d, 1}) * P({0, 1}).pow(d - 1);
    EXPECT_EQ(largest_root(f), Rational(d));
  }
  EXPECT_THROW(largest_root(P({1, 0, 1})), Error);
  EXPECT_THROW(largest_root(P({3})), Error);
}

TEST(LargestRoot, ShiftEquivariant) {
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    QPoly f = random_real_rooted(rng, 4) * P({1, -3, 1});  // add irrational roots
    Rational c = rng.lattice_rational(-3, 3, 5);
    AlgebraicReal a(squarefree_part(f), largest_root_bracket(f));
    QPoly g = f.taylor_shift(-c);  // g(t) = f(t - c)
    AlgebraicReal b(squarefree_part(g), largest_root_bracket(g));
    const Rational& tol = default_root_tol();
    EXPECT_LE(abs(largest_root(g) - largest_root(f) - c), tol);
    EXPECT_EQ(compare(b, a.midpoint() + c) == 0, compare(a, a.midpoint()) == 0);
  }
}

TEST(AlgebraicReal, ExactComparisons) {
  QPoly f = P({-2, 0, 1});  // sqrt 2
  auto roots = real_roots_descending(f);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(compare(roots[0], Rational(141, 100)), 1);
  EXPECT_EQ(compare(roots[0], ratio(142, 100)), -1);
  EXPECT_EQ(compare(roots[0], QuadSurd::sqrt(Rational(2))), 0);
  EXPECT_EQ(compare(roots[1], -QuadSurd::sqrt(Rational(2))), 0);
  EXPECT_EQ(compare(roots[0], QuadSurd::sqrt(Rational(3))), -1);
  // sqrt 2 as a root of a different polynomial: (t^2 - 2)(t - 5)
  auto other = real_roots_descending(f * P({-5, 1}));
  EXPECT_EQ(compare(other[1], roots[0]), 0);
  EXPECT_EQ(compare(other[0], roots[0]), 1);
  EXPECT_EQ(compare(AlgebraicReal(Rational(3)), other[0]), -1);
}

TEST(Interleaves, Basics) {
  EXPECT_TRUE(interleaves(P({0, 1}), P({-1, 0, 1})));
  EXPECT_FALSE(interleaves(P({-2, 1}), P({-1, 0, 1})));
  EXPECT_THROW(interleaves(P({0, 1}), P({0, 1})), Error);
  EXPECT_THROW(interleaves(P({0, 1}), P({1, 0, 1})), Error);
  // shared roots are allowed: t interleaves t^2
  EXPECT_TRUE(interleaves(P({0, 1}), P({0, 0, 1})));
}

TEST(Interleaves, DerivativeInterleaves) {
  Rng rng(99);
  for (int i = 0; i < 50; ++i) {
    QPoly f = random_real_rooted(rng, static_cast<int>(rng.uniform_int(2, 6)));
    EXPECT_TRUE(interleaves(f.derivative(), f));
  }
}

TEST(Interleaves, InterleavedPairMixturesStayRealRooted) {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    QPoly g = random_real_rooted(rng, 4);
    QPoly f = g.derivative() * (Rational(1) / Rational(4));
    ASSERT_TRUE(interleaves(f, g));
    // g + c·t·f shares the interleaver f for small c >= 0
    QPoly h = g + P({0, 1}) * f * Rational(1, 3);
    auto verdict = mixture_realrooted_probe({g, h * (Rational(1) / h.leading()) * g.leading()}, 30, 1);
    EXPECT_FALSE(verdict.counterexample);
  }
}

TEST(MixtureProbe, Examples) {
  auto v1 = mixture_realrooted_probe({P({-1, 0, 1}), P({-4, 0, 1})}, 50, 7);
  EXPECT_FALSE(v1.counterexample);
  EXPECT_EQ(v1.label(), "no-counterexample(50)");
  auto v2 = mixture_realrooted_probe({P({2, -3, 1}), P({2, 3, 1})}, 50, 7);
  ASSERT_TRUE(v2.counterexample);
  EXPECT_EQ(v2.combination, P({2, 0, 1}));
  EXPECT_FALSE(mixture_realrooted_probe({P({2, -3, 1})}, 5, 1).counterexample);
  EXPECT_THROW(mixture_realrooted_probe({}, 5, 1), Error);
  EXPECT_THROW(mixture_realrooted_probe({P({0, 1}), P({-1, 0, 1})}, 5, 1), Error);
}

TEST(Jacobi, LowDegree) {
  EXPECT_EQ(jacobi_poly(0, Rational(3), Rational(-1, 2)), P({1}));
  EXPECT_EQ(jacobi_poly(2, Rational(0), Rational(0)), QPoly({Rational(-1, 2), Rational(0), Rational(3, 2)}));
  EXPECT_EQ(jacobi_poly_shifted(2, Rational(0), Rational(0)), P({1, -6, 6}));
}

TEST(Jacobi, RecurrenceMatchesExplicitSumAndNormalization) {
  for (int d = 0; d <= 8; ++d) {
    for (int a = 0; a <= 4; ++a) {
      for (int b = 0; b <= 4; ++b) {
        Rational alpha = ratio(a, 2), beta = ratio(b - 1, 3);
        QPoly p = jacobi_poly(d, alpha, beta);
        EXPECT_EQ(p, jacobi_poly_explicit(d, alpha, beta));
        EXPECT_EQ(p.evaluate(Rational(1)), binomial(alpha + d, d));
      }
    }
  }
}

TEST(Jacobi, DegenerateRecurrenceFallsBack) {
  // alpha + beta = -2 makes a recurrence factor vanish at n = 2
  QPoly p = jacobi_poly(3, Rational(-1), Rational(-1));
  EXPECT_EQ(p, jacobi_poly_explicit(3, Rational(-1), Rational(-1)));
}

TEST(Jacobi, GolubWelschZeros) {
  auto z = jacobi_zeros_approx(2, 0.0, 0.0);
  ASSERT_EQ(z.size(), 2u);
  EXPECT_NEAR(z[1], 1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_TRUE(jacobi_zeros_approx(3, -1.5, 0.0).empty());
}

TEST(Jacobi, LargestZeroHighDegreeMatchesSturm) {
  // the hinted certificate and plain Sturm isolation agree
  for (int d : {5, 12, 25}) {
    Rational alpha(d), beta(d);
    RootBracket a = jacobi_largest_zero_shifted(d, alpha, beta);
    Rational b = largest_root(jacobi_poly_shifted(d, alpha, beta));
    EXPECT_LE(abs(a.midpoint() - b), default_root_tol());
  }
}

TEST(IsolateWithHints, RejectsBadHints) {
  QPoly f = P({1, -6, 6});
  EXPECT_FALSE(isolate_with_hints(f, {0.1, 0.15}).has_value());
  EXPECT_FALSE(isolate_with_hints(f, {0.2}).has_value());
  auto ok = isolate_with_hints(f, {0.2, 0.8});
  ASSERT_TRUE(ok.has_value());
  EXPECT_EQ(ok->size(), 2u);
  EXPECT_FALSE(isolate_with_hints(P({1, 0, 1}), {-0.5, 0.5}).has_value());
}

TEST(FloatRoots, ToleranceAndZeroDeflation) {
  auto r = float_real_roots(FPoly({0.0, -1.0, 1.0}));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_DOUBLE_EQ(r[0], 0.0);
  EXPECT_NEAR(r[1], 1.0, 1e-14);
  EXPECT_THROW(float_real_roots(FPoly({1.0, 0.0, 1.0})), Error);
  EXPECT_NEAR(largest_root(FPoly({1.0, -6.0, 6.0})), (3 + std::sqrt(3.0)) / 6, 1e-14);
}
