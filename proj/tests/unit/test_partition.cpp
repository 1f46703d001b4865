#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "hyperlace/common/error.hpp"
#include "hyperlace/mixedchar/mixed.hpp"
#include "hyperlace/partition/partition.hpp"
#include "test_contexts.hpp"

using namespace hyperlace;
using namespace hyperlace::testing;

namespace {

QInstance product_instance(std::size_t d, std::size_t k) {
  QContext ctx = certify_hyperbolic(coordinate_product(d), ones<Rational>(d));
  std::vector<Vector<Rational>> us;
  for (std::size_t i = 0; i < d; ++i) us.push_back(unit_vector<Rational>(d, i));
  return make_instance(ctx, us, k, "product");
}

const double kBalanced = (3.0 + std::sqrt(3.0)) / 6.0;

}  // namespace

TEST(Instances, StandardBasis) {
  QInstance inst = standard_basis(4, 2, 2);
  EXPECT_EQ(inst.m(), 4u);
  EXPECT_EQ(inst.eps, Q(1, 2));
  for (const auto& u : inst.us) EXPECT_EQ(trace(inst.ctx, u), Q(1, 2));
  EXPECT_THROW(standard_basis(2, 3, 2), Error);
}

TEST(Instances, DeterminantRankOneWhitened) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    FInstance inst = determinant_rank1(2, 6, 2, seed);
    Vector<double> sum(3, 0.0);
    for (const auto& u : inst.us) {
      EXPECT_LE(rank(inst.ctx, u), 1);
      for (std::size_t i = 0; i < 3; ++i) sum[i] += u[i];
    }
    EXPECT_NEAR(sum[0], 1.0, 1e-9);
    EXPECT_NEAR(sum[1], 0.0, 1e-9);
    EXPECT_NEAR(sum[2], 1.0, 1e-9);
  }
  EXPECT_THROW(determinant_rank1(3, 2, 2, 1), Error);
}

TEST(Instances, RejectsBadVectors) {
  QContext ctx = certify_hyperbolic(coordinate_product(2), ones<Rational>(2));
  EXPECT_THROW(make_instance(ctx, {V({1, 1})}, 2, "x"), Error);          // rank two
  EXPECT_THROW(make_instance(ctx, {V({1, 0}), V({0, 2})}, 2, "x"), Error);  // sum is not e
  EXPECT_THROW(make_instance(ctx, {V({2, 0}), V({-1, 0}), V({0, 1})}, 2, "x"), Error);
}

TEST(Instances, DirectSumKeepsInvariants) {
  QInstance a = product_instance(2, 2), b = product_instance(3, 2);
  QInstance s = direct_sum(std::vector<QInstance>{a, b});
  EXPECT_EQ(s.m(), 5u);
  EXPECT_EQ(s.ctx.nvars(), 5u);
  EXPECT_EQ(s.ctx.degree(), 5);
  EXPECT_EQ(s.ctx.e(), ones<Rational>(5));
  for (const auto& u : s.us) EXPECT_EQ(rank(s.ctx, u), 1);
  EXPECT_EQ(s.eps, Q(1));
}

TEST(Expectation, EmptyAssignmentMatchesBruteForce) {
  QInstance inst = standard_basis(4, 2, 2);
  EXPECT_EQ(expected_charpoly(inst, {}), brute_force_expected(inst, {}));
}

TEST(Expectation, PartialAssignmentsMatchBruteForce) {
  std::vector<QInstance> cases = {standard_basis(4, 2, 2), standard_basis(5, 3, 3), product_instance(3, 2),
                                  direct_sum(std::vector<QInstance>{product_instance(2, 2), standard_basis(3, 2, 2)})};
  Rng rng(3);
  for (const auto& inst : cases) {
    ExpectationEngine<Rational> engine(inst);
    for (std::size_t r = 0; r <= inst.m(); ++r) {
      std::vector<std::size_t> partial;
      for (std::size_t j = 0; j < r; ++j) partial.push_back(static_cast<std::size_t>(rng.uniform_int(0, inst.k - 1)));
      QPoly fast = engine.expected(partial);
      EXPECT_EQ(fast, brute_force_expected(inst, partial)) << inst.kind << " r=" << r;
      EXPECT_EQ(fast.degree(), static_cast<int>(inst.k) * inst.ctx.degree());
      EXPECT_TRUE(is_real_rooted(fast));
    }
  }
}

TEST(Expectation, RankOneDeterminantContext) {
  // exact rank-one matrices summing to I in 2x2 symmetric coordinates
  QContext ctx = certify_hyperbolic(symmetric_determinant(2), identity_flat(2));
  std::vector<Vector<Rational>> us = {VS({"1/2", "1/2", "1/2"}), VS({"1/2", "-1/2", "1/2"})};
  QInstance inst = make_instance(ctx, us, 2, "det2");
  for (std::size_t r = 0; r <= 2; ++r) {
    std::vector<std::size_t> partial(r, 1);
    EXPECT_EQ(expected_charpoly(inst, partial), brute_force_expected(inst, partial));
  }
}

TEST(Expectation, FullAssignmentIsBlockProduct) {
  QInstance inst = standard_basis(4, 2, 2);
  std::vector<std::size_t> a{0, 1, 1, 0};
  QPoly f = expected_charpoly(inst, a);
  EXPECT_EQ(f, assignment_poly(inst, a));
  // each block is e_2(t1 - 2 e_i - 2 e_j) with one pair
  QPoly block = inst.ctx.h().restrict_to_line(VS({"-2", "0", "0", "-2"}), inst.ctx.e());
  EXPECT_EQ(f, block * block);
}

TEST(Expectation, SingleVector) {
  QContext ctx = certify_hyperbolic(coordinate_product(1), V({1}));
  QInstance inst = make_instance(ctx, {V({1})}, 2, "single");
  // average of (t - 2) t and t (t - 2)
  EXPECT_EQ(expected_charpoly(inst, {}), P({0, -2, 1}));
  EXPECT_EQ(expected_charpoly(inst, {0}), P({0, -2, 1}));
}

TEST(Expectation, FloatMatchesBruteForce) {
  FInstance inst = determinant_rank1(2, 5, 2, 7);
  for (std::size_t r : {0u, 2u, 5u}) {
    std::vector<std::size_t> partial(r, 0);
    for (std::size_t j = 0; j < r; ++j) partial[j] = j % 2;
    FPoly a = expected_charpoly(inst, partial), b = brute_force_expected(inst, partial);
    ASSERT_EQ(a.degree(), b.degree());
    for (int i = 0; i <= a.degree(); ++i) EXPECT_NEAR(a.coeff(i), b.coeff(i), 1e-9);
  }
}

TEST(Greedy, BalancedStandardBasis) {
  QInstance inst = standard_basis(4, 2, 2);
  PartitionCertificate cert = greedy_partition(inst);
  EXPECT_TRUE(cert.pass);
  EXPECT_TRUE(cert.trace_monotone);
  EXPECT_TRUE(cert.intermediates_real_rooted);
  EXPECT_EQ(cert.greedy_trace.size(), 5u);
  EXPECT_NEAR(cert.max_seminorm, kBalanced, 1e-12);
  EXPECT_NEAR(cert.bound_value, delta_bound(Q(1), 4).to_double() / 2, 1e-15);
  EXPECT_NEAR(cert.greedy_trace.back(), 2 * cert.max_seminorm, 1e-9);
}

TEST(Greedy, CoordinateProductSeminormOne) {
  for (std::size_t d = 2; d <= 5; ++d) {
    PartitionCertificate cert = greedy_partition(product_instance(d, 2));
    EXPECT_NEAR(cert.max_seminorm, 1.0, 1e-12);
    EXPECT_TRUE(cert.pass);
  }
}

TEST(Greedy, SingleVectorSplit) {
  QContext ctx = certify_hyperbolic(coordinate_product(1), V({1}));
  PartitionCertificate cert = greedy_partition(make_instance(ctx, {V({1})}, 2, "single"));
  ASSERT_EQ(cert.part_lambda_max.size(), 2u);
  std::vector<double> sorted = cert.part_lambda_max;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(cert.assignment, std::vector<std::size_t>{0});
}

TEST(Greedy, TraceMonotoneAcrossInstances) {
  for (std::size_t n = 3; n <= 7; ++n) {
    for (std::size_t d = 1; d <= std::min<std::size_t>(n, 3); ++d) {
      for (std::size_t k : {2u, 3u}) {
        PartitionCertificate cert = greedy_partition(standard_basis(n, d, k));
        EXPECT_TRUE(cert.trace_monotone) << n << "," << d << "," << k;
        EXPECT_TRUE(cert.pass) << n << "," << d << "," << k;
        EXPECT_NEAR(cert.greedy_trace.back(), static_cast<double>(k) * cert.max_seminorm, 1e-9);
      }
    }
  }
}

TEST(Greedy, FloatDeterminant) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    PartitionCertificate cert = greedy_partition(determinant_rank1(2, 8, 2, seed));
    EXPECT_LE(cert.max_seminorm, cert.bound_value + 1e-6);
    EXPECT_TRUE(cert.trace_monotone);
    EXPECT_EQ(cert.backend, "float");
  }
}

TEST(Exhaustive, BalancedOptimum) {
  QInstance inst = standard_basis(4, 2, 2);
  PartitionCertificate ex = exhaustive_partition(inst);
  EXPECT_NEAR(ex.max_seminorm, kBalanced, 1e-12);
  EXPECT_TRUE(ex.pass);
  // lexicographically first optimal split puts vector 0 with vector 1 after vectors 2, 3
  EXPECT_EQ(ex.assignment, (std::vector<std::size_t>{0, 0, 1, 1}));
}

TEST(Exhaustive, NeverWorseThanGreedy) {
  for (std::size_t n = 3; n <= 6; ++n)
    for (std::size_t d = 1; d <= 3 && d <= n; ++d) {
      QInstance inst = standard_basis(n, d, 2);
      EXPECT_LE(exhaustive_partition(inst).max_seminorm, greedy_partition(inst).max_seminorm + 1e-12);
    }
}

TEST(Exhaustive, BudgetEnforced) {
  try {
    exhaustive_partition(standard_basis(12, 2, 3), 1000);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Verify, RecomputesGreedy) {
  QInstance inst = standard_basis(6, 2, 2);
  PartitionCertificate cert = greedy_partition(inst);
  VerifyReport r = verify_certificate(inst, cert);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.consistent);
}

TEST(Verify, CorruptedAssignmentIsTrivialPass) {
  QInstance inst = standard_basis(4, 2, 2);
  PartitionCertificate cert = greedy_partition(inst);
  cert.assignment = {0, 0, 0, 0};
  VerifyReport r = verify_certificate(inst, cert);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.trivial_pass);
  EXPECT_EQ(r.note, "trivial-pass");
  EXPECT_NEAR(r.max_seminorm, 1.0, 1e-12);
  EXPECT_FALSE(r.consistent);
}

TEST(Verify, MalformedAssignment) {
  QInstance inst = standard_basis(4, 2, 2);
  PartitionCertificate cert = greedy_partition(inst);
  cert.assignment = {0, 1, 0};
  try {
    verify_certificate(inst, cert);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::Malformed);
  }
  cert.assignment = {0, 1, 0, 2};
  EXPECT_THROW(verify_certificate(inst, cert), Error);
}
