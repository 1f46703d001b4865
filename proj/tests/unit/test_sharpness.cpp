#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hyperlace/common/error.hpp"
#include "hyperlace/polycore/multipoly.hpp"
#include "hyperlace/sharpness/sharpness.hpp"
#include "test_util.hpp"

using namespace hyperlace;
using namespace hyperlace::testing;

TEST(BlockRestriction, Examples) {
  EXPECT_EQ(block_restriction_poly(2, 2, 2), (QPoly{Q(1), Q(-6), Q(6)}));
  EXPECT_EQ(block_restriction_poly(3, 2, 0), QPoly::constant(Q(1)));
  EXPECT_EQ(block_restriction_poly(1, 2, 1), (QPoly{Q(-1), Q(2)}));
  EXPECT_THROW(block_restriction_poly(1, 2, 3), Error);
}

TEST(BlockRestriction, MatchesLineRestriction) {
  for (long k = 1; k <= 3; ++k) {
    for (long m = 1; m * k <= 9; ++m) {
      long n = m * k;
      for (long d = 0; d <= n; ++d) {
        QMultiPoly ed = d == 0 ? QMultiPoly::constant(n, Q(1)) : elementary_symmetric(n, d);
        Vector<Rational> base(n, Q(0L));
        for (long i = 0; i < m; ++i) base[i] = -1;
        EXPECT_EQ(ed.restrict_to_line(base, ones<Rational>(n)), block_restriction_poly(m, k, d)) << m << k << d;
      }
    }
  }
}

TEST(JacobiIdentity, Examples) {
  auto a = jacobi_identity_check(2, 2, 2);
  EXPECT_TRUE(a.equal);
  EXPECT_EQ(a.alpha, Q(0L));
  EXPECT_EQ(a.beta, Q(0L));
  EXPECT_TRUE(jacobi_identity_check(1, 2, 1).equal);
}

TEST(JacobiIdentity, SmallGrid) {
  for (long k = 1; k <= 3; ++k)
    for (long m = 1; m <= 6; ++m)
      for (long d = 0; d <= 6 && d <= m * k; ++d) EXPECT_TRUE(jacobi_identity_check(m, k, d).equal) << m << k << d;
}

TEST(JacobiIdentity, CorruptedNormalizationFails) {
  auto r = jacobi_identity_check(2, 2, 2, Q(2));
  EXPECT_FALSE(r.equal);
  EXPECT_EQ(r.jacobi, r.block * Q(2));
}

TEST(Asymptotics, LimitValues) {
  AsymptoticLimit q = asymptotic_limit(Q(1, 4), Q(1, 4));
  EXPECT_NEAR(q.classical.to_double(), std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(q.t_form.to_double(), 0.9330127018922193, 1e-15);
  AsymptoticLimit z = asymptotic_limit(Q(0L), Q(0L));
  EXPECT_EQ(compare(z.classical, Q(1)), 0);
  EXPECT_EQ(compare(z.t_form, Q(1)), 0);
  EXPECT_THROW(asymptotic_limit(Q(3, 5), Q(3, 5)), Error);
}

TEST(Asymptotics, ClosedFormAgrees) {
  EXPECT_EQ(compare(sharpness_lower_bound(2, Q(1, 4)), asymptotic_limit(Q(1, 4), Q(1, 4)).t_form), 0);
  for (long k = 2; k <= 6; ++k) {
    for (long num = 1; num <= 20; ++num) {
      Rational eps = ratio(num, 20);
      if (eps > 1 - ratio(1, k)) continue;
      QuadSurd lim = asymptotic_limit(1 - ratio(1, k) - eps, ratio(1, k) - eps).t_form;
      QuadSurd closed = sharpness_lower_bound(k, eps);
      EXPECT_EQ(compare(lim, closed), 0);
      EXPECT_NEAR(lim.to_double(), closed.to_double(), 1e-12);
      EXPECT_LT(compare(closed, large_m_upper_bound(k, eps)), 0);
    }
  }
}

TEST(ConvergenceTable, SmallRow) {
  auto rows = convergence_table(2, Q(1, 4), {2});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].m, 4);
  EXPECT_EQ(rows[0].alpha, Q(2));
  EXPECT_EQ(rows[0].beta, Q(2));
  // P_2^{(2,2)}(2t - 1) is proportional to 14t^2 - 14t + 3
  EXPECT_NEAR(rows[0].largest_zero_value, (7 + std::sqrt(7.0)) / 14, 1e-12);
  EXPECT_NEAR(rows[0].lower_bound, 0.9330127018922193, 1e-15);
  EXPECT_NEAR(rows[0].upper_bound, 0.75 + std::sqrt(0.5), 1e-15);
  EXPECT_LT(rows[0].lower_bound, rows[0].upper_bound);
}

TEST(ConvergenceTable, RootsInsideUnitInterval) {
  for (long k : {2, 3}) {
    for (Rational eps : {Q(1, 4), Q(1, 3), Q(1, 2)}) {
      if (eps > 1 - ratio(1, k)) continue;
      for (long d = 1; d <= 12; ++d) {
        long m = block_size(k, eps, d);
        QPoly p = block_restriction_poly(m, k, d);
        EXPECT_TRUE(is_real_rooted(p));
        EXPECT_EQ(real_root_count(p, Q(-1, 1000), Q(1)), d);
        // beta = m - d < 0 once eps > 1/k, which puts d - m roots at t = 0
        if (eps <= ratio(1, k)) {
          EXPECT_NE(sign_at(p, Q(0L)), 0);
          EXPECT_NE(sign_at(p, Q(1)), 0);
        } else if (m < d) {
          EXPECT_EQ(sign_at(p, Q(0L)), 0);
        }
      }
    }
  }
}

TEST(ConvergenceTable, ErrorShrinks) {
  auto rows = convergence_table(2, Q(1, 4), {20, 200});
  EXPECT_LT(rows[1].error(), rows[0].error());
  for (const auto& r : rows) {
    EXPECT_GT(r.largest_zero_value, 0);
    EXPECT_LT(r.largest_zero_value, 1);
  }
}

TEST(ConvergenceTable, RejectsLargeEps) {
  EXPECT_THROW(convergence_table(2, Q(3, 4), {2}), Error);
  EXPECT_THROW(convergence_table(2, Q(0L), {2}), Error);
}

TEST(ConvergenceTable, Csv) {
  auto csv = sharpness_csv(convergence_table(2, Q(1, 4), {2, 3}));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "d,m,alpha,beta,largest_zero,limit,lower_bound,upper_bound");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}
