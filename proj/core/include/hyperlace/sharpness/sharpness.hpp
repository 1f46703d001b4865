#pragma once

#include <string>
#include <vector>

#include "hyperlace/common/surd.hpp"
#include "hyperlace/unipoly/jacobi.hpp"

namespace hyperlace {

/// e_d(t*1 - e_1 - ... - e_m) on mk variables, expanded as
/// sum_j C(m(k-1), j) C(m, d-j) (t-1)^(d-j) t^j. Needs d <= mk.
QPoly block_restriction_poly(long m, long k, long d);

struct JacobiIdentityCheck {
  long m = 0, k = 0, d = 0;
  Rational alpha, beta;  // mk - m - d, m - d
  QPoly block;           // block_restriction_poly(m, k, d)
  QPoly jacobi;          // normalization * P_d^{(alpha,beta)}(2t - 1)
  bool equal = false;
};

/// Compares the block restriction with the shifted Jacobi polynomial
/// coefficientwise. `normalization` scales the Jacobi side; the identity
/// holds with 1 (the standard P_d(1) = C(d + alpha, d)).
JacobiIdentityCheck jacobi_identity_check(long m, long k, long d, const Rational& normalization = Rational(1));

/// Limiting largest zero b^2 - a^2 + sqrt((a^2 + b^2 - 1)^2 - 4a^2b^2) of
/// P_d^{(alpha_d,beta_d)}(u) when alpha_d/(alpha_d+beta_d+2d) -> a and
/// beta_d/(alpha_d+beta_d+2d) -> b, plus its image t = (1 + u)/2.
struct AsymptoticLimit {
  QuadSurd classical;
  QuadSurd t_form;
};

/// Throws InvalidArgument when the radicand is negative.
AsymptoticLimit asymptotic_limit(const Rational& a, const Rational& b);

/// 1/k + eps(k-2)/k + 2 sqrt(k-1)/k sqrt(eps - eps^2): the limit for the
/// block partition and the lower bound no (m, d)-independent bound can beat.
QuadSurd sharpness_lower_bound(long k, const Rational& eps);
/// 1/k + eps + 2 sqrt(eps)/sqrt(k): the large-m partition bound.
QuadSurd large_m_upper_bound(long k, const Rational& eps);

struct SharpnessRow {
  long d = 0;
  long m = 0;
  Rational alpha, beta;
  RootBracket largest_zero;  // of P_d^{(alpha,beta)}(2t - 1)
  double largest_zero_value = 0;
  double limit = 0;
  double lower_bound = 0;
  double upper_bound = 0;
  double error() const;  // |largest_zero - limit|
};

/// m(d) = ceil(d / (eps k)).
long block_size(long k, const Rational& eps, long d);

/// One row per d (in the given order). Needs k >= 2 and 0 < eps <= 1 - 1/k.
/// Rows are computed concurrently.
std::vector<SharpnessRow> convergence_table(long k, const Rational& eps, const std::vector<long>& ds,
                                            const Rational& tol = default_root_tol());

/// CSV with header d,m,alpha,beta,largest_zero,limit,lower_bound,upper_bound.
std::string sharpness_csv(const std::vector<SharpnessRow>& rows);

}  // namespace hyperlace
