#include "hyperlace/sharpness/sharpness.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hyperlace/common/error.hpp"
#include "hyperlace/common/parallel.hpp"

namespace hyperlace {

QPoly block_restriction_poly(long m, long k, long d) {
  require(m >= 1 && k >= 1 && d >= 0, ErrorCode::InvalidArgument, "need m, k >= 1 and d >= 0");
  require(d <= m * k, ErrorCode::Infeasible, "need d <= mk");
  const QPoly t{Rational(0), Rational(1)};
  const QPoly t_minus_1{Rational(-1), Rational(1)};
  QPoly out;
  for (long j = 0; j <= d; ++j) {
    Rational c = binomial(Rational(m * (k - 1)), j) * binomial(Rational(m), d - j);
    if (sgn(c) == 0) continue;
    out += c * (t_minus_1.pow(static_cast<unsigned>(d - j)) * t.pow(static_cast<unsigned>(j)));
  }
  return out;
}

JacobiIdentityCheck jacobi_identity_check(long m, long k, long d, const Rational& normalization) {
  JacobiIdentityCheck r;
  r.m = m;
  r.k = k;
  r.d = d;
  r.alpha = Rational(m * k - m - d);
  r.beta = Rational(m - d);
  r.block = block_restriction_poly(m, k, d);
  r.jacobi = jacobi_poly_shifted(static_cast<int>(d), r.alpha, r.beta) * normalization;
  r.equal = r.block == r.jacobi;
  return r;
}

AsymptoticLimit asymptotic_limit(const Rational& a, const Rational& b) {
  Rational a2 = a * a, b2 = b * b;
  Rational s = a2 + b2 - 1;
  Rational radicand = s * s - 4 * a2 * b2;
  if (sgn(radicand) < 0)
    throw Error(ErrorCode::InvalidArgument, "negative radicand in the limit formula").with_witness({to_string(radicand)});
  QuadSurd u(b2 - a2, Rational(1), radicand);
  return {u, (u + Rational(1)) / Rational(2)};
}

QuadSurd sharpness_lower_bound(long k, const Rational& eps) {
  require(k >= 1, ErrorCode::InvalidArgument, "k must be positive");
  Rational kk(k);
  Rational radicand = Rational(k - 1) * (eps - eps * eps);
  require(sgn(radicand) >= 0, ErrorCode::InvalidArgument, "need 0 <= eps <= 1");
  return QuadSurd(1 / kk + eps * Rational(k - 2) / kk, 2 / kk, radicand);
}

QuadSurd large_m_upper_bound(long k, const Rational& eps) {
  require(k >= 1 && sgn(eps) >= 0, ErrorCode::InvalidArgument, "need k >= 1 and eps >= 0");
  // 2 sqrt(eps/k) = (2/k) sqrt(eps k)
  Rational kk(k);
  return QuadSurd(1 / kk + eps, 2 / kk, eps * kk);
}

double SharpnessRow::error() const { return std::abs(largest_zero_value - limit); }

long block_size(long k, const Rational& eps, long d) {
  Rational q = Rational(d) / (eps * Rational(k));
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c.get_si();
}

std::vector<SharpnessRow> convergence_table(long k, const Rational& eps, const std::vector<long>& ds,
                                            const Rational& tol) {
  require(k >= 2, ErrorCode::InvalidArgument, "k must be at least 2");
  require(sgn(eps) > 0 && eps <= 1 - ratio(1, k), ErrorCode::Infeasible, "need 0 < eps <= 1 - 1/k");
  for (long d : ds) require(d >= 1, ErrorCode::InvalidArgument, "degrees must be positive");
  Rational a = 1 - ratio(1, k) - eps;
  Rational b = ratio(1, k) - eps;
  QuadSurd limit = asymptotic_limit(a, b).t_form;
  QuadSurd lower = sharpness_lower_bound(k, eps);
  if (compare(limit, lower) != 0) fail(ErrorCode::Internal, "limit formula disagrees with the closed form");
  double limit_value = limit.to_double();
  double upper_value = large_m_upper_bound(k, eps).to_double();
  return parallel_map(ds.size(), [&](std::size_t i) {
    SharpnessRow row;
    row.d = ds[i];
    row.m = block_size(k, eps, row.d);
    row.alpha = Rational(row.m * k - row.m - row.d);
    row.beta = Rational(row.m - row.d);
    row.largest_zero = jacobi_largest_zero_shifted(static_cast<int>(row.d), row.alpha, row.beta, tol);
    row.largest_zero_value = row.largest_zero.midpoint().get_d();
    row.limit = limit_value;
    row.lower_bound = lower.to_double();
    row.upper_bound = upper_value;
    return row;
  });
}

std::string sharpness_csv(const std::vector<SharpnessRow>& rows) {
  std::ostringstream out;
  out << "d,m,alpha,beta,largest_zero,limit,lower_bound,upper_bound\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%ld,%ld,%s,%s,%.15g,%.15g,%.15g,%.15g\n", r.d, r.m, to_string(r.alpha).c_str(),
                  to_string(r.beta).c_str(), r.largest_zero_value, r.limit, r.lower_bound, r.upper_bound);
    out << buf;
  }
  return out.str();
}

}  // namespace hyperlace
