#include "hyperlace/unipoly/jacobi.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hyperlace/common/error.hpp"

namespace hyperlace {

Rational binomial(const Rational& x, long j) {
  require(j >= 0, ErrorCode::InvalidArgument, "binomial needs j >= 0");
  Rational out = 1;
  for (long i = 0; i < j; ++i) {
    out *= x - i;
    out /= i + 1;
  }
  return out;
}

QPoly jacobi_poly_explicit(int d, const Rational& alpha, const Rational& beta) {
  require(d >= 0, ErrorCode::InvalidArgument, "Jacobi degree must be nonnegative");
  const QPoly um = QPoly({Rational(-1, 2), Rational(1, 2)});  // (u-1)/2
  const QPoly up = QPoly({Rational(1, 2), Rational(1, 2)});   // (u+1)/2
  QPoly out;
  for (int s = 0; s <= d; ++s) {
    Rational c = binomial(alpha + d, d - s) * binomial(beta + d, s);
    if (sgn(c) == 0) continue;
    out += um.pow(s) * up.pow(d - s) * c;
  }
  return out;
}

QPoly jacobi_poly(int d, const Rational& alpha, const Rational& beta) {
  require(d >= 0, ErrorCode::InvalidArgument, "Jacobi degree must be nonnegative");
  const Rational ab = alpha + beta;
  QPoly prev = QPoly::constant(Rational(1));
  if (d == 0) return prev;
  // P_1 = (alpha + 1) + (alpha + beta + 2)(u - 1)/2
  Rational half_slope = (ab + 2) / 2;
  QPoly cur({Rational(alpha + 1 - half_slope), half_slope});
  for (int n = 2; n <= d; ++n) {
    Rational c2n = 2 * n + ab;
    Rational denom = 2 * n * (n + ab) * (c2n - 2);
    if (sgn(denom) == 0) return jacobi_poly_explicit(d, alpha, beta);
    Rational a1 = (c2n - 1) * c2n * (c2n - 2);
    Rational a0 = (c2n - 1) * (alpha * alpha - beta * beta);
    Rational b = 2 * (n + alpha - 1) * (n + beta - 1) * c2n;
    QPoly next = cur * QPoly({a0, a1}) - prev * b;
    next *= Rational(1) / denom;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

QPoly jacobi_poly_shifted(int d, const Rational& alpha, const Rational& beta) {
  return jacobi_poly(d, alpha, beta).compose_affine(Rational(2), Rational(-1));
}

std::vector<double> jacobi_zeros_approx(int d, double alpha, double beta) {
  if (d < 1 || !(alpha > -1.0) || !(beta > -1.0)) return {};
  const double ab = alpha + beta;
  Eigen::VectorXd diag(d);
  Eigen::VectorXd sub(d > 1 ? d - 1 : 0);
  for (int n = 0; n < d; ++n) {
    double c = 2.0 * n + ab;
    diag[n] = n == 0 ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (c * (c + 2.0));
  }
  for (int n = 0; n + 1 < d; ++n) {
    double c = 2.0 * n + ab;
    double num = 4.0 * (n + 1) * (n + alpha + 1) * (n + beta + 1) * (n + ab + 1);
    double den = (c + 1.0) * (c + 2.0) * (c + 2.0) * (c + 3.0);
    sub[n] = std::sqrt(num / den);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return {};
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
  for (double x : out) {
    if (!std::isfinite(x)) return {};
  }
  return out;
}

RootBracket jacobi_largest_zero_shifted(int d, const Rational& alpha, const Rational& beta,
                                        const Rational& tol) {
  require(d >= 1, ErrorCode::InvalidArgument, "largest zero needs degree >= 1");
  QPoly p = jacobi_poly_shifted(d, alpha, beta);
  auto approx = jacobi_zeros_approx(d, alpha.get_d(), beta.get_d());
  if (!approx.empty()) {
    for (double& u : approx) u = 0.5 * (u + 1.0);
    if (auto brackets = isolate_with_hints(p, approx)) {
      AlgebraicReal top(p, brackets->back());
      top.refine_to(tol);
      return {top.lo(), top.hi(), 1};
    }
  }
  return largest_root_bracket(p, tol);
}

}  // namespace hyperlace
