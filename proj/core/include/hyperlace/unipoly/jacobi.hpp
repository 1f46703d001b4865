#pragma once

#include <vector>

#include "hyperlace/unipoly/roots.hpp"

namespace hyperlace {

/// Jacobi polynomial P_d^{(alpha,beta)}(u) with the standard normalization
/// P_d(1) = C(d + alpha, d). Uses the three-term recurrence; when one of its
/// leading factors vanishes (possible for alpha + beta a negative integer)
/// the explicit binomial sum is used instead.
QPoly jacobi_poly(int d, const Rational& alpha, const Rational& beta);
/// Explicit sum P_d(u) = sum_s C(d+alpha, d-s) C(d+beta, s) ((u-1)/2)^s ((u+1)/2)^(d-s).
QPoly jacobi_poly_explicit(int d, const Rational& alpha, const Rational& beta);
/// P_d^{(alpha,beta)}(2t - 1), the form supported on [0, 1].
QPoly jacobi_poly_shifted(int d, const Rational& alpha, const Rational& beta);

/// Approximate zeros of P_d^{(alpha,beta)}(u), ascending, from the
/// eigenvalues of the symmetric Jacobi matrix. Needs alpha, beta > -1; returns
/// an empty vector otherwise.
std::vector<double> jacobi_zeros_approx(int d, double alpha, double beta);

/// Largest zero of P_d^{(alpha,beta)}(2t - 1), bracketed to width tol. High
/// degrees are isolated from the Jacobi-matrix approximations with an exact
/// sign-alternation certificate.
RootBracket jacobi_largest_zero_shifted(int d, const Rational& alpha, const Rational& beta,
                                        const Rational& tol = default_root_tol());

/// Generalized binomial coefficient C(x, j) for rational x and integer j >= 0.
Rational binomial(const Rational& x, long j);

}  // namespace hyperlace
