#pragma once

namespace satev {

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
// Series expansion for x < a + 1, Lentz continued fraction otherwise.
double regularized_gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double regularized_beta(double a, double b, double x);

// Upper-tail probability of a chi-square variate: Q(df/2, x/2).
// Throws InvalidDf for df < 1 and ValidationError for x < 0 or non-finite x.
double chi_square_sf(double x, int df);

// Upper-tail probability of a Student-t variate with df degrees of freedom.
// Throws InvalidDf for df < 1. sf(-t) + sf(t) == 1 by construction.
double student_t_sf(double t, int df);

} // namespace satev
