#pragma once

namespace clv::stats {

// Convergence tolerance of the continued-fraction evaluation.
inline constexpr double kContinuedFractionTolerance = 1e-14;

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
///
/// Modified Lentz evaluation of the standard continued fraction, applied
/// directly when x < (a + 1) / (a + b + 2) and through the reflection
/// I_x(a, b) = 1 - I_{1-x}(b, a) otherwise. Throws InvalidArgument on bad
/// parameters and DegenerateInput if the fraction fails to converge.
double regularized_incomplete_beta(double x, double a, double b);

// Upper tail of the standard normal.
double normal_sf(double z);

// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided(double t, double df);

// P(F >= f) for the F distribution with (df1, df2) degrees of freedom.
double f_sf(double f, double df1, double df2);

}  // namespace clv::stats
