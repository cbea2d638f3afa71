#pragma once

namespace dce::special {

/// Value carried as sign * exp(log_abs). sign == 0 encodes an exact zero
/// (log_abs is then meaningless).
struct SignedLog {
    double log_abs;
    int sign;

    double value() const;
};

/// log|Gamma(x)| with sign. Nonpositive integer x gives sign 0 (pole of
/// Gamma == zero of 1/Gamma, which is how it is consumed here).
SignedLog log_gamma_signed(double x);

/// 1/Gamma(x), exactly 0 at the poles.
double reciprocal_gamma(double x);

/// Regularized Gauss hypergeometric 2F1(a,b;c;z)/Gamma(c), as a SignedLog.
/// Entire in c, so nonpositive-integer c is fine. Requires 0 <= z < 1.
/// Series evaluation with term recurrence; iteration cap and relative tail
/// bound below.
SignedLog hyp2f1_regularized_log(double a, double b, double c, double z);

/// Same function for a = pa/q, b = pb/q, c integer. Near-diagonal
/// coefficients at large mode index cancel catastrophically in double
/// precision; the exact rational parameters allow an extended-precision
/// (double-double) pass with exact integer term factors, engaged
/// automatically when cancellation is detected.
SignedLog hyp2f1_regularized_rational_log(long pa, long pb, long c_int, long q, double z);

inline constexpr int kHypMaxIter = 100000;
inline constexpr double kHypTailTol = 1e-14;

} // namespace dce::special
