#include "dcesim/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcesim/errors.hpp"

namespace dce::special {

namespace {

bool is_nonpositive_integer(double x, double eps = 1e-9) {
    return x < 0.5 && std::abs(x - std::round(x)) < eps;
}

// Double-double arithmetic (Dekker/Knuth) for the cancellation-prone series.
struct DD {
    double hi = 0.0, lo = 0.0;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return two_sum(s.hi, lo);
}

inline DD dd_mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, double b) {
    double q1 = a.hi / b;
    DD p = two_prod(q1, b);
    double r = ((a.hi - p.hi) - p.lo + a.lo) / b;
    return two_sum(q1, r);
}

struct SeriesSetup {
    double scale_log = 0.0;
    double first_term = 0.0; // scaled t_{k_start}
    int k_start = 0;
    bool zero = false;
};

// The regularized series sum_k (a)_k (b)_k z^k / (Gamma(c+k) k!). For
// nonpositive-integer c the first k0 = 1-c terms vanish through 1/Gamma;
// the series restarts at k0 where Gamma(c+k0) = 1.
SeriesSetup series_setup(double a, double b, double c, double z) {
    SeriesSetup s;
    if (is_nonpositive_integer(c)) {
        int k0 = static_cast<int>(std::round(1.0 - c));
        double lt = 0.0;
        int sg = 1;
        for (int i = 0; i < k0; ++i) {
            double fa = a + i, fb = b + i;
            if (fa == 0.0 || fb == 0.0) {
                s.zero = true;
                return s;
            }
            lt += std::log(std::abs(fa)) + std::log(std::abs(fb)) + std::log(z) - std::log1p(i);
            if (fa < 0) sg = -sg;
            if (fb < 0) sg = -sg;
        }
        s.scale_log = lt;
        s.first_term = sg;
        s.k_start = k0;
    } else {
        auto lg = log_gamma_signed(c);
        s.scale_log = -lg.log_abs;
        s.first_term = static_cast<double>(lg.sign); // t_0 = 1/Gamma(c), scaled
    }
    return s;
}

struct SeriesResult {
    double sum = 0.0;
    double scale_log = 0.0;
    double peak = 0.0;
    bool converged = false;
};

SeriesResult sum_series_double(double a, double b, double c, double z, const SeriesSetup& setup,
                               int irregular_until) {
    SeriesResult r;
    r.scale_log = setup.scale_log;
    double term = setup.first_term;
    r.sum = term;
    r.peak = std::abs(term);
    int k = setup.k_start;
    for (int iter = 0; iter < kHypMaxIter; ++iter) {
        term *= (a + k) * (b + k) * z / ((c + k) * (k + 1.0));
        ++k;
        if (term == 0.0) {
            r.converged = true;
            return r;
        }
        r.sum += term;
        r.peak = std::max(r.peak, std::abs(term));
        double as = std::max(std::abs(r.sum), r.peak);
        if (as > 1e120) {
            double sft = std::log(as);
            r.scale_log += sft;
            double f = std::exp(-sft);
            r.sum *= f;
            term *= f;
            r.peak *= f;
        }
        if (k > irregular_until && std::abs(term) < kHypTailTol * std::abs(r.sum)) {
            r.converged = true;
            return r;
        }
    }
    return r;
}

// Extended-precision pass with exact integer term factors:
// (a+k)(b+k) = (pa + k q)(pb + k q) / q^2, all numerators exact in double.
SeriesResult sum_series_dd(long pa, long pb, long c_int, long q, double z,
                           const SeriesSetup& setup, int irregular_until) {
    SeriesResult r;
    r.scale_log = setup.scale_log;
    DD term{setup.first_term, 0.0};
    DD sum = term;
    r.peak = std::abs(term.hi);
    int k = setup.k_start;
    const double q2 = static_cast<double>(q) * q;
    for (int iter = 0; iter < kHypMaxIter; ++iter) {
        double fa = static_cast<double>(pa + static_cast<long>(k) * q);
        double fb = static_cast<double>(pb + static_cast<long>(k) * q);
        term = dd_mul(term, fa);
        term = dd_mul(term, fb);
        term = dd_mul(term, z);
        term = dd_div(term, q2 * (c_int + k) * (k + 1.0));
        ++k;
        if (term.hi == 0.0) {
            r.sum = sum.hi;
            r.converged = true;
            return r;
        }
        sum = dd_add(sum, term);
        r.peak = std::max(r.peak, std::abs(term.hi));
        double as = std::max(std::abs(sum.hi), r.peak);
        if (as > 1e120) {
            double sft = std::log(as);
            r.scale_log += sft;
            double f = std::exp(-sft);
            sum = dd_mul(sum, f);
            term = dd_mul(term, f);
            r.peak *= f;
        }
        if (k > irregular_until && std::abs(term.hi) < kHypTailTol * std::abs(sum.hi)) {
            r.sum = sum.hi;
            r.converged = true;
            return r;
        }
    }
    r.sum = sum.hi;
    return r;
}

SignedLog finish(const SeriesResult& r) {
    if (!r.converged)
        throw NumericalError("hyp2f1: series did not converge within iteration cap");
    if (r.sum == 0.0) return {0.0, 0};
    return {r.scale_log + std::log(std::abs(r.sum)), r.sum > 0 ? 1 : -1};
}

} // namespace

double SignedLog::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

SignedLog log_gamma_signed(double x) {
    if (is_nonpositive_integer(x)) return {0.0, 0};
    if (x > 0) return {std::lgamma(x), 1};
    // Gamma alternates sign between consecutive negative integers:
    // positive on (-2,-1), negative on (-1,0), ...
    int sign = (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
    return {std::lgamma(x), sign};
}

double reciprocal_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    auto lg = log_gamma_signed(x);
    return lg.sign * std::exp(-lg.log_abs);
}

SignedLog hyp2f1_regularized_log(double a, double b, double c, double z) {
    if (z < 0.0 || z >= 1.0)
        throw NumericalError("hyp2f1: argument z must lie in [0,1), got z=" + std::to_string(z));
    if (z == 0.0) {
        double r = reciprocal_gamma(c);
        if (r == 0.0) return {0.0, 0};
        return {std::log(std::abs(r)), r > 0 ? 1 : -1};
    }
    SeriesSetup setup = series_setup(a, b, c, z);
    if (setup.zero) return {0.0, 0};
    const int irregular =
        static_cast<int>(std::ceil(std::max({std::abs(a), std::abs(b), std::abs(c), 1.0}))) + 2;
    return finish(sum_series_double(a, b, c, z, setup, irregular));
}

SignedLog hyp2f1_regularized_rational_log(long pa, long pb, long c_int, long q, double z) {
    double a = static_cast<double>(pa) / q;
    double b = static_cast<double>(pb) / q;
    double c = static_cast<double>(c_int);
    if (z < 0.0 || z >= 1.0)
        throw NumericalError("hyp2f1: argument z must lie in [0,1), got z=" + std::to_string(z));
    if (z == 0.0) {
        double r = reciprocal_gamma(c);
        if (r == 0.0) return {0.0, 0};
        return {std::log(std::abs(r)), r > 0 ? 1 : -1};
    }
    SeriesSetup setup = series_setup(a, b, c, z);
    if (setup.zero) return {0.0, 0};
    const int irregular =
        static_cast<int>(std::ceil(std::max({std::abs(a), std::abs(b), std::abs(c), 1.0}))) + 2;

    SeriesResult r = sum_series_double(a, b, c, z, setup, irregular);
    bool cancelling =
        r.converged && (r.sum == 0.0 || r.peak / std::max(std::abs(r.sum), 1e-300) > 1e3);
    if (!cancelling) return finish(r);
    return finish(sum_series_dd(pa, pb, c_int, q, z, setup, irregular));
}

} // namespace dce::special
