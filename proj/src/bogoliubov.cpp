#include "dcesim/bogoliubov.hpp"

#include <cmath>

#include "dcesim/errors.hpp"
#include "dcesim/special.hpp"

namespace dce {

using special::SignedLog;

BogoliubovTransform BogoliubovTransform::identity(const std::vector<ModeIndex>& modes) {
    BogoliubovTransform t;
    const auto n = static_cast<Eigen::Index>(modes.size());
    t.alpha = Eigen::MatrixXcd::Identity(n, n);
    t.beta = Eigen::MatrixXcd::Zero(n, n);
    t.modes = modes;
    return t;
}

int BogoliubovTransform::index_of(const ModeIndex& m) const {
    for (size_t i = 0; i < modes.size(); ++i)
        if (modes[i] == m) return static_cast<int>(i);
    throw ConfigError("mode " + m.label() + " is not in the transform's mode set");
}

double BogoliubovTransform::computed_window_defect() const {
    double worst = 0.0;
    for (Eigen::Index n = 0; n < alpha.rows(); ++n) {
        double s = alpha.row(n).squaredNorm() - beta.row(n).squaredNorm();
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

double BogoliubovTransform::vacuum_photon_number(const ModeIndex& m) const {
    return beta.row(index_of(m)).squaredNorm();
}

TwoModeRates two_mode_rates(const CavityGeometry& geom, const ModeIndex& s, const ModeIndex& c) {
    double ws = mode_frequency(geom, s);
    double wc = mode_frequency(geom, c);
    double w1 = geom.fundamental_frequency();
    double g = coupling_entry(s, c, CouplingVariant::Shaker);
    if (g == 0.0)
        throw ConfigError("modes " + s.label() + " and " + c.label() + " are not coupled");
    if (std::abs(ws - wc) < kResonanceTolFactor * w1)
        throw NumericalError("two-mode resonance requires distinct frequencies; "
                             "omega_s == omega_c is outside the two-mode solution's domain");
    TwoModeRates r;
    double base = std::abs(g) / (2.0 * w1 * std::sqrt(ws * wc));
    r.gamma_minus = (ws + wc) * std::abs(ws - wc) * base;
    r.gamma_plus = std::abs(ws - wc) * (ws + wc) * base;
    // rotation orientation of the difference case solves the reduced system
    // d alpha_s = +|A| alpha_c when the coupling from c into s is positive
    r.rotation = (g * (ws - wc) > 0) ? 1 : -1;
    r.mode_s = s;
    r.mode_c = c;
    return r;
}

BogoliubovTransform two_mode_sum_transform(const TwoModeRates& rates, double tau) {
    if (tau < 0.0) throw ConfigError("tau must be >= 0");
    auto t = BogoliubovTransform::identity({rates.mode_s, rates.mode_c});
    double ch = std::cosh(rates.gamma_minus * tau);
    double sh = std::sinh(rates.gamma_minus * tau);
    t.alpha(0, 0) = ch;
    t.alpha(1, 1) = ch;
    t.beta(0, 1) = sh;
    t.beta(1, 0) = sh;
    t.tau = tau;
    return t;
}

BogoliubovTransform two_mode_difference_transform(const TwoModeRates& rates, double tau) {
    if (tau < 0.0) throw ConfigError("tau must be >= 0");
    auto t = BogoliubovTransform::identity({rates.mode_s, rates.mode_c});
    double co = std::cos(rates.gamma_plus * tau);
    double si = std::sin(rates.gamma_plus * tau) * rates.rotation;
    t.alpha(0, 0) = co;
    t.alpha(1, 1) = co;
    t.alpha(0, 1) = si;
    t.alpha(1, 0) = -si;
    t.tau = tau;
    return t;
}

// ---------------------------------------------------------------------------
// 1D resonant solution through the rho coefficients
// ---------------------------------------------------------------------------

namespace {

double kappa_of(int q, double tau_tilde) {
    if (q < 1) throw ConfigError("q must be >= 1");
    if (tau_tilde < 0.0) throw ConfigError("tau_tilde must be >= 0");
    double kap = std::tanh(q * tau_tilde);
    if (kap * kap > kKappaSqCap)
        throw NumericalError("tau_tilde out of range: kappa^2 = " + std::to_string(kap * kap) +
                             " exceeds the series cap " + std::to_string(kKappaSqCap));
    return kap;
}

double rho_entry_kappa(int q, double kappa, int m_signed, int n_col) {
    if (n_col < 1) throw ConfigError("rho column index must be >= 1");
    if (m_signed == 0) throw ConfigError("rho row index must be nonzero");
    // class decomposition n = j + nn q, j in 1..q (j = q stands for class 0)
    int j = ((n_col - 1) % q) + 1;
    int nn = (n_col - j) / q;
    if (((m_signed - j) % q + q) % q != 0) return 0.0; // residue-class selection
    int mm = (m_signed - j) / q;

    if (kappa == 0.0) return (m_signed == n_col) ? 1.0 : 0.0;

    double jq = static_cast<double>(j) / q;
    // 1/Gamma(1+m+j/q): pole => exact zero (class-0 columns never reach
    // negative rows; no photon pairs within that class)
    auto lg_den = special::log_gamma_signed(1.0 + mm + jq);
    if (lg_den.sign == 0) return 0.0;

    // F(nn + j/q, -mm - j/q; 1 + nn - mm; kappa^2) / Gamma(1 + nn - mm)
    SignedLog f = special::hyp2f1_regularized_rational_log(
        static_cast<long>(nn) * q + j, -(static_cast<long>(mm) * q + j), 1 + nn - mm, q,
        kappa * kappa);
    if (f.sign == 0) return 0.0;

    auto lg_num = special::log_gamma_signed(1.0 + nn + jq);
    int sigma = (q % 2 == 0) ? 1 : -1;
    int sign = lg_num.sign * lg_den.sign * f.sign;
    if (sigma < 0 && ((nn - mm) % 2 != 0)) sign = -sign;

    double log_abs = lg_num.log_abs - lg_den.log_abs + (nn - mm) * std::log(kappa) + f.log_abs;
    if (log_abs < -700.0) return 0.0;
    return sign * std::exp(log_abs);
}

} // namespace

double rho_entry(int q, double tau_tilde, int m_signed, int n_col) {
    return rho_entry_kappa(q, kappa_of(q, tau_tilde), m_signed, n_col);
}

double RhoCoefficients::rho(int m_signed, int n_col) const {
    if (n_col < 1 || n_col > truncation || m_signed == 0 || std::abs(m_signed) > truncation)
        throw ConfigError("rho index outside the stored window");
    if (m_signed > 0) return up(m_signed - 1, n_col - 1);
    return down(-m_signed - 1, n_col - 1);
}

RhoCoefficients rho_coefficients(int q, double tau_tilde, int truncation) {
    if (truncation < q) throw ConfigError("truncation must be >= q");
    if (truncation > kRhoMaxTruncation)
        throw ConfigError("truncation above " + std::to_string(kRhoMaxTruncation) +
                          " exceeds the series' extended-precision range");
    RhoCoefficients rc;
    rc.q = q;
    rc.tau_tilde = tau_tilde;
    rc.kappa = kappa_of(q, tau_tilde);
    rc.sigma = (q % 2 == 0) ? 1 : -1;
    rc.truncation = truncation;
    rc.up.setZero(truncation, truncation);
    rc.down.setZero(truncation, truncation);
    for (int n = 1; n <= truncation; ++n) {
        for (int m = 1; m <= truncation; ++m) {
            rc.up(m - 1, n - 1) = rho_entry_kappa(q, rc.kappa, m, n);
            rc.down(m - 1, n - 1) = rho_entry_kappa(q, rc.kappa, -m, n);
        }
    }
    return rc;
}

RowMoments single_wall_row_moments(int q, double tau_tilde, int row, double tail_tol,
                                   int max_columns) {
    if (row < 1) throw ConfigError("row must be >= 1");
    double kap = kappa_of(q, tau_tilde);
    RowMoments rm;
    if (kap == 0.0) {
        rm.sum_alpha2 = 1.0;
        rm.columns_used = row;
        return rm;
    }
    constexpr int kBlock = 32;
    double block = 0.0;
    int block_len = 0;
    int n = 0;
    while (n < max_columns) {
        ++n;
        double up = rho_entry_kappa(q, kap, row, n);
        double dn = rho_entry_kappa(q, kap, -row, n);
        double wa = (static_cast<double>(row) / n) * up * up;
        double wb = (static_cast<double>(row) / n) * dn * dn;
        rm.sum_alpha2 += wa;
        rm.sum_beta2 += wb;
        block += wa + wb;
        if (++block_len == kBlock) {
            if (block < tail_tol) break;
            block = 0.0;
            block_len = 0;
        }
    }
    rm.columns_used = n;
    return rm;
}

BogoliubovTransform single_wall_transform(int q, double tau_tilde, int truncation,
                                          const SingleWallOptions& opts) {
    auto modes = one_d_modes(truncation);
    if (tau_tilde == 0.0) return BogoliubovTransform::identity(modes);
    RhoCoefficients rc = rho_coefficients(q, tau_tilde, truncation);
    BogoliubovTransform t;
    t.modes = modes;
    t.tau = tau_tilde;
    t.alpha.setZero(truncation, truncation);
    t.beta.setZero(truncation, truncation);
    for (int m = 1; m <= truncation; ++m) {
        for (int n = 1; n <= truncation; ++n) {
            double w = std::sqrt(static_cast<double>(m) / n);
            t.alpha(m - 1, n - 1) = w * rc.up(m - 1, n - 1);
            t.beta(m - 1, n - 1) = -w * rc.down(m - 1, n - 1);
        }
    }
    t.symplectic_defect = special::kHypTailTol;
    t.window_defect = t.computed_window_defect();

    if (opts.extend_rows) {
        t.tail_mass.setZero(truncation);
        double worst = 0.0;
        for (int m = 1; m <= truncation; ++m) {
            double win_mass =
                t.alpha.row(m - 1).squaredNorm() + t.beta.row(m - 1).squaredNorm();
            double win_id = t.alpha.row(m - 1).squaredNorm() - t.beta.row(m - 1).squaredNorm();
            if (std::abs(win_id - 1.0) < 1e-12) continue; // window already complete
            RowMoments rm = single_wall_row_moments(q, tau_tilde, m, opts.tail_tol,
                                                    opts.max_columns);
            t.tail_mass(m - 1) = std::max(0.0, rm.sum_alpha2 + rm.sum_beta2 - win_mass);
            worst = std::max(worst, std::abs(rm.identity_defect()));
        }
        t.symplectic_defect = std::max(t.symplectic_defect, worst);
    }
    return t;
}

BogoliubovTransform shaker_transform_1d(int q, double tau, int truncation) {
    if (tau < 0.0) throw ConfigError("tau must be >= 0");
    if (q % 2 == 0) {
        auto t = BogoliubovTransform::identity(one_d_modes(truncation));
        t.tau = tau;
        t.trivial_drive = true;
        return t;
    }
    return single_wall_transform(q, 2.0 * tau, truncation);
}

double fund1d_alpha_ss(int s, double tau_tilde) {
    if (s < 1) throw ConfigError("mode index must be >= 1");
    double x = 1.0 / (std::cosh(tau_tilde) * std::cosh(tau_tilde));
    double total = 0.0;
    for (int j = 1; j <= s; ++j) {
        double coeff = std::tgamma(s + j) / (std::tgamma(j + 1.0) * std::tgamma(static_cast<double>(j)) *
                                             std::tgamma(s - j + 1.0));
        if ((s - j) % 2 != 0) coeff = -coeff;
        total += coeff * std::pow(x, j);
    }
    return total;
}

SymplecticAudit audit_single_wall_identity(int q, double tau_tilde, int rows, double tail_tol,
                                           int max_columns) {
    SymplecticAudit audit;
    for (int m = 1; m <= rows; ++m) {
        RowMoments rm = single_wall_row_moments(q, tau_tilde, m, tail_tol, max_columns);
        audit.columns_used = std::max(audit.columns_used, rm.columns_used);
        audit.max_row_defect = std::max(audit.max_row_defect, std::abs(rm.identity_defect()));
    }
    return audit;
}

} // namespace dce
