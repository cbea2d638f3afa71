#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dcesim/cavity.hpp"

namespace dce {

/// Linear map a_out_n = sum_k [ alpha_nk a_in_k + conj(beta_nk) a_in_k^dag ]
/// over an ordered, truncated mode set. Rows are out modes, columns in modes.
struct BogoliubovTransform {
    Eigen::MatrixXcd alpha;
    Eigen::MatrixXcd beta;
    std::vector<ModeIndex> modes;
    double tau = 0.0;

    /// Solver-intrinsic defect of the row identity sum_k(|a|^2-|b|^2) = 1
    /// (integration drift, series tolerance). Truncation of an infinite mode
    /// set is reported separately in window_defect.
    double symplectic_defect = 0.0;
    /// max_n |sum_{k in window}(|alpha_nk|^2-|beta_nk|^2) - 1|; large values
    /// mean the window no longer holds the out modes' support.
    double window_defect = 0.0;
    /// Set when a trivial drive (even q) forced an identity result.
    bool trivial_drive = false;
    /// Per-out-mode quadrature mass held by in-modes beyond the window
    /// (computed by extended row sums when requested). Propagation adds
    /// tail_mass/2 to both diagonal quadrature entries of the mode.
    Eigen::VectorXd tail_mass;

    static BogoliubovTransform identity(const std::vector<ModeIndex>& modes);
    int index_of(const ModeIndex& m) const;
    double computed_window_defect() const;
    /// Photon number of out mode `m` for vacuum input: sum_k |beta_mk|^2.
    double vacuum_photon_number(const ModeIndex& m) const;
};

/// Dimensionless two-mode resonance rates in slow time
/// tau = epsilon * omega_1 * t / (2 Lx):
///   gamma_minus = Omega_sum  |g_sc| |omega_s - omega_c| / (2 omega_1 sqrt(ws wc))
///   gamma_plus  = Omega_diff |g_sc| (omega_s + omega_c) / (2 omega_1 sqrt(ws wc))
struct TwoModeRates {
    double gamma_minus = 0.0;
    double gamma_plus = 0.0;
    /// Orientation of the difference-resonance rotation; follows the sign of
    /// the coupling between the pair. Pure mode-phase convention.
    int rotation = 1;
    ModeIndex mode_s, mode_c;
};

TwoModeRates two_mode_rates(const CavityGeometry& geom, const ModeIndex& s, const ModeIndex& c);

/// Omega = omega_s + omega_c: two-mode squeezing,
///   alpha = cosh(gm tau) I, beta_sc = beta_cs = sinh(gm tau).
BogoliubovTransform two_mode_sum_transform(const TwoModeRates& rates, double tau);

/// Omega = |omega_s - omega_c|: beamsplitter rotation, beta = 0,
///   alpha = [[cos, r sin], [-r sin, cos]](gp tau) with r = rates.rotation.
BogoliubovTransform two_mode_difference_transform(const TwoModeRates& rates, double tau);

/// Coefficients rho^{(n)}_m of the resonantly driven single-wall 1D cavity at
/// slow time tau_tilde = epsilon omega_1 t / Lx, Omega = q omega_1:
///   rho^{(j+nq)}_{j+mq} = Gamma(1+n+j/q) (sigma kappa)^{n-m}
///                         / (Gamma(1+m+j/q) Gamma(1+n-m))
///                         * 2F1(n+j/q, -m-j/q; 1+n-m; kappa^2)
/// zero off the residue class, with sigma = (-1)^q, kappa = tanh(q tau_tilde).
/// Row index m is signed: negative rows feed the beta coefficients.
///
/// Gamma(1+n-m) poles (m-row above the n-column) are finite limits, evaluated
/// through the regularized 2F1; only the Gamma(1+m+j/q) poles (integer class,
/// negative row) give exact zeros.
struct RhoCoefficients {
    int q = 1;
    double tau_tilde = 0.0;
    double kappa = 0.0;
    int sigma = -1;
    int truncation = 0;
    Eigen::MatrixXd up;   // rho(m, n), m in 1..K (row out), n in 1..K (col in)
    Eigen::MatrixXd down; // rho(-m, n)

    double rho(int m_signed, int n_col) const;
};

RhoCoefficients rho_coefficients(int q, double tau_tilde, int truncation);

/// Single evaluation of the rho formula, any indices (used by the identity
/// audit to extend column sums past the stored window).
double rho_entry(int q, double tau_tilde, int m_signed, int n_col);

/// kappa^2 is capped at 1 - 1e-6; beyond that the series is refused.
inline constexpr double kKappaSqCap = 1.0 - 1e-6;
/// Largest mode window the double-double series rescue still covers.
inline constexpr int kRhoMaxTruncation = 96;

/// Row sums of the solution extended over all in-modes until the tail falls
/// below tail_tol (the alpha and beta supports are disjoint for odd q, so
/// these two masses determine both quadrature variances).
struct RowMoments {
    double sum_alpha2 = 0.0;
    double sum_beta2 = 0.0;
    int columns_used = 0;

    double identity_defect() const { return sum_alpha2 - sum_beta2 - 1.0; }
};
RowMoments single_wall_row_moments(int q, double tau_tilde, int row, double tail_tol = 1e-10,
                                   int max_columns = 60000);

struct SingleWallOptions {
    /// Extend row sums past the window: fills tail_mass and makes
    /// symplectic_defect an extended-identity measurement.
    bool extend_rows = false;
    double tail_tol = 1e-10;
    int max_columns = 60000;
};

/// Out operators of the single-wall cavity:
///   alpha_mn = sqrt(m/n) rho^{(n)}_m,  beta_mn = -sqrt(m/n) rho^{(n)}_{-m}.
BogoliubovTransform single_wall_transform(int q, double tau_tilde, int truncation,
                                          const SingleWallOptions& opts = {});

/// Rigidly shaken 1D cavity at odd harmonic q: identical to the single-wall
/// cavity at doubled amplitude, tau_tilde = 2 tau. Even q returns identity
/// with trivial_drive set.
BogoliubovTransform shaker_transform_1d(int q, double tau, int truncation);

/// Closed-form diagonal alpha_ss for q = 1 as a function of tau_tilde.
double fund1d_alpha_ss(int s, double tau_tilde);

/// Row-identity audit with column sums extended past the window until the
/// tail is below tail_tol. Validates the rho formulas independently of any
/// fixed truncation.
struct SymplecticAudit {
    double max_row_defect = 0.0;
    int columns_used = 0;
};
SymplecticAudit audit_single_wall_identity(int q, double tau_tilde, int rows,
                                           double tail_tol = 1e-10, int max_columns = 60000);

} // namespace dce
