#include "dcesim/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "dcesim/errors.hpp"

namespace dce {

namespace {

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int i = 0; i < n_modes; ++i) {
        J(2 * i, 2 * i + 1) = 1.0;
        J(2 * i + 1, 2 * i) = -1.0;
    }
    return J;
}

void check_pair_state(const CovarianceState& s) {
    if (s.mode_count() != 2)
        throw ConfigError("entanglement reports require a two-mode state");
}

/// Roots of x^2 - S x + P = 0 (both real nonnegative), evaluated stably.
std::pair<double, double> stable_quadratic_roots(double S, double P, bool& clamped) {
    double t = 4.0 * P / (S * S);
    if (t > 1.0 + 1e-9)
        throw NumericalError("invalid covariance: negative discriminant in symplectic spectrum");
    if (t > 1.0) {
        t = 1.0;
        clamped = true;
    }
    double root = std::sqrt(1.0 - t);
    double hi = S * (1.0 + root) / 2.0;
    double lo = (hi > 0.0) ? P / hi : 0.0;
    return {lo, hi};
}

} // namespace

int CovarianceState::index_of(const std::string& label) const {
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == label) return static_cast<int>(i);
    throw ConfigError("mode label '" + label + "' is not in the state basis");
}

CovarianceState vacuum_state(const std::vector<std::string>& labels) {
    CovarianceState s;
    s.basis = labels;
    const int d = 2 * static_cast<int>(labels.size());
    s.displacement = Eigen::VectorXd::Zero(d);
    s.covariance = 0.5 * Eigen::MatrixXd::Identity(d, d);
    return s;
}

CovarianceState extend_with_vacuum(const CovarianceState& state,
                                   const std::vector<std::string>& labels) {
    CovarianceState s;
    s.basis = state.basis;
    s.basis.insert(s.basis.end(), labels.begin(), labels.end());
    const int d0 = 2 * state.mode_count();
    const int d = 2 * s.mode_count();
    s.displacement = Eigen::VectorXd::Zero(d);
    s.displacement.head(d0) = state.displacement;
    s.covariance = 0.5 * Eigen::MatrixXd::Identity(d, d);
    s.covariance.topLeftCorner(d0, d0) = state.covariance;
    return s;
}

CovarianceState initial_tmsv(double r, const std::string& mode_p, const std::string& mode_s) {
    if (r < 0.0) throw ConfigError("squeezing parameter r must be >= 0");
    CovarianceState s = vacuum_state({mode_p, mode_s});
    double c = std::cosh(2.0 * r) / 2.0;
    double h = std::sinh(2.0 * r) / 2.0;
    s.covariance(0, 0) = s.covariance(1, 1) = c;
    s.covariance(2, 2) = s.covariance(3, 3) = c;
    s.covariance(0, 2) = s.covariance(2, 0) = h;
    s.covariance(1, 3) = s.covariance(3, 1) = -h;
    return s;
}

CovarianceState propagate(const CovarianceState& state, const BogoliubovTransform& transform,
                          const std::vector<std::string>& acting_labels,
                          const PropagateOptions& opts) {
    const int nt = static_cast<int>(transform.modes.size());
    if (static_cast<int>(acting_labels.size()) != nt)
        throw ConfigError("acting mode labels must match the transform's mode set");
    if (transform.symplectic_defect > opts.defect_tol)
        throw NumericalError("transform fails the symplectic identity beyond tolerance (defect " +
                             std::to_string(transform.symplectic_defect) + ")");

    const int nm = state.mode_count();
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * nm, 2 * nm);
    std::vector<int> pos(nt);
    for (int i = 0; i < nt; ++i) pos[i] = state.index_of(acting_labels[i]);

    for (int a = 0; a < nt; ++a) {
        for (int b = 0; b < nt; ++b) {
            std::complex<double> ap = transform.alpha(a, b) + transform.beta(a, b);
            std::complex<double> am = transform.alpha(a, b) - transform.beta(a, b);
            S(2 * pos[a], 2 * pos[b]) = ap.real();
            S(2 * pos[a], 2 * pos[b] + 1) = -ap.imag();
            S(2 * pos[a] + 1, 2 * pos[b]) = am.imag();
            S(2 * pos[a] + 1, 2 * pos[b] + 1) = am.real();
        }
    }

    CovarianceState out;
    out.basis = state.basis;
    out.displacement = S * state.displacement;
    out.covariance = S * state.covariance * S.transpose();

    if (transform.tail_mass.size() == nt) {
        // exact diagonal closure from extended row sums (in-modes beyond the
        // window are vacuum; their q/p contributions are equal and uncorrelated)
        for (int a = 0; a < nt; ++a) {
            out.covariance(2 * pos[a], 2 * pos[a]) += 0.5 * transform.tail_mass(a);
            out.covariance(2 * pos[a] + 1, 2 * pos[a] + 1) += 0.5 * transform.tail_mass(a);
        }
    } else if (opts.vacuum_completion) {
        // orthogonal-map closure: exact when beta == 0
        Eigen::MatrixXd R = Eigen::MatrixXd::Identity(2 * nm, 2 * nm) - S * S.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (R + R.transpose()));
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
        out.covariance +=
            0.5 * es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    }
    return out;
}

CovarianceState reduce(const CovarianceState& state, const std::string& mode_a,
                       const std::string& mode_b) {
    int ia = state.index_of(mode_a);
    int ib = state.index_of(mode_b);
    CovarianceState out;
    out.basis = {mode_a, mode_b};
    out.displacement.resize(4);
    out.covariance.resize(4, 4);
    std::array<int, 4> rows{2 * ia, 2 * ia + 1, 2 * ib, 2 * ib + 1};
    for (int i = 0; i < 4; ++i) {
        out.displacement(i) = state.displacement(rows[i]);
        for (int j = 0; j < 4; ++j) out.covariance(i, j) = state.covariance(rows[i], rows[j]);
    }
    return out;
}

double entropy_f(double x) {
    if (x < 1.0 - 1e-9) throw NumericalError("entropy_f: argument below 1 (unphysical state)");
    double a = (x + 1.0) / 2.0;
    double b = (x - 1.0) / 2.0;
    double term_a = a * std::log2(a);
    double term_b = (b > 0.0) ? b * std::log2(b) : 0.0; // b log b -> 0 at purity
    return term_a - term_b;
}

EntanglementReport entanglement_report(const CovarianceState& pair_state) {
    check_pair_state(pair_state);
    const Eigen::MatrixXd& V = pair_state.covariance;
    Eigen::Matrix2d A = V.block<2, 2>(0, 0);
    Eigen::Matrix2d B = V.block<2, 2>(2, 2);
    Eigen::Matrix2d C = V.block<2, 2>(0, 2);
    double detA = A.determinant();
    double detB = B.determinant();
    double detC = C.determinant();
    double detV = V.determinant();

    EntanglementReport rep;

    // PT spectrum: nu^2 solves x^2 - Sigma x + det V with Sigma flipping detC
    double Sigma = detA + detB - 2.0 * detC;
    bool clamped = false;
    auto [nu2_lo, nu2_hi] = stable_quadratic_roots(Sigma, detV, clamped);
    (void)nu2_hi;
    if (nu2_lo < -1e-12) throw NumericalError("invalid covariance: negative PT eigenvalue");
    rep.nu_minus = std::sqrt(std::max(nu2_lo, 0.0));
    rep.clamped = clamped;
    double two_nu = 2.0 * rep.nu_minus;
    rep.log_negativity = (two_nu < 1.0 && two_nu > 0.0) ? -std::log2(two_nu) : 0.0;

    // symplectic spectrum of V itself (Delta keeps the detC sign)
    double Delta = detA + detB + 2.0 * detC;
    bool clamped2 = false;
    auto [e2_lo, e2_hi] = stable_quadratic_roots(Delta, detV, clamped2);
    rep.eta_minus = 2.0 * std::sqrt(std::max(e2_lo, 0.0)); // of 2V
    rep.eta_plus = 2.0 * std::sqrt(std::max(e2_hi, 0.0));
    if (rep.eta_minus < 1.0 - 1e-6)
        throw NumericalError("unphysical state: symplectic eigenvalue of 2V below 1");

    double Ia = entropy_f(2.0 * std::sqrt(std::max(detA, 0.25)));
    double Ib = entropy_f(2.0 * std::sqrt(std::max(detB, 0.25)));
    double I = Ia + Ib - entropy_f(std::max(rep.eta_minus, 1.0)) -
               entropy_f(std::max(rep.eta_plus, 1.0));
    rep.mutual_information = (I > 0.0) ? I : 0.0;
    return rep;
}

EntanglementReport log_negativity(const CovarianceState& pair_state) {
    return entanglement_report(pair_state);
}

EntanglementReport mutual_information(const CovarianceState& pair_state) {
    return entanglement_report(pair_state);
}

double photon_number(const CovarianceState& state, const std::string& mode) {
    int i = state.index_of(mode);
    double vqq = state.covariance(2 * i, 2 * i);
    double vpp = state.covariance(2 * i + 1, 2 * i + 1);
    double dq = state.displacement(2 * i);
    double dp = state.displacement(2 * i + 1);
    return (vqq + vpp - 1.0) / 2.0 + (dq * dq + dp * dp) / 2.0;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& V) {
    if (V.rows() != V.cols() || V.rows() % 2 != 0)
        throw ConfigError("covariance matrix must be square with even dimension");
    if (!V.isApprox(V.transpose(), 1e-9))
        throw ConfigError("covariance matrix must be symmetric");
    const int n = static_cast<int>(V.rows()) / 2;
    Eigen::MatrixXd M = symplectic_form(n) * V;
    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolve failed");
    std::vector<double> moduli(2 * n);
    for (int i = 0; i < 2 * n; ++i) moduli[i] = std::abs(es.eigenvalues()(i));
    std::sort(moduli.begin(), moduli.end());
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = 0.5 * (moduli[2 * i] + moduli[2 * i + 1]);
    return out;
}

} // namespace dce
