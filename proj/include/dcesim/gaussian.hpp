#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dcesim/bogoliubov.hpp"

namespace dce {

/// Gaussian state over labeled modes: displacement d and covariance V in the
/// quadrature basis R = (q_1, p_1, q_2, p_2, ...), q = (a+a^dag)/sqrt(2),
/// p = -i(a-a^dag)/sqrt(2). Vacuum blocks are I/2.
struct CovarianceState {
    Eigen::VectorXd displacement;
    Eigen::MatrixXd covariance;
    std::vector<std::string> basis;

    int mode_count() const { return static_cast<int>(basis.size()); }
    int index_of(const std::string& label) const;
};

CovarianceState vacuum_state(const std::vector<std::string>& labels);

/// Appends vacuum modes to an existing state.
CovarianceState extend_with_vacuum(const CovarianceState& state,
                                   const std::vector<std::string>& labels);

/// Two-mode squeezed vacuum over (mode_p, mode_s), basis (q_p,p_p,q_s,p_s):
/// diagonal blocks cosh(2r)/2 I, off-diagonal diag(sinh 2r, -sinh 2r)/2.
CovarianceState initial_tmsv(double r, const std::string& mode_p, const std::string& mode_s);

struct PropagateOptions {
    /// Refuse transforms whose intrinsic symplectic defect exceeds this.
    double defect_tol = 1e-6;
    /// Treat in-modes outside the transform window as vacuum and complete the
    /// out-mode second moments with (1/2) PSD(I - S S^T). Exact when beta = 0
    /// (the full map is then orthogonal); a small correction otherwise.
    bool vacuum_completion = false;
};

/// V <- S V S^T, d <- S d, with S the quadrature representation of the
/// transform acting on `acting_labels` (same order as transform.modes);
/// all other modes carry the identity.
CovarianceState propagate(const CovarianceState& state, const BogoliubovTransform& transform,
                          const std::vector<std::string>& acting_labels,
                          const PropagateOptions& opts = {});

/// 4x4 restriction to an ordered pair of modes.
CovarianceState reduce(const CovarianceState& state, const std::string& mode_a,
                       const std::string& mode_b);

struct EntanglementReport {
    double nu_minus = 0.0;         ///< smallest PT symplectic eigenvalue
    double log_negativity = 0.0;   ///< max{0, -log2(2 nu_minus)}, bits
    double mutual_information = 0.0; ///< bits
    double eta_minus = 0.0, eta_plus = 0.0; ///< symplectic eigenvalues of 2V
    bool clamped = false;          ///< negativity radicand clamped at 0
};

/// nu_minus and logarithmic negativity of a two-mode state.
EntanglementReport log_negativity(const CovarianceState& pair_state);
/// Mutual information and symplectic eigenvalues of 2V of a two-mode state.
EntanglementReport mutual_information(const CovarianceState& pair_state);
/// Both of the above in one pass.
EntanglementReport entanglement_report(const CovarianceState& pair_state);

double photon_number(const CovarianceState& state, const std::string& mode);

/// f(x) = ((x+1)/2) log2((x+1)/2) - ((x-1)/2) log2((x-1)/2), f(1) = 0.
double entropy_f(double x);

/// Moduli of the eigenvalues of i Omega V, deduplicated to one value per
/// mode, ascending. Vacuum gives 1/2 per mode.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& V);

} // namespace dce
