#pragma once

#include <vector>

#include "dcesim/bogoliubov.hpp"
#include "dcesim/cavity.hpp"

namespace dce {

enum class MultiscaleSystem { ThreeD, OneDShaker, OneDSingleWall };

struct MultiscaleOptions {
    double step = 1e-3;
    /// Frequency-match tolerance for the resonance gates, relative to omega_1.
    double resonance_tol = kResonanceTolFactor;
    /// Row-identity drift that aborts the integration (step too large).
    double defect_bound = 1e-6;
    int check_every = 100;
};

/// Fixed-step RK4 on the slow-time envelope system
///   d alpha_nk / d tau = sum_j A_kj alpha_nj + P_kj beta_nj
///   d beta_nk  / d tau = sum_j A_kj beta_nj  + P_kj alpha_nj
/// with
///   A_kj = K_kj (omega_j + Omega/2)  when omega_j = omega_k - Omega
///        = K_kj (omega_j - Omega/2)  when omega_j = omega_k + Omega
///   P_kj = K_kj (omega_j - Omega/2)  when omega_j + omega_k = Omega
///   K_kj = Omega c_kj / (omega_1 sqrt(omega_k omega_j))
/// where c is the shaker coupling g (ThreeD, OneDShaker) or the single-wall
/// coupling with mode signs aligned to the closed-form solution
/// ((-1)^{k+j} gtilde, OneDSingleWall). The single-wall system adds the
/// direct pair term P_kk -= omega_k/omega_1 on 2 omega_k = Omega.
///
/// For OneDSingleWall the time argument is tau_tilde.
BogoliubovTransform integrate_multiscale(MultiscaleSystem system, const CavityGeometry& geom,
                                         const DriveConfig& drive,
                                         const std::vector<ModeIndex>& modes, double tau_end,
                                         const MultiscaleOptions& opts = {});

/// Same integration, snapshots at an ascending list of times.
std::vector<BogoliubovTransform> integrate_multiscale_grid(
    MultiscaleSystem system, const CavityGeometry& geom, const DriveConfig& drive,
    const std::vector<ModeIndex>& modes, const std::vector<double>& taus,
    const MultiscaleOptions& opts = {});

} // namespace dce
