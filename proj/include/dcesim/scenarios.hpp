#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcesim/cavity.hpp"
#include "dcesim/gaussian.hpp"
#include "dcesim/multiscale.hpp"

namespace dce {

/// The four drive/spectrum regimes. The static partner mode is labeled "p"
/// throughout; cavity-1 modes carry their index labels ("s"/"c" in 3D).
enum class Regime { Sum3D, Diff3D, Fund1D, Harm1D };

std::string regime_name(Regime r);
Regime regime_from_name(const std::string& name);

enum class SolverChoice { Analytic, Ode };

/// Time axis conventions: 3D regimes sample in gamma*tau (the dimensionless
/// squeeze/rotation angle), 1D regimes in tau_tilde (single-wall slow time;
/// the shaker sits at tau = tau_tilde / 2 with the same epsilon).
struct TimeGrid {
    double start = 0.0;
    double stop = 1.0;
    int samples = 101;
    /// Shaking stops here: transforms freeze at this value for later samples.
    std::optional<double> freeze_after;

    std::vector<double> values() const;
};

struct ScenarioConfig {
    Regime regime = Regime::Sum3D;
    CavityGeometry geometry;
    DriveConfig drive;
    double squeeze_r = 1.0;
    ModeIndex mode_s;
    std::optional<ModeIndex> mode_c; // 3D regimes
    int truncation = 40;             // 1D mode count
    TimeGrid time;
    std::vector<std::pair<std::string, std::string>> pairs; // observable pairs
    std::vector<std::string> photon_modes;
    SolverChoice solver = SolverChoice::Analytic;
    bool emit_convergence = true;
    bool svg_log_photons = false;
    std::string figure_tag;

    static ScenarioConfig defaults_for(Regime r);
    void validate() const;
    /// Labels of every mode tracked in the covariance basis ("p" first).
    std::vector<std::string> tracked_labels() const;
    std::string s_label() const;
    std::string c_label() const;
};

struct ConvergenceReport {
    int truncation = 0;
    int reference_truncation = 0; // K/2 comparison run
    std::map<std::string, double> max_abs_delta; // per emitted column
};

struct ObservableSeries {
    std::vector<double> time; // in the regime's axis units
    std::string time_axis;    // "gamma_tau" or "tau_tilde"
    std::vector<std::string> photon_modes;
    std::vector<std::pair<std::string, std::string>> pairs;
    // samples x columns
    Eigen::MatrixXd photons;
    Eigen::MatrixXd logneg;
    Eigen::MatrixXd mutinfo;
    double max_symplectic_defect = 0.0;
    double max_window_defect = 0.0;
    std::optional<ConvergenceReport> convergence;

    // resolved run parameters for emission metadata
    Regime regime = Regime::Sum3D;
    double squeeze_r = 0.0;
    int truncation = 0;
    double gamma_minus = 0.0, gamma_plus = 0.0; // 3D only
    int harmonic_q = 0;                         // 1D only
    std::string figure_tag;

    int column_of_photon(const std::string& mode) const;
    int column_of_pair(const std::string& a, const std::string& b) const;
};

ObservableSeries run_scenario(const ScenarioConfig& config);

/// Pairwise negativity map against a list of cavity-1 partner modes
/// (adds (p, j) and (s, j) pairs for every partner j).
ObservableSeries redistribution_map(const ScenarioConfig& config,
                                    const std::vector<ModeIndex>& partner_modes);

struct SuddenDeath {
    std::optional<double> tau_star; // in the config's time-axis units
    bool reentry = false;           // negativity seen again after tau_star
};

/// Earliest time where the pair's negativity reaches zero and stays zero in
/// the sampled window, refined by bisection on nu_minus - 1/2. Requires
/// entanglement at t = 0.
SuddenDeath sudden_death_time(const ScenarioConfig& config,
                              const std::pair<std::string, std::string>& pair);

struct LongTimeLimits {
    double logneg_limit = 0.0;
    double mutinfo_limit = 0.0;
    std::optional<double> two_nu_minus_limit;         // Harm1D
    std::optional<Eigen::Matrix4d> covariance_limit;  // Fund1D, basis (s, p)
    std::optional<double> neg_log_two_nu;             // Harm1D: -log2(cosh 2r) < 0
};

/// Closed-form asymptotics for Sum3D, Fund1D, Harm1D. Diff3D has no limit
/// (periodic) and is rejected.
LongTimeLimits long_time_limits(const ScenarioConfig& config);

/// One covariance state of the configured scenario at a given axis time.
CovarianceState scenario_state_at(const ScenarioConfig& config, double axis_time);

} // namespace dce
