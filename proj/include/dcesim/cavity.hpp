#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dce {

enum class Dimensionality { OneD, ThreeD };

/// Rectangular cavity, perfectly reflecting walls, natural units c = 1.
/// OneD keeps only the x extent; transverse lengths are ignored.
struct CavityGeometry {
    std::array<double, 3> lengths{1.0, 1.0, 1.0};
    Dimensionality dim = Dimensionality::OneD;

    static CavityGeometry one_d(double lx);
    static CavityGeometry three_d(double lx, double ly, double lz);

    double lx() const { return lengths[0]; }
    /// Frequency of the lowest mode: pi/Lx in 1D, |k(1,1,1)| in 3D.
    /// Sets the scale of the slow-time normalization.
    double fundamental_frequency() const;
    void validate() const;
};

/// Integer mode labels, all components >= 1. OneD uses only n(1,1,1)-style
/// with ny = nz = 1 ignored.
struct ModeIndex {
    int nx = 1, ny = 1, nz = 1;
    Dimensionality dim = Dimensionality::OneD;

    static ModeIndex one_d(int n);
    static ModeIndex three_d(int nx, int ny, int nz);

    std::string label() const;
    bool operator==(const ModeIndex&) const = default;
    void validate() const;
};

double mode_frequency(const CavityGeometry& geom, const ModeIndex& m);

/// Ordered mode sets used for truncation.
std::vector<ModeIndex> one_d_modes(int count);
std::vector<ModeIndex> three_d_modes(int cutoff_per_axis);

enum class CouplingVariant { Shaker, SingleWall };

/// Inter-mode coupling induced by wall motion.
///   Shaker:     g_kj = ((-1)^{kx+jx} - 1) * 2 kx jx / (kx^2 - jx^2) on equal
///               transverse indices, zero when kx == jx.
///   SingleWall: gtilde_kj = 2 k j / (k^2 - j^2), zero diagonal (1D only).
struct CouplingMatrix {
    Eigen::MatrixXd entries;
    std::vector<ModeIndex> modes;
    CouplingVariant variant;
};

double coupling_entry(const ModeIndex& k, const ModeIndex& j, CouplingVariant variant);
CouplingMatrix coupling_matrix(const CavityGeometry& geom, const std::vector<ModeIndex>& modes,
                               CouplingVariant variant);

/// Harmonic drive r(t) = epsilon * sin(Omega t) applied over [t_start, t_stop].
/// epsilon is the displacement amplitude in units of length.
struct DriveConfig {
    double epsilon = 1e-3;
    double omega_drive = 0.0;
    std::optional<int> harmonic_q;
    double t_start = 0.0;
    double t_stop = 1e12;

    /// Drive at the q-th harmonic of the fundamental (1D resonant case).
    static DriveConfig harmonic(const CavityGeometry& geom, int q, double epsilon = 1e-3);
    /// Drive at omega_s + omega_c or |omega_s - omega_c| (3D two-mode case).
    static DriveConfig resonant_pair(const CavityGeometry& geom, const ModeIndex& s,
                                     const ModeIndex& c, bool sum, double epsilon = 1e-3);

    /// Slow time tau = epsilon * omega_1 * (t - t_start) / (2 Lx).
    double slow_time(double t, const CavityGeometry& geom) const;
    void validate(const CavityGeometry& geom) const;
};

inline constexpr double kResonanceTolFactor = 1e-9; // relative to omega_1

enum class ResonanceKind { Sum, Difference };

/// Searches modes up to cutoff for the partner c of s with
/// |Omega - (omega_s + omega_c)| < tol (Sum) or |Omega - |omega_s - omega_c||
/// < tol (Difference), requiring g_sc != 0. Throws on multiple matches.
std::optional<ModeIndex> resonant_partner(const CavityGeometry& geom, const DriveConfig& drive,
                                          const ModeIndex& s, ResonanceKind kind,
                                          double tol, int cutoff_per_axis = 8);

} // namespace dce
