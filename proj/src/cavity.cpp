#include "dcesim/cavity.hpp"

#include <cmath>

#include "dcesim/errors.hpp"

namespace dce {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CavityGeometry CavityGeometry::one_d(double lx) {
    CavityGeometry g;
    g.lengths = {lx, 1.0, 1.0};
    g.dim = Dimensionality::OneD;
    g.validate();
    return g;
}

CavityGeometry CavityGeometry::three_d(double lx, double ly, double lz) {
    CavityGeometry g;
    g.lengths = {lx, ly, lz};
    g.dim = Dimensionality::ThreeD;
    g.validate();
    return g;
}

void CavityGeometry::validate() const {
    for (double l : lengths)
        if (!(l > 0.0)) throw ConfigError("cavity lengths must be strictly positive");
}

double CavityGeometry::fundamental_frequency() const {
    ModeIndex lowest = (dim == Dimensionality::OneD) ? ModeIndex::one_d(1)
                                                     : ModeIndex::three_d(1, 1, 1);
    return mode_frequency(*this, lowest);
}

ModeIndex ModeIndex::one_d(int n) {
    ModeIndex m;
    m.nx = n;
    m.dim = Dimensionality::OneD;
    m.validate();
    return m;
}

ModeIndex ModeIndex::three_d(int nx, int ny, int nz) {
    ModeIndex m;
    m.nx = nx;
    m.ny = ny;
    m.nz = nz;
    m.dim = Dimensionality::ThreeD;
    m.validate();
    return m;
}

void ModeIndex::validate() const {
    if (nx < 1 || ny < 1 || nz < 1)
        throw ConfigError("mode index components must be >= 1");
}

std::string ModeIndex::label() const {
    if (dim == Dimensionality::OneD) return std::to_string(nx);
    return std::to_string(nx) + "_" + std::to_string(ny) + "_" + std::to_string(nz);
}

double mode_frequency(const CavityGeometry& geom, const ModeIndex& m) {
    if (geom.dim != m.dim)
        throw ConfigError("mode index dimensionality does not match geometry");
    m.validate();
    if (geom.dim == Dimensionality::OneD) return m.nx * kPi / geom.lengths[0];
    double kx = m.nx * kPi / geom.lengths[0];
    double ky = m.ny * kPi / geom.lengths[1];
    double kz = m.nz * kPi / geom.lengths[2];
    return std::sqrt(kx * kx + ky * ky + kz * kz);
}

std::vector<ModeIndex> one_d_modes(int count) {
    if (count < 1) throw ConfigError("mode count must be >= 1");
    std::vector<ModeIndex> out;
    out.reserve(count);
    for (int n = 1; n <= count; ++n) out.push_back(ModeIndex::one_d(n));
    return out;
}

std::vector<ModeIndex> three_d_modes(int cutoff_per_axis) {
    if (cutoff_per_axis < 1) throw ConfigError("cutoff must be >= 1");
    std::vector<ModeIndex> out;
    for (int nx = 1; nx <= cutoff_per_axis; ++nx)
        for (int ny = 1; ny <= cutoff_per_axis; ++ny)
            for (int nz = 1; nz <= cutoff_per_axis; ++nz)
                out.push_back(ModeIndex::three_d(nx, ny, nz));
    return out;
}

double coupling_entry(const ModeIndex& k, const ModeIndex& j, CouplingVariant variant) {
    if (variant == CouplingVariant::SingleWall) {
        if (k.dim != Dimensionality::OneD || j.dim != Dimensionality::OneD)
            throw ConfigError("single-wall coupling is defined for 1D modes");
        if (k.nx == j.nx) return 0.0;
        return 2.0 * k.nx * j.nx / (double(k.nx) * k.nx - double(j.nx) * j.nx);
    }
    if (k.ny != j.ny || k.nz != j.nz) return 0.0;
    if (k.nx == j.nx) return 0.0;
    double parity = ((k.nx + j.nx) % 2 == 0) ? 0.0 : -2.0; // (-1)^{kx+jx} - 1
    return parity * 2.0 * k.nx * j.nx / (double(k.nx) * k.nx - double(j.nx) * j.nx);
}

CouplingMatrix coupling_matrix(const CavityGeometry& geom, const std::vector<ModeIndex>& modes,
                               CouplingVariant variant) {
    if (modes.empty()) throw ConfigError("mode set must be nonempty");
    for (const auto& m : modes) {
        if (m.dim != geom.dim) throw ConfigError("mode set dimensionality mismatch");
        m.validate();
    }
    const int n = static_cast<int>(modes.size());
    CouplingMatrix cm;
    cm.entries.resize(n, n);
    cm.modes = modes;
    cm.variant = variant;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            cm.entries(a, b) = coupling_entry(modes[a], modes[b], variant);
    return cm;
}

DriveConfig DriveConfig::harmonic(const CavityGeometry& geom, int q, double epsilon) {
    if (q < 1) throw ConfigError("harmonic_q must be >= 1");
    DriveConfig d;
    d.epsilon = epsilon;
    d.harmonic_q = q;
    d.omega_drive = q * geom.fundamental_frequency();
    d.validate(geom);
    return d;
}

DriveConfig DriveConfig::resonant_pair(const CavityGeometry& geom, const ModeIndex& s,
                                       const ModeIndex& c, bool sum, double epsilon) {
    DriveConfig d;
    d.epsilon = epsilon;
    double ws = mode_frequency(geom, s);
    double wc = mode_frequency(geom, c);
    d.omega_drive = sum ? (ws + wc) : std::abs(ws - wc);
    d.validate(geom);
    return d;
}

double DriveConfig::slow_time(double t, const CavityGeometry& geom) const {
    double w1 = geom.fundamental_frequency();
    double t_eff = std::min(std::max(t, t_start), t_stop);
    return epsilon * w1 * (t_eff - t_start) / (2.0 * geom.lx());
}

void DriveConfig::validate(const CavityGeometry& geom) const {
    if (!(epsilon > 0.0)) throw ConfigError("drive epsilon must be > 0");
    if (!(omega_drive > 0.0)) throw ConfigError("drive frequency must be > 0");
    if (!(t_start < t_stop)) throw ConfigError("drive window requires t_start < t_stop");
    if (harmonic_q) {
        double w1 = geom.fundamental_frequency();
        if (std::abs(omega_drive - *harmonic_q * w1) > kResonanceTolFactor * w1)
            throw ConfigError("omega_drive is not at the requested harmonic of omega_1");
    }
}

std::optional<ModeIndex> resonant_partner(const CavityGeometry& geom, const DriveConfig& drive,
                                          const ModeIndex& s, ResonanceKind kind,
                                          double tol, int cutoff_per_axis) {
    if (!(tol > 0.0)) throw ConfigError("resonance tolerance must be > 0");
    if (s.dim != geom.dim) throw ConfigError("mode index dimensionality does not match geometry");
    double ws = mode_frequency(geom, s);
    std::vector<ModeIndex> candidates = (geom.dim == Dimensionality::OneD)
                                            ? one_d_modes(cutoff_per_axis * cutoff_per_axis)
                                            : three_d_modes(cutoff_per_axis);
    std::vector<ModeIndex> hits;
    for (const auto& c : candidates) {
        if (c == s) continue;
        if (coupling_entry(s, c, CouplingVariant::Shaker) == 0.0) continue;
        double wc = mode_frequency(geom, c);
        double mismatch = (kind == ResonanceKind::Sum)
                              ? std::abs(drive.omega_drive - (ws + wc))
                              : std::abs(drive.omega_drive - std::abs(ws - wc));
        if (mismatch < tol) hits.push_back(c);
    }
    if (hits.empty()) return std::nullopt;
    if (hits.size() > 1)
        throw NumericalError("resonant_partner: " + std::to_string(hits.size()) +
                             " candidates match within tolerance (degenerate/equidistant spectrum)");
    return hits.front();
}

} // namespace dce
