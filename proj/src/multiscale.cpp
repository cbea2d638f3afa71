#include "dcesim/multiscale.hpp"

#include <cmath>

#include "dcesim/errors.hpp"

namespace dce {

namespace {

struct Generator {
    Eigen::MatrixXd A; // alpha<->alpha, beta<->beta
    Eigen::MatrixXd P; // alpha<->beta (pair creation)
};

Generator build_generator(MultiscaleSystem system, const CavityGeometry& geom,
                          const DriveConfig& drive, const std::vector<ModeIndex>& modes,
                          double resonance_tol) {
    const int n = static_cast<int>(modes.size());
    const double w1 = geom.fundamental_frequency();
    const double W = drive.omega_drive;
    const double tol = resonance_tol * w1;

    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = mode_frequency(geom, modes[i]);

    Generator gen;
    gen.A.setZero(n, n);
    gen.P.setZero(n, n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            double c;
            if (system == MultiscaleSystem::OneDSingleWall) {
                c = coupling_entry(modes[k], modes[j], CouplingVariant::SingleWall);
                if ((modes[k].nx + modes[j].nx) % 2 != 0) c = -c; // mode-sign convention
            } else {
                c = coupling_entry(modes[k], modes[j], CouplingVariant::Shaker);
            }
            if (c == 0.0) continue;
            double Kkj = W * c / (w1 * std::sqrt(w[k] * w[j]));
            if (std::abs(w[j] - w[k] + W) < tol) gen.A(k, j) += Kkj * (w[j] + W / 2.0);
            if (std::abs(w[j] - w[k] - W) < tol) gen.A(k, j) += Kkj * (w[j] - W / 2.0);
            if (std::abs(w[j] + w[k] - W) < tol) gen.P(k, j) += Kkj * (w[j] - W / 2.0);
        }
        if (system == MultiscaleSystem::OneDSingleWall && std::abs(2.0 * w[k] - W) < tol)
            gen.P(k, k) -= w[k] / w1;
    }
    return gen;
}

} // namespace

std::vector<BogoliubovTransform> integrate_multiscale_grid(
    MultiscaleSystem system, const CavityGeometry& geom, const DriveConfig& drive,
    const std::vector<ModeIndex>& modes, const std::vector<double>& taus,
    const MultiscaleOptions& opts) {
    if (modes.empty()) throw ConfigError("mode set must be nonempty");
    if (!(opts.step > 0.0)) throw ConfigError("integration step must be > 0");
    for (size_t i = 0; i < taus.size(); ++i) {
        if (taus[i] < 0.0) throw ConfigError("tau must be >= 0");
        if (i > 0 && taus[i] < taus[i - 1]) throw ConfigError("tau grid must be ascending");
    }
    if (system != MultiscaleSystem::ThreeD && geom.dim != Dimensionality::OneD)
        throw ConfigError("1D multiscale systems require a 1D geometry");

    Generator gen = build_generator(system, geom, drive, modes, opts.resonance_tol);
    const Eigen::MatrixXd At = gen.A.transpose();
    const Eigen::MatrixXd Pt = gen.P.transpose();
    const int n = static_cast<int>(modes.size());

    Eigen::MatrixXd al = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd be = Eigen::MatrixXd::Zero(n, n);

    auto snapshot = [&](double tau) {
        BogoliubovTransform t;
        t.modes = modes;
        t.tau = tau;
        t.alpha = al.cast<std::complex<double>>();
        t.beta = be.cast<std::complex<double>>();
        t.window_defect = t.computed_window_defect();
        t.symplectic_defect = t.window_defect; // truncated system conserves the identity
        return t;
    };

    std::vector<BogoliubovTransform> out;
    out.reserve(taus.size());

    const double h = opts.step;
    double tau = 0.0;
    size_t next = 0;
    while (next < taus.size() && taus[next] <= tau) out.push_back(snapshot(taus[next++]));

    Eigen::MatrixXd k1a(n, n), k1b(n, n), k2a(n, n), k2b(n, n), k3a(n, n), k3b(n, n), k4a(n, n),
        k4b(n, n), ta(n, n), tb(n, n);
    auto rhs = [&](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Eigen::MatrixXd& da,
                   Eigen::MatrixXd& db) {
        da.noalias() = a * At;
        da.noalias() += b * Pt;
        db.noalias() = b * At;
        db.noalias() += a * Pt;
    };

    long steps_done = 0;
    while (next < taus.size()) {
        double target = taus[next];
        double step = std::min(h, target - tau);
        if (step <= 0.0) {
            out.push_back(snapshot(target));
            ++next;
            continue;
        }
        rhs(al, be, k1a, k1b);
        ta = al + 0.5 * step * k1a;
        tb = be + 0.5 * step * k1b;
        rhs(ta, tb, k2a, k2b);
        ta = al + 0.5 * step * k2a;
        tb = be + 0.5 * step * k2b;
        rhs(ta, tb, k3a, k3b);
        ta = al + step * k3a;
        tb = be + step * k3b;
        rhs(ta, tb, k4a, k4b);
        al += (step / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        be += (step / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        tau += step;
        if (++steps_done % opts.check_every == 0) {
            double defect = 0.0;
            for (int r = 0; r < n; ++r)
                defect = std::max(defect,
                                  std::abs(al.row(r).squaredNorm() - be.row(r).squaredNorm() - 1.0));
            if (defect > opts.defect_bound)
                throw NumericalError("multiscale integration defect " + std::to_string(defect) +
                                     " exceeded bound; reduce the step size");
        }
        while (next < taus.size() && tau >= taus[next] - 1e-15) out.push_back(snapshot(taus[next++]));
    }
    return out;
}

BogoliubovTransform integrate_multiscale(MultiscaleSystem system, const CavityGeometry& geom,
                                         const DriveConfig& drive,
                                         const std::vector<ModeIndex>& modes, double tau_end,
                                         const MultiscaleOptions& opts) {
    return integrate_multiscale_grid(system, geom, drive, modes, {tau_end}, opts).front();
}

} // namespace dce
