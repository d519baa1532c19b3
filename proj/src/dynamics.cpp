#include "qisim/dynamics.hpp"

#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

// The stock Eigen adapter reports an error norm of the state's scalar type,
// which for complex states does not convert to double. Override it.
namespace boost::numeric::odeint {
template <int R, int C>
struct vector_space_norm_inf<Eigen::Matrix<std::complex<double>, R, C>> {
    typedef double result_type;
    double operator()(const Eigen::Matrix<std::complex<double>, R, C>& m) const {
        return m.cwiseAbs().maxCoeff();
    }
};
} // namespace boost::numeric::odeint

namespace qisim {

namespace {

namespace ode = boost::numeric::odeint;

using State3 = Eigen::Vector3cd;
using State9 = Eigen::Matrix<complexd, 9, 1>;

template <class State, class Rhs, class Observer>
void integrate_grid(const Rhs& rhs, State& x, std::span<const double> grid, Tolerances tol,
                    const Observer& obs) {
    if (grid.size() < 2)
        throw ValidationError("evolve: grid needs at least 2 points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ValidationError("evolve: grid must be strictly increasing");

    auto stepper = ode::make_dense_output(
        tol.abs, tol.rel,
        ode::runge_kutta_dopri5<State, double, State, double, ode::vector_space_algebra>());
    const double dt0 = (grid[1] - grid[0]) / 10.0;
    double last_good = grid.front();
    try {
        ode::integrate_times(stepper, rhs, x, grid.begin(), grid.end(), dt0,
                             [&](const State& s, double t) {
                                 obs(s, t);
                                 last_good = t;
                             });
    } catch (const std::exception& ex) {
        throw IntegrationError(std::string("integration failed: ") + ex.what() +
                                   " (last good time " + std::to_string(last_good) + ")",
                               last_good);
    }
}

std::array<double, 3> populations_of(const State3& psi) {
    return {std::norm(psi[0]), std::norm(psi[1]), std::norm(psi[2])};
}

std::array<double, 3> populations_of(const Eigen::Matrix3cd& rho) {
    return {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real()};
}

void finalize_summary(Trajectory& tr) {
    tr.summary.final_P_g = tr.populations.back()[0];
    tr.summary.final_P_e = tr.populations.back()[1];
    tr.summary.final_P_s = tr.populations.back()[2];
    double max_pe = 0.0;
    for (const auto& p : tr.populations)
        max_pe = std::max(max_pe, p[1]);
    tr.summary.max_P_e = max_pe;
}

} // namespace

Trajectory evolve_schrodinger(const HamiltonianFn& H_of_t, const QuantumState& psi0,
                              std::span<const double> grid, Tolerances tol) {
    if (!psi0.is_normalized())
        throw ValidationError("evolve_schrodinger: initial state not normalized");

    Trajectory tr;
    tr.times.reserve(grid.size());
    tr.states.reserve(grid.size());
    tr.populations.reserve(grid.size());

    auto rhs = [&](const State3& psi, State3& dpsidt, double t) {
        dpsidt = -imag_unit * (H_of_t(t) * psi);
    };
    State3 psi = psi0.three();
    double drift = 0.0;
    integrate_grid(rhs, psi, grid, tol, [&](const State3& s, double t) {
        tr.times.push_back(t);
        tr.states.push_back(s);
        tr.populations.push_back(populations_of(s));
        drift = std::max(drift, std::abs(s.squaredNorm() - 1.0));
    });
    tr.summary.norm_drift = drift;
    finalize_summary(tr);
    return tr;
}

Repopulation Repopulation::lambda_decay(double Gamma_e, double branch_to_g) {
    if (branch_to_g < 0.0 || branch_to_g > 1.0)
        throw ValidationError("Repopulation: branching ratio must be in [0, 1]");
    Repopulation r;
    r.feed(level_e, level_g) = Gamma_e * branch_to_g;
    r.feed(level_e, level_s) = Gamma_e * (1.0 - branch_to_g);
    return r;
}

Repopulation Repopulation::ladder_decay(double Gamma_e, double Gamma_s) {
    Repopulation r;
    r.feed(level_s, level_e) = Gamma_s;
    r.feed(level_e, level_g) = Gamma_e;
    return r;
}

Repopulation Repopulation::vee_decay(double Gamma_e, double Gamma_s) {
    Repopulation r;
    r.feed(level_e, level_g) = Gamma_e;
    r.feed(level_s, level_g) = Gamma_s;
    return r;
}

Trajectory evolve_master(const HamiltonianFn& H_of_t, const DecayRates& rates,
                         const DensityMatrix& rho0, std::span<const double> grid, Tolerances tol,
                         const Repopulation& repop) {
    rates.validate();
    const Eigen::Matrix3cd G = rates.gamma_hat();
    const bool feeds = !repop.empty();

    auto rhs = [&](const State9& v, State9& dv, double t) {
        const Eigen::Matrix3cd rho = Eigen::Map<const Eigen::Matrix3cd>(v.data());
        const Eigen::Matrix3cd H = H_of_t(t);
        Eigen::Matrix3cd drho = -imag_unit * (H * rho - rho * H) - 0.5 * (G * rho + rho * G);
        if (feeds) {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (repop.feed(i, j) != 0.0)
                        drho(j, j) += repop.feed(i, j) * rho(i, i);
        }
        dv = Eigen::Map<const State9>(drho.data());
    };

    Trajectory tr;
    tr.times.reserve(grid.size());
    tr.rhos.reserve(grid.size());
    tr.populations.reserve(grid.size());

    State9 v = Eigen::Map<const State9>(rho0.matrix().data());
    double drift = 0.0;
    integrate_grid(rhs, v, grid, tol, [&](const State9& s, double t) {
        Eigen::Matrix3cd rho = Eigen::Map<const Eigen::Matrix3cd>(s.data());
        // keep roundoff from accumulating into the Hermitian part
        rho = 0.5 * (rho + rho.adjoint().eval());
        tr.times.push_back(t);
        tr.rhos.push_back(rho);
        tr.populations.push_back(populations_of(rho));
        drift = std::max(drift, std::abs(rho.trace().real() - 1.0));
    });
    tr.summary.norm_drift = drift;
    finalize_summary(tr);
    return tr;
}

std::array<complexd, 2> rabi_analytic(double Omega, double Delta, double t,
                                      const std::array<complexd, 2>& c0) {
    const double W = std::hypot(Omega, Delta);
    if (W == 0.0)
        return c0; // no drive, no detuning: amplitudes frozen
    const double half = 0.5 * W * t;
    const double c = std::cos(half);
    const double s = std::sin(half);
    const complexd ph = std::exp(-imag_unit * (0.5 * Delta * t));
    const complexd c2 = (c0[1] * (c - imag_unit * (Delta / W) * s) +
                         imag_unit * c0[0] * (Omega / W) * s) *
                        ph;
    const complexd c1 = (c0[0] * (c + imag_unit * (Delta / W) * s) +
                         imag_unit * c0[1] * (Omega / W) * s) /
                        ph;
    return {c1, c2};
}

double adiabaticity_margin(const PulsePair& pair, std::span<const double> grid) {
    if (grid.size() < 3)
        throw ValidationError("adiabaticity_margin: grid needs at least 3 points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ValidationError("adiabaticity_margin: grid must be strictly increasing");

    const size_t n = grid.size();
    std::vector<double> wp(n), wc(n);
    for (size_t i = 0; i < n; ++i) {
        wp[i] = std::abs(pair.pump.eval(grid[i]));
        wc[i] = std::abs(pair.coupling.eval(grid[i]));
    }

    // Central differences, shrunk to one-sided where the envelope crosses
    // its truncation boundary so the cutoff jump is not charged to dtheta/dt.
    auto derivative = [&](const std::vector<double>& w, size_t i) {
        const bool on = w[i] > 0.0;
        size_t lo = (i > 0 && (w[i - 1] > 0.0) == on) ? i - 1 : i;
        size_t hi = (i + 1 < n && (w[i + 1] > 0.0) == on) ? i + 1 : i;
        if (lo == hi)
            return 0.0;
        return (w[hi] - w[lo]) / (grid[hi] - grid[lo]);
    };

    double margin = std::numeric_limits<double>::infinity();
    bool moved = false;
    for (size_t i = 0; i < n; ++i) {
        const double dwp = derivative(wp, i);
        const double dwc = derivative(wc, i);
        const double rms2 = wp[i] * wp[i] + wc[i] * wc[i];
        const double num = std::abs(wc[i] * dwp - wp[i] * dwc);
        if (num == 0.0)
            continue; // theta frozen here
        moved = true;
        if (rms2 == 0.0) {
            margin = 0.0; // drives vanish while theta still turns
            continue;
        }
        const double dtheta = num / rms2;
        margin = std::min(margin, std::sqrt(rms2) / dtheta);
    }
    return moved ? margin : std::numeric_limits<double>::infinity();
}

} // namespace qisim
