#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "qisim/core.hpp"
#include "qisim/pulses.hpp"

// Time propagation of pure states (Schroedinger) and density matrices (von
// Neumann with anticommutator decay), the analytic two-level Rabi solution,
// and the adiabaticity monitor.

namespace qisim {

using HamiltonianFn = std::function<Eigen::Matrix3cd(double)>;

struct Tolerances {
    double rel = 1e-9;
    double abs = 1e-12;
};

struct TrajectorySummary {
    double final_P_g = 0.0;
    double final_P_e = 0.0;
    double final_P_s = 0.0;
    double max_P_e = 0.0;
    // max |norm - 1| (unitary) or |trace - 1| (dissipative) over the run
    double norm_drift = 0.0;
    double adiabaticity_margin = std::numeric_limits<double>::quiet_NaN();
    double pulse_area = std::numeric_limits<double>::quiet_NaN();
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::Vector3cd> states; // filled by evolve_schrodinger
    std::vector<Eigen::Matrix3cd> rhos;   // filled by evolve_master
    std::vector<std::array<double, 3>> populations;
    TrajectorySummary summary;
};

// Solves i dpsi/dt = H(t) psi with an adaptive Dormand-Prince stepper and
// dense output at the grid points. Grid must be sorted ascending.
Trajectory evolve_schrodinger(const HamiltonianFn& H_of_t, const QuantumState& psi0,
                              std::span<const double> grid, Tolerances tol = {});

// Population feed rates between levels. The anticommutator decay in the
// master equation removes population without putting it anywhere; feeds are
// the opt-in extension that routes it back (feed(i, j) moves population from
// level i into level j at the given rate, Lindblad-style). The default (no
// feeds) integrates the bare anticommutator equation, which is
// trace-decreasing under open decay.
struct Repopulation {
    Eigen::Matrix3d feed = Eigen::Matrix3d::Zero();

    bool empty() const { return feed.isZero(0.0); }

    // Gamma_e branches from |e> into |g> and |s>.
    static Repopulation lambda_decay(double Gamma_e, double branch_to_g = 0.5);
    // Cascade s -> e -> g.
    static Repopulation ladder_decay(double Gamma_e, double Gamma_s);
    // Both upper levels decay to the shared ground state.
    static Repopulation vee_decay(double Gamma_e, double Gamma_s);
};

// Integrates drho/dt = -i [H(t), rho] - 1/2 {Gamma_hat, rho} (+ feeds).
Trajectory evolve_master(const HamiltonianFn& H_of_t, const DecayRates& rates,
                         const DensityMatrix& rho0, std::span<const double> grid,
                         Tolerances tol = {}, const Repopulation& repop = {});

// Closed-form two-level amplitudes
//   c2(t) = [c2(0)(cos(W t/2) - i Delta/W sin(W t/2)) + i c1(0) Omega/W sin(W t/2)] e^{-i Delta t/2}
//   c1(t) = [c1(0)(cos(W t/2) + i Delta/W sin(W t/2)) + i c2(0) Omega/W sin(W t/2)] e^{+i Delta t/2}
// with W = sqrt(Omega^2 + Delta^2) the generalized Rabi frequency.
std::array<complexd, 2> rabi_analytic(double Omega, double Delta, double t,
                                      const std::array<complexd, 2>& c0);

// min over the grid of Omega_rms / |dtheta/dt| with
// dtheta/dt = |Omega_C dOmega_P/dt - Omega_P dOmega_C/dt| / Omega_rms^2,
// derivatives by central differences (one-sided at the ends). Returns +inf
// when theta never moves; 0 when Omega_rms vanishes at a point where it does.
double adiabaticity_margin(const PulsePair& pair, std::span<const double> grid);

} // namespace qisim
