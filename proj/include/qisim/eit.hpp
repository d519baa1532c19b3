#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qisim/dynamics.hpp"
#include "qisim/hamiltonians.hpp"

// Steady-state probe response: the weak-probe closed forms for the Lambda,
// ladder and V schemes, and the numeric steady state of the master equation
// as the independent route.
//
// All physical prefactors (atom density, dipole moment, background index,
// probe frequency, hbar, epsilon0, c) collapse into the single positive
// kappa_scale. The susceptibility sign convention is absorption-positive:
// Im(chi) >= 0 on resonance scans with positive decay rates; absorption and
// dispersion are alpha = Im(chi), beta = Re(chi)/2.

namespace qisim {

struct EitParams {
    Scheme scheme = Scheme::Lambda;
    double kappa_scale = 1.0;
    double Omega_P = 0.01; // weak probe (Half-convention Rabi frequency)
    double Omega_C = 1.0;
    // Fixed coupling-field detuning. The probe detuning is derived from the
    // scanned two-photon detuning: Lambda Delta1 = delta + Delta_C, ladder
    // Delta1 = delta - Delta_C, V-type Delta_P = delta + Delta_C.
    double Delta_C = 0.0;
    double Gamma_g = 0.0;
    double Gamma_e = 1.0;
    double Gamma_s = 0.0;
    double Gamma_t = 0.0;                 // transit rate (V-type steady state)
    std::optional<double> Gamma_sg;       // V-type decay s->g; defaults to Gamma_s

    double gamma1() const { return 0.5 * (Gamma_g + Gamma_e); }
    double gamma3() const { return 0.5 * (Gamma_g + Gamma_s); }
    double gamma_ge() const { return 0.5 * (Gamma_g + Gamma_e); }
    double gamma_gs() const { return 0.5 * (Gamma_g + Gamma_s); }
    double gamma_es() const { return 0.5 * (Gamma_e + Gamma_s); }
    double gamma_sg_rate() const { return Gamma_sg.value_or(Gamma_s); }

    void validate() const;
};

// Numeric steady state: solves the flattened 9x9 linear system
// drho/dt = 0 with one row replaced by trace(rho) = 1. The residual of the
// original generator is checked to 1e-10.
DensityMatrix steady_state(const Eigen::Matrix3cd& H, const DecayRates& rates,
                           const Repopulation& repop = {});

// Weak-probe steady-state coherence rho_eg for the Lambda scheme,
//   rho_eg = Omega_P/(2Z) [ -(delta^2 Delta + gamma3^2 Delta - delta Omega_C^2/4)
//                           + i (delta^2 gamma1 + gamma1 gamma3^2 + gamma3 Omega_C^2/4) ]
//   Z = (delta Delta - gamma1 gamma3 - Omega_C^2/4)^2 + (gamma3 Delta + gamma1 delta)^2.
complexd rho_eg_lambda(const EitParams& p, double delta);

// Ladder scheme: same kernel with delta = Delta1 + Delta2 and the ground-
// state/upper-level coherence decay (Gamma_g + Gamma_s)/2.
complexd rho_eg_ladder(const EitParams& p, double delta);

// V-type weak-probe coherence rho_ge with the transit-broadened steady-state
// populations rho_ss = s/K3, rho_gg = (2 + s + 2 Gamma_t/Gamma_s)/K3 and
// K0 = Delta_P - Delta_C + i gamma_es, K1 = Delta_P + i gamma_ge,
// K2 = Delta_C - i gamma_gs.
complexd rho_ge_vee(const EitParams& p, double Delta_P);

// chi = 2 kappa_scale rho_eg / Omega_P (absorption-positive orientation).
complexd susceptibility_lambda(const EitParams& p, double delta);

// chi for any scheme at the given scanned detuning (two-photon detuning for
// Lambda/ladder, probe detuning for V).
complexd susceptibility(const EitParams& p, double detuning);

// (alpha, beta) = (Im chi, Re chi / 2).
std::pair<double, double> alpha_beta(const EitParams& p, double detuning);

struct Spectrum {
    std::vector<double> deltas;
    std::vector<complexd> chi;
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> alpha_numeric; // filled when the dual path is requested
    std::vector<std::string> notes;    // per-point pole annotations ("" if clean)
    double alpha_at_zero = 0.0;
    // full width at half depth of the transparency dip; NaN when there is none
    double dip_fwhm = std::numeric_limits<double>::quiet_NaN();
};

// Evaluates chi, alpha, beta on the detuning grid. With the dual path
// enabled (Lambda/ladder only) each point also gets the absorption derived
// from the numeric steady state of the master equation.
Spectrum transparency_scan(const EitParams& p, std::span<const double> delta_grid,
                           bool with_numeric = false);

// The numeric-route absorption at one detuning (Lambda/ladder).
double numeric_alpha(const EitParams& p, double delta);

// Numeric steady-state rho_eg at one detuning (Lambda/ladder).
complexd numeric_rho_eg(const EitParams& p, double delta);

} // namespace qisim
