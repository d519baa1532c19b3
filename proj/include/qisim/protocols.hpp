#pragma once

#include <optional>

#include "qisim/dynamics.hpp"
#include "qisim/hamiltonians.hpp"

// Named experiment builders on top of the propagators: STIRAP with
// counterintuitive or intuitive pulse order, fractional and chirped
// variants, and the CPT population check.

namespace qisim {

enum class PulseOrdering { Counterintuitive, Intuitive };
enum class StirapVariant { Standard, Fractional, Chirped };

struct StirapScenario {
    Scheme scheme = Scheme::Lambda;
    CouplingConvention convention = CouplingConvention::Full;
    PulsePair pair;
    PulseOrdering ordering = PulseOrdering::Counterintuitive;
    std::vector<double> grid;
    StirapVariant variant = StirapVariant::Standard;
    double fractional_theta = 0.0; // Theta, the frozen mixing angle
    double fractional_phase = 0.0; // alpha
    std::optional<DecayRates> decay;
    Repopulation repopulation;
    Tolerances tol;

    void validate() const;
};

// Gaussian P/C pair with peak omega0, width tau and center separation
// `delay` (C first for counterintuitive order). Delta is the common
// single-photon detuning, delta the static two-photon detuning. The grid
// covers both pulses out to the Gaussian cutoff.
StirapScenario make_stirap_scenario(double omega0, double tau, double delay, double Delta,
                                    double delta, PulseOrdering ordering, int points = 2001);

// Same pulse geometry with equal-chirp envelopes. Equal chirp rates on
// delayed pulses shift the instantaneous two-photon detuning by a constant
// alpha*(t_P - t_C), so alpha = delta/(t_P - t_C) cancels a static delta.
StirapScenario make_chirped_stirap_scenario(double omega0, double tau, double delay, double Delta,
                                            double delta, double chirp, int points = 2001);

// F-STIRAP pulse family:
//   Omega_P = sin(Theta) omega0 G(t - t_plus) e^{i alpha}
//   Omega_C = omega0 [G(t - t_minus) + cos(Theta) G(t - t_plus)]
// so that Omega_P/Omega_C -> 0 at early times and -> e^{i alpha} tan(Theta)
// at late times, freezing the mixing angle at Theta.
StirapScenario make_fstirap_scenario(double Theta, double alpha, double omega0, double tau,
                                     double tau_delay, int points = 2001);

// Propagates |g> under the scenario's pulses (master equation when decay is
// set). Summary carries final populations, max transient P_e, the
// adiabaticity margin and the pulse area.
Trajectory run_stirap(const StirapScenario& s);

struct IntuitiveResonantResult {
    std::array<double, 3> analytic; // (P_g, P_e, P_s) = (0, sin^2 A, cos^2 A)
    std::array<double, 3> numeric;
    double area = 0.0;
    double margin = 0.0;
};

// Threshold above which the analytic resonant-intuitive result is compared
// against propagation.
inline constexpr double adiabatic_margin_threshold = 10.0;

// Resonant (Delta = delta = 0) intuitive-order transfer: P_s = cos^2 A,
// P_e = sin^2 A, P_g = 0 with A the pulse area. Preconditions: resonance,
// intuitive ordering, adiabaticity margin above threshold.
IntuitiveResonantResult run_intuitive_resonant(const StirapScenario& s);

struct FstirapResult {
    Trajectory trajectory;
    Eigen::Vector3cd target; // cos(Theta)|g> - e^{i alpha} sin(Theta)|s>
    double fidelity = 0.0;   // |<target|psi_final>|^2
};

// Runs the fractional-STIRAP scenario and reports the fidelity with the
// frozen dark state. Verifies the asymptotic pulse-ratio conditions.
FstirapResult run_fstirap(double Theta, double alpha, const StirapScenario& s);

// CPT dark-state populations (|c_g|^2, 0, |c_s|^2) =
// (Omega_C^2, 0, Omega_P^2)/Omega_rms^2.
std::array<double, 3> cpt_populations(double Omega_P, double Omega_C);

// Scales the pulse amplitude of an intuitive resonant scenario so that its
// area equals `target_area` (bisection on the multiplicative factor).
StirapScenario tune_intuitive_area(double target_area, double tau, double delay, int points = 2001);

} // namespace qisim
