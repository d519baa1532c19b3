#include "qisim/protocols.hpp"

#include <cmath>

namespace qisim {

namespace {

// H(t) from the pulse pair. The chirped variant reads its detunings off the
// instantaneous-detuning bookkeeping; the static variants use the pair's
// stored values. delta enters with the sign convention of the static
// Hamiltonian, i.e. the |s><s| coefficient is -delta(static) and
// +delta_inst(t) for the chirped case (delta_inst reduces to -delta).
HamiltonianFn hamiltonian_of(const StirapScenario& s) {
    return [&s](double t) {
        SchemeConfig c;
        c.scheme = s.scheme;
        c.convention = s.convention;
        c.Omega_P = s.pair.pump.eval(t);
        c.Omega_C = s.pair.coupling.eval(t);
        if (s.variant == StirapVariant::Chirped) {
            const auto d = s.pair.instantaneous_detunings(t);
            c.Delta1 = d.Delta;
            // place the instantaneous two-photon detuning directly
            Eigen::Matrix3cd H = build_hamiltonian(c);
            H(level_s, level_s) = d.delta;
            return H;
        }
        c.Delta1 = s.pair.Delta1;
        c.Delta2 = s.pair.Delta2;
        Eigen::Matrix3cd H = build_hamiltonian(c);
        H(level_s, level_s) = -s.pair.delta;
        return H;
    };
}

} // namespace

void StirapScenario::validate() const {
    if (grid.size() < 3)
        throw ValidationError("StirapScenario: grid needs at least 3 points");
    const double t_p = pair.pump.center();
    const double t_c = pair.coupling.center();
    if (ordering == PulseOrdering::Counterintuitive && !(t_c < t_p))
        throw ValidationError("StirapScenario: counterintuitive order requires t_C < t_P");
    if (ordering == PulseOrdering::Intuitive && !(t_p < t_c))
        throw ValidationError("StirapScenario: intuitive order requires t_P < t_C");
    if (decay)
        decay->validate();
}

StirapScenario make_stirap_scenario(double omega0, double tau, double delay, double Delta,
                                    double delta, PulseOrdering ordering, int points) {
    if (!(tau > 0) || !(delay > 0))
        throw ValidationError("make_stirap_scenario: tau and delay must be > 0");
    const double half = 0.5 * delay;
    // C precedes P for the counterintuitive order
    const double t_c = (ordering == PulseOrdering::Counterintuitive) ? -half : +half;
    const double t_p = -t_c;

    StirapScenario s;
    s.ordering = ordering;
    s.pair.pump = PulseShape::gaussian(omega0, t_p, tau);
    s.pair.coupling = PulseShape::gaussian(omega0, t_c, tau);
    s.pair.Delta1 = Delta;
    s.pair.Delta2 = Delta - delta; // Lambda convention delta = Delta1 - Delta2
    s.pair.delta = delta;
    s.pair.t_p = t_p;
    s.pair.t_c = t_c;
    const double t0 = std::min(t_p, t_c) - gaussian_cutoff * tau;
    const double t1 = std::max(t_p, t_c) + gaussian_cutoff * tau;
    s.grid = linspace(t0, t1, points);
    return s;
}

StirapScenario make_chirped_stirap_scenario(double omega0, double tau, double delay, double Delta,
                                            double delta, double chirp, int points) {
    StirapScenario s =
        make_stirap_scenario(omega0, tau, delay, Delta, delta, PulseOrdering::Counterintuitive, points);
    s.variant = StirapVariant::Chirped;
    s.pair.pump = PulseShape::chirped_gaussian(omega0, s.pair.t_p, tau, chirp);
    s.pair.coupling = PulseShape::chirped_gaussian(omega0, s.pair.t_c, tau, chirp);
    s.pair.chirp_p = chirp;
    s.pair.chirp_c = chirp;
    return s;
}

StirapScenario make_fstirap_scenario(double Theta, double alpha, double omega0, double tau,
                                     double tau_delay, int points) {
    if (Theta < 0 || Theta > M_PI / 2)
        throw ValidationError("make_fstirap_scenario: Theta must be in [0, pi/2]");
    StirapScenario s;
    s.ordering = PulseOrdering::Counterintuitive;
    s.variant = StirapVariant::Fractional;
    s.fractional_theta = Theta;
    s.fractional_phase = alpha;

    const double t_minus = -0.5 * tau_delay; // early C lobe
    const double t_plus = +0.5 * tau_delay;  // late P lobe and second C lobe
    s.pair.pump = PulseShape::gaussian(omega0 * std::sin(Theta), t_plus, tau)
                      .scaled(std::exp(imag_unit * alpha));
    // two-lobe coupling envelope keeps the late-time ratio at tan(Theta)
    s.pair.coupling = PulseShape::sum(PulseShape::gaussian(omega0, t_minus, tau),
                                      PulseShape::gaussian(omega0 * std::cos(Theta), t_plus, tau));
    s.pair.t_p = t_plus;
    s.pair.t_c = t_minus;
    s.grid = linspace(t_minus - gaussian_cutoff * tau, t_plus + gaussian_cutoff * tau, points);
    return s;
}

Trajectory run_stirap(const StirapScenario& s) {
    s.validate();
    const auto H = hamiltonian_of(s);
    Trajectory tr;
    if (s.decay) {
        tr = evolve_master(H, *s.decay, DensityMatrix::basis_projector(level_g), s.grid, s.tol,
                           s.repopulation);
    } else {
        tr = evolve_schrodinger(H, QuantumState::basis(3, level_g), s.grid, s.tol);
    }
    tr.summary.adiabaticity_margin = adiabaticity_margin(s.pair, s.grid);
    tr.summary.pulse_area = pulse_area(s.pair, s.grid);
    return tr;
}

IntuitiveResonantResult run_intuitive_resonant(const StirapScenario& s) {
    s.validate();
    if (s.ordering != PulseOrdering::Intuitive)
        throw ValidationError("run_intuitive_resonant: ordering must be intuitive");
    if (std::abs(s.pair.Delta1) > 1e-12 || std::abs(s.pair.delta) > 1e-12)
        throw ValidationError("run_intuitive_resonant: requires Delta = delta = 0");

    IntuitiveResonantResult r;
    r.margin = adiabaticity_margin(s.pair, s.grid);
    if (!(r.margin > adiabatic_margin_threshold))
        throw ValidationError("run_intuitive_resonant: adiabaticity margin " +
                              std::to_string(r.margin) + " below threshold");
    r.area = pulse_area(s.pair, s.grid);
    const double c = std::cos(r.area), si = std::sin(r.area);
    r.analytic = {0.0, si * si, c * c};
    const Trajectory tr = run_stirap(s);
    r.numeric = {tr.summary.final_P_g, tr.summary.final_P_e, tr.summary.final_P_s};
    return r;
}

FstirapResult run_fstirap(double Theta, double alpha, const StirapScenario& s) {
    if (s.variant != StirapVariant::Fractional)
        throw ValidationError("run_fstirap: scenario is not fractional");

    // asymptotic-ratio conditions: Omega_P/Omega_C -> 0 early and
    // -> e^{i alpha} tan(Theta) late
    const double w = s.pair.pump.width();
    const double t_lo = std::max(s.grid.front(), s.pair.t_c - 2.0 * w);
    const double t_hi = std::min(s.grid.back(), s.pair.t_p + 2.0 * w);
    const complexd p_lo = s.pair.pump.eval(t_lo), c_lo = s.pair.coupling.eval(t_lo);
    if (std::abs(c_lo) > 0 && std::abs(p_lo / c_lo) > 2e-2)
        throw ValidationError("run_fstirap: early-time pulse ratio is not ~0");
    const complexd p_hi = s.pair.pump.eval(t_hi), c_hi = s.pair.coupling.eval(t_hi);
    const double tan_theta = std::tan(Theta);
    if (Theta < M_PI / 2 - 1e-9) {
        const complexd want = std::exp(imag_unit * alpha) * tan_theta;
        if (std::abs(c_hi) == 0.0 || std::abs(p_hi / c_hi - want) > 2e-2 * (1.0 + tan_theta))
            throw ValidationError("run_fstirap: late-time pulse ratio is not e^{i alpha} tan(Theta)");
    } else if (std::abs(p_hi) == 0.0 || std::abs(c_hi / p_hi) > 2e-2) {
        throw ValidationError("run_fstirap: late-time pulse ratio is not e^{i alpha} tan(Theta)");
    }

    const Trajectory tr = run_stirap(s);

    FstirapResult r;
    r.trajectory = tr;
    r.target = Eigen::Vector3cd(std::cos(Theta), 0.0,
                                -std::exp(imag_unit * alpha) * std::sin(Theta));
    const Eigen::Vector3cd psi = tr.states.back();
    r.fidelity = std::norm(r.target.dot(psi));
    return r;
}

std::array<double, 3> cpt_populations(double Omega_P, double Omega_C) {
    const double rms2 = Omega_P * Omega_P + Omega_C * Omega_C;
    if (rms2 == 0.0)
        throw DegenerateDriveError("cpt_populations: Omega_P = Omega_C = 0");
    return {Omega_C * Omega_C / rms2, 0.0, Omega_P * Omega_P / rms2};
}

StirapScenario tune_intuitive_area(double target_area, double tau, double delay, int points) {
    if (!(target_area > 0))
        throw ValidationError("tune_intuitive_area: target area must be > 0");
    auto area_for = [&](double omega0) {
        StirapScenario s =
            make_stirap_scenario(omega0, tau, delay, 0.0, 0.0, PulseOrdering::Intuitive, points);
        return pulse_area(s.pair, s.grid);
    };
    // the area is linear in omega0, one division does it
    const double a1 = area_for(1.0);
    const double omega0 = target_area / a1;
    return make_stirap_scenario(omega0, tau, delay, 0.0, 0.0, PulseOrdering::Intuitive, points);
}

} // namespace qisim
