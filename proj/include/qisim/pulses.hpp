#pragma once

#include <memory>
#include <span>

#include "qisim/core.hpp"

// Time-dependent Rabi envelopes for the pump (P) and coupling (C) fields,
// plus the chirp-induced time-dependent detunings.

namespace qisim {

// Gaussians are clamped to zero beyond this many widths from the center.
inline constexpr double gaussian_cutoff = 4.0;

class PulseShape {
public:
    enum class Kind { Constant, Gaussian, ChirpedGaussian, DelayedCopy, Sum };

    static PulseShape constant(double omega0);
    static PulseShape gaussian(double omega0, double t0, double tau);
    // The chirp rate alters the instantaneous detunings, not the envelope;
    // see PulsePair::instantaneous_detunings.
    static PulseShape chirped_gaussian(double omega0, double t0, double tau, double chirp_rate);
    // beta * base(t - tau_delay) * exp(i * carrier_phase), the delayed-copy
    // composition used for temporal coherent control. carrier_phase stands
    // for omega_L * tau_delay; the absolute carrier frequency is never fixed
    // here, so the phase is an explicit parameter.
    static PulseShape delayed_copy(PulseShape base, double beta_ratio, double tau_delay,
                                   double carrier_phase);
    // Two-lobe composition a(t) + b(t) (e.g. the fractional-STIRAP coupling
    // envelope).
    static PulseShape sum(PulseShape a, PulseShape b);

    // Scale the envelope amplitude by a complex factor (used to imprint a
    // constant field phase, e.g. the F-STIRAP phase alpha).
    PulseShape scaled(complexd factor) const;

    complexd eval(double t) const;

    Kind kind() const { return kind_; }
    double peak() const { return omega0_; }
    // Sum: center of the earlier lobe; DelayedCopy: shifted base center.
    double center() const;
    double width() const;
    double chirp_rate() const { return chirp_; }

private:
    PulseShape() = default;

    Kind kind_ = Kind::Constant;
    double omega0_ = 0.0;
    double t0_ = 0.0;
    double tau_ = 1.0;
    double chirp_ = 0.0;
    double beta_ = 0.0;
    double delay_ = 0.0;
    double phase_ = 0.0;
    complexd scale_{1.0, 0.0};
    std::shared_ptr<const PulseShape> base_;
    std::shared_ptr<const PulseShape> base2_;
};

complexd eval_envelope(const PulseShape& shape, double t);

// A P/C pulse pair with its static detunings and chirp bookkeeping.
// `delta` is the static two-photon detuning in the convention of the module
// that built the pair (Lambda: Delta1 - Delta2; ladder: Delta1 + Delta2).
struct PulsePair {
    PulseShape pump = PulseShape::constant(0.0);     // P, drives g-e
    PulseShape coupling = PulseShape::constant(0.0); // C, drives e-s
    double Delta1 = 0.0;
    double Delta2 = 0.0;
    double delta = 0.0;
    double chirp_p = 0.0;
    double chirp_c = 0.0;
    double t_p = 0.0; // chirp reference centers
    double t_c = 0.0;

    struct Detunings {
        double Delta;
        double delta;
    };

    // Delta(t) = Delta - alpha_P (t - t_P)
    // delta(t) = -delta + alpha_C (t - t_C) - alpha_P (t - t_P)
    // Affine in t; reduces to (Delta, -delta) when both chirps vanish.
    Detunings instantaneous_detunings(double t) const;
};

// A = integral of sqrt(|Omega_P|^2 + |Omega_C|^2) over the grid, composite
// Simpson. Grid must be sorted ascending with at least 2 points.
double pulse_area(const PulsePair& pair, std::span<const double> grid);

// Uniform grid helper: n points from t0 to t1 inclusive.
std::vector<double> linspace(double t0, double t1, int n);

} // namespace qisim
