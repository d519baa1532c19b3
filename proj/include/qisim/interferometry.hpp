#pragma once

#include <optional>
#include <vector>

#include "qisim/core.hpp"

// Optical coherence and visibility, and the two-state pulse algebra of the
// Mach-Zehnder and Ramsey-Borde atom interferometers. Basis order is
// (|g>, |s>); momentum labels are bookkeeping on the paths, so no kinetic
// phases are computed here.

namespace qisim {

struct FringeInputs {
    double I1 = 0.0;
    double I2 = 0.0;
    complexd g1{1.0, 0.0}; // first-order coherence, |g1| <= 1
    double phase = 0.0;

    void validate() const;
};

// I = I1 + I2 + 2 sqrt(I1 I2) |g1| cos(phase)
double fringe_intensity(const FringeInputs& f);

// (Imax - Imin)/(Imax + Imin)
double visibility(double Imax, double Imin);

// V = |g1| 2 sqrt(I1 I2)/(I1 + I2); equals |g1| iff I1 = I2
double visibility_from_g1(double I1, double I2, double g1_abs);

enum class PhotonStatistics { Nonclassical, Coherent, Bunched };

// g2(0) < 1: nonclassical (antibunched); = 1 (within 1e-9): coherent;
// > 1: bunched (thermal-like).
PhotonStatistics g2_classify(double g2_zero);

// Rotation by theta with the laser phase imprinted on the transferred |s>
// amplitude:
//   [[cos(t/2), -sin(t/2) e^{+i phi}], [sin(t/2) e^{-i phi}, cos(t/2)]]
// theta = pi/2 is a 50-50 beam splitter, theta = pi a mirror.
Eigen::Matrix2cd rotation_pulse(double theta, double phi_laser);

// P_s = (1 - cos(phi1 - 2 phi2 + phi3))/2 for the pi/2 - pi - pi/2 sequence.
double mz_probability(double phi1, double phi2, double phi3);

// Same quantity from the explicit pulse-matrix product (independent route).
double mz_probability_matrix(double phi1, double phi2, double phi3);

// Delta phi = k_eff a T^2
double gravity_phase(double k_eff, double accel, double T);

// P_s = (1 + cos(phi_e - phi_g + phi1 - phi2))/2 for pi/2 - free - pi/2.
double ramsey_probability(double phi_e, double phi_g, double phi1, double phi2);

double ramsey_probability_matrix(double phi_e, double phi_g, double phi1, double phi2);

// Ordered pulse sequence with free-evolution phases accumulated before each
// pulse; the generic matrix-product engine behind the closed forms above.
struct PulseSequence {
    struct Step {
        double theta = 0.0;
        double phi_laser = 0.0;
        // phases acquired during the free flight preceding this pulse
        double free_phase_g = 0.0;
        double free_phase_e = 0.0;
    };
    std::vector<Step> steps;

    void validate() const;
    Eigen::Vector2cd apply(const Eigen::Vector2cd& psi0) const;
};

// theta_n = arcsin(n lambda_dB / lambda_L) for n = 1..n_max; orders with
// arcsin argument > 1 are reported absent.
std::vector<std::optional<double>> bragg_angles(double lambda_laser, double lambda_de_broglie,
                                                int n_max);

// p + hbar (k1 - k2); counter-propagating beams of equal magnitude give 2 hbar k.
double raman_kick(double p, double k1, double k2, double hbar = 1.0);

struct LatticeDepth {
    double v_eff_amplitude = 0.0; // hbar Omega0^2 / (4 Delta)
    double v0 = 0.0;              // hbar Omega0^2 / (8 Delta)
};

LatticeDepth lattice_potential_depth(double Omega0, double Delta);

} // namespace qisim
