#pragma once

#include <array>

#include "qisim/core.hpp"

// RWA interaction-picture Hamiltonians for the Lambda, ladder (Xi) and V
// schemes, and the analytic dressed-state machinery built on them.
//
// Two coupling conventions coexist in the literature and in this library:
//   Full: H = -[Delta1 |e><e| + delta |s><s|] - [Omega_P |e><g| + ... + h.c.]
//   Half: same detuning placement, couplings Omega/2.
// The dressed-state analytics (eigensystem_cpt, STIRAP) use Full; the EIT
// steady-state formulas use Half. For the same physical drive,
// Omega_Full = Omega_Half / 2; see omega_full_from_half.

namespace qisim {

enum class Scheme { Lambda, Ladder, Vee };

enum class CouplingConvention { Full, Half };

constexpr double omega_full_from_half(double omega_half) { return omega_half / 2.0; }

struct SchemeConfig {
    Scheme scheme = Scheme::Lambda;
    double Delta1 = 0.0;
    double Delta2 = 0.0;
    complexd Omega_P{0.0, 0.0};
    complexd Omega_C{0.0, 0.0};
    CouplingConvention convention = CouplingConvention::Full;

    // Lambda, Vee: Delta1 - Delta2; ladder: Delta1 + Delta2.
    double two_photon_detuning() const;
};

// 3x3 Hermitian matrix in the (g, e, s) basis, hbar = 1.
Eigen::Matrix3cd build_hamiltonian(const SchemeConfig& config);

// Dressed states of the Lambda Hamiltonian at two-photon resonance with
// real drives. theta and phi are the mixing angles
//   tan(theta)  = Omega_P / Omega_C
//   tan(2 phi)  = Omega_rms / Delta,   0 <= phi <= pi/2.
struct Eigensystem {
    double lambda_0 = 0.0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    Eigen::Vector3cd dark;
    Eigen::Vector3cd bright_plus;
    Eigen::Vector3cd bright_minus;
    double theta = 0.0;
    double phi = 0.0;
    double omega_rms = 0.0;
    double omega_bar = 0.0;
    bool theta_degenerate = false;
};

// Eigenfrequencies lambda_0 = 0, lambda_pm = -Delta/2 +- Omega_bar with
// Omega_bar = sqrt(Omega_P^2 + Omega_C^2 + (Delta/2)^2), dark state
// D = (Omega_C |g> - Omega_P |s>)/Omega_rms and bright states
// B_pm = (Omega_P |g> - lambda_pm |e> + Omega_C |s>)/N_pm (Full convention).
// Throws DegenerateDriveError when both drives vanish.
Eigensystem eigensystem_cpt(double Omega_P, double Omega_C, double Delta);

struct MixingAngles {
    double theta = 0.0;
    double phi = 0.0;
    bool theta_degenerate = false;
};

// theta = atan2(Omega_P, Omega_C) (set to 0 and flagged when both drives are
// zero); phi = atan2(Omega_rms, Delta)/2 on the branch [0, pi/2].
MixingAngles mixing_angles(double Omega_P, double Omega_C, double Delta);

// Dressed doublets {omega_g +- Omega/2, omega_e +- Omega/2}, ascending.
std::array<double, 4> autler_townes_levels(double omega_g, double omega_e, double Omega);

// Columns are (B_-, D, B_+) written in the (g, e, s) basis from the mixing
// angles:
//   B_+ = sin(th) sin(ph) |g> + cos(ph) |e> + cos(th) sin(ph) |s>
//   D   = cos(th) |g> - sin(th) |s>
//   B_- = sin(th) cos(ph) |g> - sin(ph) |e> + cos(th) cos(ph) |s>
Eigen::Matrix3d adiabatic_basis_matrix(double theta, double phi);

// c = R(theta, phi) a for normalized adiabatic amplitudes a = (a_-, a_0, a_+).
Eigen::Vector3cd adiabatic_to_diabatic(const Eigensystem& eig, const Eigen::Vector3cd& adiabatic);

// c_e = (Omega_P c_g + Omega_C c_s)/(Delta + i Gamma_e). Valid in the
// dispersive regime where the intermediate level can be eliminated.
complexd adiabatic_elimination_ce(complexd c_g, complexd c_s, double Omega_P, double Omega_C,
                                  double Delta, double Gamma_e);

// V-type dark state cos(th)|s> - sin(th)|e>, a superposition of the two
// upper levels with no ground-state component.
Eigen::Vector3cd vee_dark_state(double Omega_P, double Omega_C);

} // namespace qisim
