#include "qisim/hamiltonians.hpp"

#include <algorithm>
#include <cmath>

namespace qisim {

double SchemeConfig::two_photon_detuning() const {
    switch (scheme) {
        case Scheme::Lambda:
        case Scheme::Vee:
            return Delta1 - Delta2;
        case Scheme::Ladder:
            return Delta1 + Delta2;
    }
    throw ValidationError("SchemeConfig: unknown scheme");
}

Eigen::Matrix3cd build_hamiltonian(const SchemeConfig& c) {
    const double delta = c.two_photon_detuning();
    const double half = (c.convention == CouplingConvention::Half) ? 0.5 : 1.0;
    const complexd wp = half * c.Omega_P;
    const complexd wc = half * c.Omega_C;

    Eigen::Matrix3cd H = Eigen::Matrix3cd::Zero();
    H(level_e, level_e) = -c.Delta1;
    H(level_s, level_s) = -delta;

    auto couple = [&H](complexd omega, Level i, Level j) {
        H(i, j) += -omega;
        H(j, i) += -std::conj(omega);
    };

    switch (c.scheme) {
        case Scheme::Lambda: // P on g-e, C on e-s
            couple(wp, level_e, level_g);
            couple(wc, level_e, level_s);
            break;
        case Scheme::Ladder: // P on g-e, C on the upper s-e leg
            couple(wp, level_e, level_g);
            couple(wc, level_s, level_e);
            break;
        case Scheme::Vee: // both upper levels share the ground state
            couple(wp, level_e, level_g);
            couple(wc, level_s, level_g);
            break;
        default:
            throw ValidationError("build_hamiltonian: unknown scheme");
    }
    return H;
}

MixingAngles mixing_angles(double Omega_P, double Omega_C, double Delta) {
    MixingAngles m;
    const double rms = std::hypot(Omega_P, Omega_C);
    if (rms == 0.0) {
        m.theta = 0.0;
        m.theta_degenerate = true;
    } else {
        m.theta = std::atan2(Omega_P, Omega_C);
    }
    m.phi = 0.5 * std::atan2(rms, Delta);
    return m;
}

Eigensystem eigensystem_cpt(double Omega_P, double Omega_C, double Delta) {
    const double rms2 = Omega_P * Omega_P + Omega_C * Omega_C;
    if (rms2 == 0.0)
        throw DegenerateDriveError("eigensystem_cpt: Omega_P = Omega_C = 0, dark state undefined");

    Eigensystem e;
    e.omega_rms = std::sqrt(rms2);
    e.omega_bar = std::sqrt(rms2 + 0.25 * Delta * Delta);
    e.lambda_0 = 0.0;
    e.lambda_plus = -0.5 * Delta + e.omega_bar;
    e.lambda_minus = -0.5 * Delta - e.omega_bar;

    e.dark = Eigen::Vector3cd(Omega_C / e.omega_rms, 0.0, -Omega_P / e.omega_rms);

    auto bright = [&](double lambda) {
        const double n = std::sqrt(rms2 + lambda * lambda);
        return Eigen::Vector3cd(Omega_P / n, -lambda / n, Omega_C / n);
    };
    e.bright_plus = bright(e.lambda_plus);
    e.bright_minus = bright(e.lambda_minus);

    const MixingAngles m = mixing_angles(Omega_P, Omega_C, Delta);
    e.theta = m.theta;
    e.phi = m.phi;
    e.theta_degenerate = m.theta_degenerate;
    return e;
}

std::array<double, 4> autler_townes_levels(double omega_g, double omega_e, double Omega) {
    if (Omega < 0)
        throw ValidationError("autler_townes_levels: Omega must be >= 0");
    std::array<double, 4> lv = {omega_g - 0.5 * Omega, omega_g + 0.5 * Omega,
                                omega_e - 0.5 * Omega, omega_e + 0.5 * Omega};
    std::sort(lv.begin(), lv.end());
    return lv;
}

Eigen::Matrix3d adiabatic_basis_matrix(double theta, double phi) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    Eigen::Matrix3d R;
    // columns: B_-, D, B_+
    R << st * cp, ct, st * sp,
         -sp,     0.0, cp,
         ct * cp, -st, ct * sp;
    return R;
}

Eigen::Vector3cd adiabatic_to_diabatic(const Eigensystem& eig, const Eigen::Vector3cd& a) {
    if (std::abs(a.squaredNorm() - 1.0) > norm_tol)
        throw ValidationError("adiabatic_to_diabatic: amplitudes not normalized");
    return adiabatic_basis_matrix(eig.theta, eig.phi).cast<complexd>() * a;
}

complexd adiabatic_elimination_ce(complexd c_g, complexd c_s, double Omega_P, double Omega_C,
                                  double Delta, double Gamma_e) {
    const complexd denom(Delta, Gamma_e);
    if (std::abs(denom) == 0.0)
        throw SingularityError("adiabatic_elimination_ce: Delta = Gamma_e = 0");
    return (Omega_P * c_g + Omega_C * c_s) / denom;
}

Eigen::Vector3cd vee_dark_state(double Omega_P, double Omega_C) {
    const MixingAngles m = mixing_angles(Omega_P, Omega_C, 0.0);
    if (m.theta_degenerate)
        throw DegenerateDriveError("vee_dark_state: Omega_P = Omega_C = 0");
    return Eigen::Vector3cd(0.0, -std::sin(m.theta), std::cos(m.theta));
}

} // namespace qisim
