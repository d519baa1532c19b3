#include "qisim/interferometry.hpp"

#include <cmath>

namespace qisim {

void FringeInputs::validate() const {
    if (I1 < 0 || I2 < 0)
        throw ValidationError("FringeInputs: intensities must be >= 0");
    if (std::abs(g1) > 1.0 + 1e-12)
        throw ValidationError("FringeInputs: |g1| must be <= 1");
    if (!std::isfinite(phase))
        throw ValidationError("FringeInputs: non-finite phase");
}

double fringe_intensity(const FringeInputs& f) {
    f.validate();
    return f.I1 + f.I2 + 2.0 * std::sqrt(f.I1 * f.I2) * std::abs(f.g1) * std::cos(f.phase);
}

double visibility(double Imax, double Imin) {
    if (!(Imax >= Imin) || Imin < 0)
        throw ValidationError("visibility: need Imax >= Imin >= 0");
    const double sum = Imax + Imin;
    if (sum == 0.0)
        throw ValidationError("visibility: Imax + Imin = 0, undefined");
    return (Imax - Imin) / sum;
}

double visibility_from_g1(double I1, double I2, double g1_abs) {
    if (I1 < 0 || I2 < 0 || g1_abs < 0 || g1_abs > 1.0 + 1e-12)
        throw ValidationError("visibility_from_g1: bad inputs");
    const double sum = I1 + I2;
    if (sum == 0.0)
        throw ValidationError("visibility_from_g1: I1 + I2 = 0, undefined");
    return g1_abs * 2.0 * std::sqrt(I1 * I2) / sum;
}

PhotonStatistics g2_classify(double g2_zero) {
    if (g2_zero < 0)
        throw ValidationError("g2_classify: g2(0) must be >= 0");
    if (std::abs(g2_zero - 1.0) <= 1e-9)
        return PhotonStatistics::Coherent;
    return g2_zero < 1.0 ? PhotonStatistics::Nonclassical : PhotonStatistics::Bunched;
}

Eigen::Matrix2cd rotation_pulse(double theta, double phi_laser) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    Eigen::Matrix2cd R;
    R << c, -s * std::exp(imag_unit * phi_laser),
         s * std::exp(-imag_unit * phi_laser), c;
    return R;
}

double mz_probability(double phi1, double phi2, double phi3) {
    return 0.5 * (1.0 - std::cos(phi1 - 2.0 * phi2 + phi3));
}

double mz_probability_matrix(double phi1, double phi2, double phi3) {
    const Eigen::Vector2cd g(1.0, 0.0);
    const Eigen::Vector2cd out = rotation_pulse(M_PI / 2, phi3) *
                                 (rotation_pulse(M_PI, phi2) * (rotation_pulse(M_PI / 2, phi1) * g));
    return std::norm(out[1]);
}

double gravity_phase(double k_eff, double accel, double T) {
    if (T < 0)
        throw ValidationError("gravity_phase: T must be >= 0");
    return k_eff * accel * T * T;
}

double ramsey_probability(double phi_e, double phi_g, double phi1, double phi2) {
    return 0.5 * (1.0 + std::cos(phi_e - phi_g + phi1 - phi2));
}

double ramsey_probability_matrix(double phi_e, double phi_g, double phi1, double phi2) {
    PulseSequence seq;
    seq.steps.push_back({M_PI / 2, phi1, 0.0, 0.0});
    seq.steps.push_back({M_PI / 2, phi2, phi_g, phi_e});
    const Eigen::Vector2cd out = seq.apply(Eigen::Vector2cd(1.0, 0.0));
    return std::norm(out[1]);
}

void PulseSequence::validate() const {
    if (steps.empty())
        throw ValidationError("PulseSequence: empty sequence");
}

Eigen::Vector2cd PulseSequence::apply(const Eigen::Vector2cd& psi0) const {
    validate();
    Eigen::Vector2cd psi = psi0;
    for (const Step& st : steps) {
        Eigen::Matrix2cd free = Eigen::Matrix2cd::Identity();
        free(0, 0) = std::exp(-imag_unit * st.free_phase_g);
        free(1, 1) = std::exp(-imag_unit * st.free_phase_e);
        const double theta = std::fmod(std::fmod(st.theta, 2.0 * M_PI) + 2.0 * M_PI, 2.0 * M_PI);
        psi = rotation_pulse(theta, st.phi_laser) * (free * psi);
    }
    return psi;
}

std::vector<std::optional<double>> bragg_angles(double lambda_laser, double lambda_de_broglie,
                                                int n_max) {
    if (!(lambda_laser > 0) || !(lambda_de_broglie > 0))
        throw ValidationError("bragg_angles: wavelengths must be > 0");
    if (n_max < 1)
        throw ValidationError("bragg_angles: n_max must be >= 1");
    std::vector<std::optional<double>> out;
    out.reserve(static_cast<size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const double arg = n * lambda_de_broglie / lambda_laser;
        if (arg <= 1.0)
            out.push_back(std::asin(arg));
        else
            out.push_back(std::nullopt);
    }
    return out;
}

double raman_kick(double p, double k1, double k2, double hbar) {
    return p + hbar * (k1 - k2);
}

LatticeDepth lattice_potential_depth(double Omega0, double Delta) {
    if (Delta == 0.0)
        throw SingularityError("lattice_potential_depth: Delta = 0 (resonant drive)");
    return {Omega0 * Omega0 / (4.0 * Delta), Omega0 * Omega0 / (8.0 * Delta)};
}

} // namespace qisim
