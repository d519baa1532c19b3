#include "qisim/core.hpp"

#include <cmath>

namespace qisim {

namespace {

bool power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

void check_finite(const Eigen::VectorXcd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
            throw ValidationError("QuantumState: non-finite amplitude at index " + std::to_string(i));
    }
}

} // namespace

QuantumState::QuantumState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    const Eigen::Index n = amps_.size();
    // 3 levels for atoms, 2^n (n <= 12) for the algorithm demos
    if (n != 3 && !(power_of_two(n) && n >= 2 && n <= 4096))
        throw ValidationError("QuantumState: dimension must be 3 or 2^n with 1 <= n <= 12, got " +
                              std::to_string(n));
    check_finite(amps_);
}

QuantumState QuantumState::three_level(complexd c_g, complexd c_e, complexd c_s) {
    Eigen::VectorXcd v(3);
    v << c_g, c_e, c_s;
    return QuantumState(std::move(v));
}

QuantumState QuantumState::basis(Eigen::Index dim, Eigen::Index k) {
    if (k < 0 || k >= dim)
        throw ValidationError("QuantumState::basis: index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v[k] = 1.0;
    return QuantumState(std::move(v));
}

QuantumState QuantumState::normalized(Eigen::VectorXcd amplitudes) {
    check_finite(amplitudes);
    const double n = amplitudes.norm();
    if (n < 1e-300)
        throw ValidationError("QuantumState::normalized: zero vector");
    return QuantumState(amplitudes / n);
}

Eigen::Vector3cd QuantumState::three() const {
    if (dim() != 3)
        throw ValidationError("QuantumState::three: state is not three-level");
    return Eigen::Vector3cd(amps_[0], amps_[1], amps_[2]);
}

bool QuantumState::is_normalized(double tol) const {
    return std::abs(norm_sq() - 1.0) <= tol;
}

double state_norm(const QuantumState& psi) { return psi.norm_sq(); }

DensityMatrix::DensityMatrix(const Eigen::Matrix3cd& rho) : rho_(rho) {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > norm_tol)
        throw ValidationError("DensityMatrix: not Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > norm_tol || std::abs(rho_.trace().imag()) > norm_tol)
        throw ValidationError("DensityMatrix: trace != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw ValidationError("DensityMatrix: negative eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()));
}

DensityMatrix DensityMatrix::basis_projector(Level k) {
    Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
    rho(k, k) = 1.0;
    return DensityMatrix(rho);
}

DensityMatrix density_from_pure(const QuantumState& psi) {
    if (!psi.is_normalized())
        throw ValidationError("density_from_pure: state not normalized");
    const Eigen::Vector3cd v = psi.three();
    return DensityMatrix(v * v.adjoint());
}

void DecayRates::validate() const {
    if (Gamma_g < 0 || Gamma_e < 0 || Gamma_s < 0 || Gamma_t < 0)
        throw ValidationError("DecayRates: rates must be >= 0");
}

double DecayRates::rate(Level k) const {
    switch (k) {
        case level_g: return Gamma_g;
        case level_e: return Gamma_e;
        case level_s: return Gamma_s;
    }
    throw ValidationError("DecayRates::rate: bad level");
}

double DecayRates::gamma(Level i, Level j) const {
    return 0.5 * (rate(i) + rate(j));
}

Eigen::Matrix3cd DecayRates::gamma_hat() const {
    Eigen::Matrix3cd g = Eigen::Matrix3cd::Zero();
    g(level_g, level_g) = Gamma_g;
    g(level_e, level_e) = Gamma_e;
    g(level_s, level_s) = Gamma_s;
    return g;
}

} // namespace qisim
