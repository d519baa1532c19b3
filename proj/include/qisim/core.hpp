#pragma once

#include <complex>
#include <Eigen/Dense>

#include "qisim/errors.hpp"

// Shared numeric types for the three-level atom simulations and the
// statevector algorithm demos.
//
// Level ordering is fixed as (g, e, s) everywhere in this library. All
// rates and frequencies are dimensionless, expressed in units of a
// reference rate (by convention Gamma_e = 1).

namespace qisim {

using complexd = std::complex<double>;

inline constexpr complexd imag_unit{0.0, 1.0};

// Absolute tolerance for state normalization and Hermiticity checks.
inline constexpr double norm_tol = 1e-12;

// Indices into the (g, e, s) basis.
enum Level : int { level_g = 0, level_e = 1, level_s = 2 };

// Complex amplitude vector. Dimension is 3 for atomic states or 2^n
// (n <= 12) for the algorithm demos.
class QuantumState {
public:
    // Validates dimension and finiteness; does not rescale.
    explicit QuantumState(Eigen::VectorXcd amplitudes);

    static QuantumState three_level(complexd c_g, complexd c_e, complexd c_s);

    // Basis vector |k> in a dim-dimensional space.
    static QuantumState basis(Eigen::Index dim, Eigen::Index k);

    // Rescales the input to unit norm. Throws if the input is (near) zero.
    static QuantumState normalized(Eigen::VectorXcd amplitudes);

    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    Eigen::Index dim() const { return amps_.size(); }

    Eigen::Vector3cd three() const;

    double norm_sq() const { return amps_.squaredNorm(); }
    bool is_normalized(double tol = norm_tol) const;

private:
    Eigen::VectorXcd amps_;
};

// Sum of squared moduli. Invariant under a global phase.
double state_norm(const QuantumState& psi);

// 3x3 Hermitian, unit-trace, positive-semidefinite (to tolerance) matrix.
class DensityMatrix {
public:
    // Validates Hermiticity (1e-12), trace (1e-12) and eigenvalue
    // positivity (>= -1e-10).
    explicit DensityMatrix(const Eigen::Matrix3cd& rho);

    static DensityMatrix basis_projector(Level k);

    const Eigen::Matrix3cd& matrix() const { return rho_; }

    double population(Level k) const { return rho_(k, k).real(); }
    double trace() const { return rho_.trace().real(); }
    double purity() const { return (rho_ * rho_).trace().real(); }

private:
    Eigen::Matrix3cd rho_;
};

// rho = |psi><psi|. Requires a normalized three-level state.
DensityMatrix density_from_pure(const QuantumState& psi);

// Population decay rates of the three levels plus the transit rate used by
// the V-type steady state. gamma(i, j) = (Gamma_i + Gamma_j)/2 is always
// derived, never stored.
struct DecayRates {
    double Gamma_g = 0.0;
    double Gamma_e = 0.0;
    double Gamma_s = 0.0;
    double Gamma_t = 0.0;

    void validate() const;

    double gamma(Level i, Level j) const;
    double rate(Level k) const;

    // diag(Gamma_g, Gamma_e, Gamma_s)
    Eigen::Matrix3cd gamma_hat() const;
};

} // namespace qisim
