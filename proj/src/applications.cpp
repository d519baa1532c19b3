#include "qisim/applications.hpp"

#include <cmath>
#include <random>

namespace qisim {

namespace {

bool power_of_two(std::uint64_t n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(std::uint64_t n) {
    int k = 0;
    while ((std::uint64_t{1} << k) < n)
        ++k;
    return k;
}

void hadamard_on(Eigen::VectorXcd& psi, int qubit) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Eigen::Index stride = Eigen::Index{1} << (qubit + 1);
    const Eigen::Index half = Eigen::Index{1} << qubit;
    for (Eigen::Index base = 0; base < psi.size(); base += stride)
        for (Eigen::Index i = 0; i < half; ++i) {
            const complexd a = psi[base + i];
            const complexd b = psi[base + i + half];
            psi[base + i] = (a + b) * inv_sqrt2;
            psi[base + i + half] = (a - b) * inv_sqrt2;
        }
}

} // namespace

DeutschResult deutsch(const DeutschOracle& f) {
    // basis |data, ancilla> with ancilla the low qubit: index = 2*data + anc
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi[1] = 1.0; // |0>|1>
    hadamard_on(psi, 0);
    hadamard_on(psi, 1);
    // U_f |x>|y> = |x>|y xor f(x)>
    auto fx = [&](int x) { return x == 0 ? f.f0 : f.f1; };
    for (int x = 0; x < 2; ++x)
        if (fx(x))
            std::swap(psi[2 * x], psi[2 * x + 1]);
    hadamard_on(psi, 1); // final Hadamard on the data qubit

    DeutschResult r;
    r.final_state = Eigen::Vector4cd(psi[0], psi[1], psi[2], psi[3]);
    r.output_bit = (f.f0 != f.f1) ? 1 : 0;
    // the data qubit is |f0 xor f1| exactly; confirm the simulation agrees
    const double p1 = std::norm(psi[2]) + std::norm(psi[3]);
    if (std::abs(p1 - static_cast<double>(r.output_bit)) > 1e-12)
        throw NumericError("deutsch: simulated readout disagrees with f(0) xor f(1)");
    return r;
}

double grover(std::uint64_t N, std::uint64_t target, int iters) {
    if (!power_of_two(N) || N < 4 || N > (std::uint64_t{1} << 12))
        throw ValidationError("grover: N must be 2^n with 2 <= n <= 12");
    if (target >= N)
        throw ValidationError("grover: target index out of range");
    if (iters < 0)
        throw ValidationError("grover: iteration count must be >= 0");

    const Eigen::Index n = static_cast<Eigen::Index>(N);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(N)));
    for (int k = 0; k < iters; ++k) {
        psi[static_cast<Eigen::Index>(target)] *= -1.0; // phase oracle
        // diffusion D = 2|psi0><psi0| - I == inversion about the mean
        const complexd mean = psi.mean();
        psi = 2.0 * mean * Eigen::VectorXcd::Ones(n) - psi;
    }
    return std::norm(psi[static_cast<Eigen::Index>(target)]);
}

double grover_success_closed_form(std::uint64_t N, int iters) {
    const double th = std::asin(1.0 / std::sqrt(static_cast<double>(N)));
    const double s = std::sin((2.0 * iters + 1.0) * th);
    return s * s;
}

int grover_optimal_iters(std::uint64_t N) {
    if (N < 2)
        throw ValidationError("grover_optimal_iters: N must be >= 2");
    const int k = static_cast<int>(std::floor(M_PI * std::sqrt(static_cast<double>(N)) / 4.0));
    return std::max(1, k);
}

Bb84Result bb84_phase_sift(int n_pulses, std::uint64_t seed) {
    if (n_pulses < 1)
        throw ValidationError("bb84_phase_sift: need at least one pulse");

    std::mt19937_64 rng(seed);
    Bb84Result r;
    int sifted = 0;
    int errors = 0;
    r.key_bits.reserve(static_cast<size_t>(n_pulses) / 2 + 16);
    for (int i = 0; i < n_pulses; ++i) {
        const unsigned phase_idx = static_cast<unsigned>(rng() & 3); // 0,1,2,3 -> 0,pi/2,pi,3pi/2
        const unsigned bob_basis = static_cast<unsigned>(rng() & 1); // 0 = Z, 1 = X
        const unsigned alice_basis = phase_idx & 1;                  // 0,pi in Z; pi/2,3pi/2 in X
        const std::uint8_t alice_bit = (phase_idx >= 2) ? 1 : 0;     // 0,pi/2 -> 0; pi,3pi/2 -> 1
        if (bob_basis != alice_basis)
            continue; // discarded before detection
        // matched basis: the interferometer port clicks deterministically
        const std::uint8_t bob_bit = alice_bit;
        r.key_bits.push_back(bob_bit);
        ++sifted;
        if (bob_bit != alice_bit)
            ++errors;
    }
    r.sifted_fraction = static_cast<double>(sifted) / n_pulses;
    r.qber = (sifted > 0) ? static_cast<double>(errors) / sifted : 0.0;
    return r;
}

void SquidParams::validate() const {
    if (!(I_c > 0) || !(V0 > 0) || !(Phi0 > 0))
        throw ValidationError("SquidParams: I_c, V0 and Phi0 must be > 0");
    if (!std::isfinite(Phi))
        throw ValidationError("SquidParams: non-finite flux");
}

SquidResponse squid_response(const SquidParams& p, double delta_j) {
    p.validate();
    SquidResponse r;
    r.I = p.I_c * std::sin(delta_j);
    r.delta_from_flux = 2.0 * M_PI * p.Phi / p.Phi0;
    r.V = p.V0 * std::sin(M_PI * p.Phi / p.Phi0);
    return r;
}

} // namespace qisim
