#pragma once

#include <cstdint>
#include <vector>

#include "qisim/core.hpp"

// Desk-scale statevector demos: Deutsch's algorithm, Grover search, the
// phase-encoded BB84 sifting statistics, and the dc-SQUID response formulas.

namespace qisim {

struct DeutschOracle {
    bool f0 = false;
    bool f1 = false;
};

struct DeutschResult {
    int output_bit = 0;            // f(0) XOR f(1)
    Eigen::Vector4cd final_state;  // |data, ancilla> basis 00,01,10,11
};

// Two-qubit circuit H(x)H, U_f, H on the data qubit; the data qubit reads
// out f(0) xor f(1) deterministically and the ancilla stays (|0>-|1>)/sqrt(2)
// up to a global sign.
DeutschResult deutsch(const DeutschOracle& f);

// Grover statevector simulation: uniform superposition, then `iters` rounds
// of phase oracle + diffusion (inversion about the mean). Returns the
// success probability |<w|psi>|^2.
double grover(std::uint64_t N, std::uint64_t target, int iters);

// sin^2((2k+1) arcsin(1/sqrt(N))), the closed-form rotation result.
double grover_success_closed_form(std::uint64_t N, int iters);

// floor(pi sqrt(N)/4), at least 1.
int grover_optimal_iters(std::uint64_t N);

struct Bb84Result {
    double sifted_fraction = 0.0;
    std::vector<std::uint8_t> key_bits; // Bob's sifted bits
    double qber = 0.0;
};

// Phase-encoded BB84 sifting with an ideal channel. Alice draws phases
// uniformly from {0, pi/2, pi, 3pi/2}; 0 and pi form the Z basis, pi/2 and
// 3pi/2 the X basis; phases {0, pi/2} encode bit 0 and {pi, 3pi/2} bit 1.
// Matching-basis rounds decode deterministically through the interferometer
// port selection, mismatched rounds are discarded before detection.
//
// Randomness: mt19937_64 seeded with `seed`; per round, Alice's phase index
// is drawn as (next() & 3) and Bob's basis as (next() & 1), in that order.
Bb84Result bb84_phase_sift(int n_pulses, std::uint64_t seed);

struct SquidParams {
    double I_c = 1.0;  // critical current
    double V0 = 1.0;   // peak voltage
    double Phi = 0.0;  // applied flux
    double Phi0 = 1.0; // flux quantum

    void validate() const;
};

struct SquidResponse {
    double I = 0.0;               // I_c sin(delta_j)
    double delta_from_flux = 0.0; // 2 pi Phi / Phi0
    double V = 0.0;               // V0 sin(pi Phi / Phi0)
};

SquidResponse squid_response(const SquidParams& p, double delta_j);

} // namespace qisim
