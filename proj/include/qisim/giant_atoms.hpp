#pragma once

#include <span>
#include <vector>

#include "qisim/core.hpp"

// Two emitters coupled to a 1D waveguide at one or two points each. The
// Markovian amplitude-sum model assigns every coupling point a propagation
// phase and builds rates from coherent sums over the points:
//
//   Gamma_atom = Gamma_pt |sum_k e^{i phi_k}|^2
//   S_ab       = sum_{j in a, k in b} e^{i |phi_j - phi_k|}
//   g          = (Gamma_pt/2) Im(S_ab)
//   Gamma_coll = (Gamma_pt/2) |A + B|^2   (superradiant-mode rate)
//
// phi parameterizes the layouts so that the points of one atom are one phase
// unit apart:
//   SmallPair  ab    a: {0}          b: {phi}
//   Separate   aabb  a: {0, phi}     b: {2 phi, 3 phi}
//   Braided    abab  a: {0, phi}     b: {phi/2, 3 phi/2}
//   Nested     abba  a: {0, 3 phi}   b: {phi, 2 phi}
// Braided atoms then decouple from the waveguide at phi = (2n+1) pi while
// keeping a nonzero exchange g, the decoherence-free working point.

namespace qisim {

enum class TopologyKind { SmallPair, Separate, Braided, Nested };

struct Topology {
    TopologyKind kind = TopologyKind::SmallPair;
    std::vector<double> points_a; // coupling-point positions along the guide
    std::vector<double> points_b;
    double Gamma_pt = 1.0; // bare per-point rate
    double omega_a = 1.0;  // transition frequency
    double v = 1.0;        // propagation velocity

    // Canonical uniformly spaced layout for the kind (spacing d between
    // consecutive points along the guide).
    static Topology make(TopologyKind kind, double spacing, double Gamma_pt = 1.0,
                         double omega_a = 1.0, double v = 1.0);

    // Checks the interleaving pattern and strict ordering of the positions.
    void validate() const;
};

// phi = (omega_a / v) |x_j - x_k|
double propagation_phase(double omega_a, double v, double x_j, double x_k);

struct CollectiveRates {
    double Gamma_a = 0.0;
    double Gamma_b = 0.0;
    double Gamma_coll = 0.0;
    double g = 0.0;
};

// Rates at coupling phase phi under the layout table above. Requires the
// topology's stored positions to be uniformly spaced.
CollectiveRates collective_rates(const Topology& t, double phi);

// Grid points where max(Gamma_a, Gamma_b) < 1e-10 Gamma_pt while
// |g| > 1e-6 Gamma_pt.
std::vector<double> decoherence_free_points(const Topology& t, std::span<const double> phi_grid);

} // namespace qisim
