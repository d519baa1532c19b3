#include "qisim/giant_atoms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace qisim {

namespace {

struct PhaseLayout {
    std::vector<double> a;
    std::vector<double> b;
};

PhaseLayout layout_for(TopologyKind kind, double phi) {
    switch (kind) {
        case TopologyKind::SmallPair:
            return {{0.0}, {phi}};
        case TopologyKind::Separate:
            return {{0.0, phi}, {2.0 * phi, 3.0 * phi}};
        case TopologyKind::Braided:
            return {{0.0, phi}, {0.5 * phi, 1.5 * phi}};
        case TopologyKind::Nested:
            return {{0.0, 3.0 * phi}, {phi, 2.0 * phi}};
    }
    throw ValidationError("giant_atoms: unknown topology kind");
}

std::string pattern_of(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::SmallPair: return "ab";
        case TopologyKind::Separate: return "aabb";
        case TopologyKind::Braided: return "abab";
        case TopologyKind::Nested: return "abba";
    }
    throw ValidationError("giant_atoms: unknown topology kind");
}

} // namespace

Topology Topology::make(TopologyKind kind, double spacing, double Gamma_pt, double omega_a,
                        double v) {
    if (!(spacing > 0))
        throw ValidationError("Topology::make: spacing must be > 0");
    Topology t;
    t.kind = kind;
    t.Gamma_pt = Gamma_pt;
    t.omega_a = omega_a;
    t.v = v;
    const std::string pat = pattern_of(kind);
    for (size_t i = 0; i < pat.size(); ++i) {
        const double x = spacing * static_cast<double>(i);
        (pat[i] == 'a' ? t.points_a : t.points_b).push_back(x);
    }
    t.validate();
    return t;
}

void Topology::validate() const {
    if (Gamma_pt < 0)
        throw ValidationError("Topology: Gamma_pt must be >= 0");
    if (!(v > 0))
        throw ValidationError("Topology: propagation velocity must be > 0");
    const std::string pat = pattern_of(kind);
    if (points_a.size() + points_b.size() != pat.size())
        throw ValidationError("Topology: wrong number of coupling points for the kind");

    // merge and check the ordering string
    std::vector<std::pair<double, char>> merged;
    for (double x : points_a)
        merged.push_back({x, 'a'});
    for (double x : points_b)
        merged.push_back({x, 'b'});
    std::sort(merged.begin(), merged.end());
    for (size_t i = 1; i < merged.size(); ++i)
        if (!(merged[i].first > merged[i - 1].first))
            throw ValidationError("Topology: coupling points must be strictly increasing");
    std::string order;
    for (const auto& [x, tag] : merged)
        order.push_back(tag);
    if (order != pat)
        throw ValidationError("Topology: point ordering '" + order + "' does not match '" + pat +
                              "'");
}

double propagation_phase(double omega_a, double v, double x_j, double x_k) {
    if (!(v > 0))
        throw ValidationError("propagation_phase: velocity must be > 0");
    return (omega_a / v) * std::abs(x_j - x_k);
}

CollectiveRates collective_rates(const Topology& t, double phi) {
    t.validate();

    // the layout model assumes one spacing parameter
    std::vector<double> xs;
    xs.insert(xs.end(), t.points_a.begin(), t.points_a.end());
    xs.insert(xs.end(), t.points_b.begin(), t.points_b.end());
    std::sort(xs.begin(), xs.end());
    if (xs.size() > 2) {
        const double d0 = xs[1] - xs[0];
        for (size_t i = 2; i < xs.size(); ++i)
            if (std::abs((xs[i] - xs[i - 1]) - d0) > 1e-9 * std::max(1.0, std::abs(d0)))
                throw UnsupportedConfigError(
                    "collective_rates: only uniformly spaced coupling points are supported");
    }

    const PhaseLayout L = layout_for(t.kind, phi);
    auto amplitude = [](const std::vector<double>& phases) {
        complexd a{0.0, 0.0};
        for (double ph : phases)
            a += std::exp(imag_unit * ph);
        return a;
    };
    const complexd A = amplitude(L.a);
    const complexd B = amplitude(L.b);

    complexd S{0.0, 0.0};
    for (double pa : L.a)
        for (double pb : L.b)
            S += std::exp(imag_unit * std::abs(pa - pb));

    CollectiveRates r;
    r.Gamma_a = t.Gamma_pt * std::norm(A);
    r.Gamma_b = t.Gamma_pt * std::norm(B);
    r.Gamma_coll = 0.5 * t.Gamma_pt * std::norm(A + B);
    r.g = 0.5 * t.Gamma_pt * S.imag();
    return r;
}

std::vector<double> decoherence_free_points(const Topology& t, std::span<const double> phi_grid) {
    std::vector<double> out;
    for (double phi : phi_grid) {
        const CollectiveRates r = collective_rates(t, phi);
        if (std::max(r.Gamma_a, r.Gamma_b) < 1e-10 * t.Gamma_pt &&
            std::abs(r.g) > 1e-6 * t.Gamma_pt)
            out.push_back(phi);
    }
    return out;
}

} // namespace qisim
