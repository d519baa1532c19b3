#include "qisim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "qisim/applications.hpp"
#include "qisim/eit.hpp"
#include "qisim/giant_atoms.hpp"
#include "qisim/interferometry.hpp"
#include "qisim/protocols.hpp"
#include "qisim/version.hpp"

namespace qisim::scenario {

namespace {

namespace fs = std::filesystem;

std::string fmt_double(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

// Strict-access view of a JSON object: every key must be consumed, unknown
// keys are parse errors.
class Obj {
public:
    Obj(const json& j, std::string where) : j_(&j), where_(std::move(where)) {
        if (!j.is_object())
            throw ParseError("expected an object", where_);
    }

    bool has(const char* key) const { return j_->contains(key); }

    double num(const char* key) const {
        require(key);
        return as_num(key);
    }
    double num_or(const char* key, double def) const {
        if (!has(key))
            return def;
        return as_num(key);
    }
    long long integer(const char* key) const {
        require(key);
        return as_int(key);
    }
    long long integer_or(const char* key, long long def) const {
        if (!has(key))
            return def;
        return as_int(key);
    }
    bool boolean_or(const char* key, bool def) const {
        if (!has(key))
            return def;
        used_.insert(key);
        const json& v = (*j_)[key];
        if (!v.is_boolean())
            throw ParseError("expected a boolean", where_ + "/" + key);
        return v.get<bool>();
    }
    std::string str(const char* key) const {
        require(key);
        return as_str(key);
    }
    std::string str_or(const char* key, const std::string& def) const {
        if (!has(key))
            return def;
        return as_str(key);
    }
    std::optional<double> num_opt(const char* key) const {
        if (!has(key))
            return std::nullopt;
        return as_num(key);
    }

    Obj child(const char* key) const {
        require(key);
        used_.insert(key);
        return Obj((*j_)[key], where_ + "/" + key);
    }
    std::optional<Obj> child_opt(const char* key) const {
        if (!has(key))
            return std::nullopt;
        used_.insert(key);
        return Obj((*j_)[key], where_ + "/" + key);
    }

    // rejects unconsumed keys
    void done() const {
        for (const auto& item : j_->items())
            if (!used_.count(item.key()))
                throw ParseError("unknown key '" + item.key() + "'", where_ + "/" + item.key());
    }

    const std::string& where() const { return where_; }

private:
    void require(const char* key) const {
        if (!has(key))
            throw ParseError("missing required key '" + std::string(key) + "'", where_);
    }
    double as_num(const char* key) const {
        used_.insert(key);
        const json& v = (*j_)[key];
        if (!v.is_number())
            throw ParseError("expected a number", where_ + "/" + key);
        return v.get<double>();
    }
    long long as_int(const char* key) const {
        used_.insert(key);
        const json& v = (*j_)[key];
        if (!v.is_number_integer())
            throw ParseError("expected an integer", where_ + "/" + key);
        return v.get<long long>();
    }
    std::string as_str(const char* key) const {
        used_.insert(key);
        const json& v = (*j_)[key];
        if (!v.is_string())
            throw ParseError("expected a string", where_ + "/" + key);
        return v.get<std::string>();
    }

    const json* j_;
    std::string where_;
    mutable std::set<std::string> used_;
};

// CSV with a named-and-described column schema mirrored into the summary.
class Csv {
public:
    explicit Csv(std::vector<std::pair<std::string, std::string>> columns)
        : columns_(std::move(columns)) {
        for (size_t i = 0; i < columns_.size(); ++i) {
            if (i)
                header_ += ',';
            header_ += columns_[i].first;
        }
    }

    void row(std::initializer_list<double> vals) {
        if (vals.size() != columns_.size())
            throw NumericError("csv row arity mismatch");
        std::string line;
        size_t i = 0;
        for (double v : vals) {
            if (i++)
                line += ',';
            line += fmt_double(v);
        }
        body_ += line;
        body_ += '\n';
        ++rows_;
    }

    json schema() const {
        json cols = json::array();
        for (const auto& [name, desc] : columns_)
            cols.push_back({{"name", name}, {"description", desc}});
        return json{{"columns", cols}, {"rows", rows_}};
    }

    void write(const fs::path& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw IoError("cannot open " + path.string() + " for writing");
        out << header_ << '\n' << body_;
        if (!out)
            throw IoError("failed writing " + path.string());
    }

private:
    std::vector<std::pair<std::string, std::string>> columns_;
    std::string header_;
    std::string body_;
    size_t rows_ = 0;
};

json ode_tolerances() {
    return json{{"ode_rel", Tolerances{}.rel}, {"ode_abs", Tolerances{}.abs}};
}

std::vector<double> grid_from(const Obj& g, double def_min, double def_max, int def_points) {
    const double lo = g.num_or("min", def_min);
    const double hi = g.num_or("max", def_max);
    const int n = static_cast<int>(g.integer_or("points", def_points));
    g.done();
    if (!(hi > lo))
        throw ParseError("grid max must exceed min", g.where());
    if (n < 2)
        throw ParseError("grid needs at least 2 points", g.where());
    return linspace(lo, hi, n);
}

PulseOrdering ordering_from(const std::string& s, const std::string& where) {
    if (s == "counterintuitive")
        return PulseOrdering::Counterintuitive;
    if (s == "intuitive")
        return PulseOrdering::Intuitive;
    throw ParseError("ordering must be 'counterintuitive' or 'intuitive'", where);
}

Scheme scheme_from(const std::string& s, const std::string& where) {
    if (s == "lambda")
        return Scheme::Lambda;
    if (s == "ladder")
        return Scheme::Ladder;
    if (s == "vee")
        return Scheme::Vee;
    throw ParseError("scheme must be 'lambda', 'ladder' or 'vee'", where);
}

TopologyKind topology_from(const std::string& s, const std::string& where) {
    if (s == "small-pair")
        return TopologyKind::SmallPair;
    if (s == "separate")
        return TopologyKind::Separate;
    if (s == "braided")
        return TopologyKind::Braided;
    if (s == "nested")
        return TopologyKind::Nested;
    throw ParseError("topology must be one of small-pair, separate, braided, nested", where);
}

struct KindOutput {
    Csv csv;
    json results;
    json extra; // merged into the summary root (e.g. tolerances)
};

KindOutput run_kind_stirap(const Obj& root) {
    const Obj params = root.child("params");
    const double omega0 = params.num("omega0");
    const double tau = params.num_or("tau", 1.0);
    const double delay = params.num_or("delay", 1.2 * tau);
    const double Delta = params.num_or("Delta", 0.0);
    const double delta = params.num_or("delta", 0.0);
    const PulseOrdering ordering =
        ordering_from(params.str_or("ordering", "counterintuitive"), params.where() + "/ordering");
    const std::optional<double> chirp = params.num_opt("chirp");
    const double Gamma_e = params.num_or("Gamma_e", 0.0);
    const bool repopulate = params.boolean_or("repopulate", false);
    const double branch = params.num_or("branch_to_g", 0.5);
    params.done();

    int points = 2001;
    if (auto g = root.child_opt("grid")) {
        points = static_cast<int>(g->integer_or("points", 2001));
        g->done();
    }

    StirapScenario s = chirp ? make_chirped_stirap_scenario(omega0, tau, delay, Delta, delta,
                                                            *chirp, points)
                             : make_stirap_scenario(omega0, tau, delay, Delta, delta, ordering,
                                                    points);
    if (chirp && ordering != PulseOrdering::Counterintuitive)
        throw ParseError("chirped scenarios use the counterintuitive order",
                         params.where() + "/ordering");
    if (Gamma_e > 0) {
        s.decay = DecayRates{0.0, Gamma_e, 0.0, 0.0};
        if (repopulate)
            s.repopulation = Repopulation::lambda_decay(Gamma_e, branch);
    }

    const Trajectory tr = run_stirap(s);

    Csv csv({{"t", "time in units of 1/reference rate"},
             {"P_g", "population of |g>"},
             {"P_e", "population of |e>"},
             {"P_s", "population of |s>"},
             {"norm", "state norm (unitary) or trace (dissipative)"}});
    for (size_t i = 0; i < tr.times.size(); ++i) {
        const auto& p = tr.populations[i];
        csv.row({tr.times[i], p[0], p[1], p[2], p[0] + p[1] + p[2]});
    }

    json results{{"final_P_g", tr.summary.final_P_g},
                 {"final_P_e", tr.summary.final_P_e},
                 {"final_P_s", tr.summary.final_P_s},
                 {"max_P_e", tr.summary.max_P_e},
                 {"adiabaticity_margin", tr.summary.adiabaticity_margin},
                 {"pulse_area", tr.summary.pulse_area},
                 {"norm_drift", tr.summary.norm_drift}};
    return {std::move(csv), std::move(results), json{{"tolerances", ode_tolerances()}}};
}

KindOutput run_kind_fstirap(const Obj& root) {
    const Obj params = root.child("params");
    const double Theta = params.num("Theta");
    const double alpha = params.num_or("alpha", 0.0);
    const double omega0 = params.num_or("omega0", 40.0);
    const double tau = params.num_or("tau", 1.0);
    const double tau_delay = params.num_or("tau_delay", 1.6 * tau);
    params.done();
    int points = 2001;
    if (auto g = root.child_opt("grid")) {
        points = static_cast<int>(g->integer_or("points", 2001));
        g->done();
    }

    const StirapScenario s = make_fstirap_scenario(Theta, alpha, omega0, tau, tau_delay, points);
    const FstirapResult r = run_fstirap(Theta, alpha, s);

    Csv csv({{"t", "time in units of 1/reference rate"},
             {"P_g", "population of |g>"},
             {"P_e", "population of |e>"},
             {"P_s", "population of |s>"}});
    for (size_t i = 0; i < r.trajectory.times.size(); ++i) {
        const auto& p = r.trajectory.populations[i];
        csv.row({r.trajectory.times[i], p[0], p[1], p[2]});
    }
    json results{{"final_P_g", r.trajectory.summary.final_P_g},
                 {"final_P_e", r.trajectory.summary.final_P_e},
                 {"final_P_s", r.trajectory.summary.final_P_s},
                 {"fidelity", r.fidelity},
                 {"adiabaticity_margin", r.trajectory.summary.adiabaticity_margin}};
    return {std::move(csv), std::move(results), json{{"tolerances", ode_tolerances()}}};
}

KindOutput run_kind_cpt(const Obj& root) {
    const Obj params = root.child("params");
    const double wp = params.num("Omega_P");
    const double wc = params.num("Omega_C");
    const double Delta = params.num_or("Delta", 0.0);
    params.done();

    const Eigensystem e = eigensystem_cpt(wp, wc, Delta);
    const auto pops = cpt_populations(wp, wc);

    Csv csv({{"branch", "-1: B_-, 0: dark, +1: B_+"},
             {"lambda", "eigenfrequency"},
             {"re_g", "Re <g|state>"},
             {"im_g", "Im <g|state>"},
             {"re_e", "Re <e|state>"},
             {"im_e", "Im <e|state>"},
             {"re_s", "Re <s|state>"},
             {"im_s", "Im <s|state>"}});
    auto emit = [&](double branch, double lambda, const Eigen::Vector3cd& v) {
        csv.row({branch, lambda, v[0].real(), v[0].imag(), v[1].real(), v[1].imag(), v[2].real(),
                 v[2].imag()});
    };
    emit(-1.0, e.lambda_minus, e.bright_minus);
    emit(0.0, e.lambda_0, e.dark);
    emit(+1.0, e.lambda_plus, e.bright_plus);

    json results{{"P_g", pops[0]},          {"P_e", pops[1]},
                 {"P_s", pops[2]},          {"theta", e.theta},
                 {"phi", e.phi},            {"lambda_0", e.lambda_0},
                 {"lambda_plus", e.lambda_plus}, {"lambda_minus", e.lambda_minus},
                 {"omega_rms", e.omega_rms}, {"omega_bar", e.omega_bar}};
    return {std::move(csv), std::move(results), json::object()};
}

KindOutput run_kind_eit_scan(const Obj& root) {
    const Obj params = root.child("params");
    EitParams p;
    p.scheme = scheme_from(params.str_or("scheme", "lambda"), params.where() + "/scheme");
    p.kappa_scale = params.num_or("kappa_scale", 1.0);
    p.Omega_P = params.num_or("Omega_P", 0.01);
    p.Omega_C = params.num_or("Omega_C", 1.0);
    p.Delta_C = params.num_or("Delta_C", 0.0);
    p.Gamma_g = params.num_or("Gamma_g", 0.0);
    p.Gamma_e = params.num_or("Gamma_e", 1.0);
    p.Gamma_s = params.num_or("Gamma_s", 0.0);
    p.Gamma_t = params.num_or("Gamma_t",
                              p.scheme == Scheme::Vee ? 0.01 * p.Gamma_s : 0.0);
    if (auto gsg = params.num_opt("Gamma_sg"))
        p.Gamma_sg = *gsg;
    const bool with_numeric = params.boolean_or("with_numeric", false);
    params.done();

    const std::vector<double> grid = grid_from(root.child("grid"), -10.0, 10.0, 401);
    const Spectrum sp = transparency_scan(p, grid, with_numeric);

    std::vector<std::pair<std::string, std::string>> cols = {
        {"delta", "scanned detuning (two-photon for lambda/ladder, probe for vee)"},
        {"alpha", "absorption Im(chi)"},
        {"beta", "dispersion Re(chi)/2"},
        {"re_chi", "Re of the susceptibility"},
        {"im_chi", "Im of the susceptibility"}};
    if (with_numeric)
        cols.push_back({"alpha_numeric", "absorption from the numeric steady state"});
    Csv csv(cols);
    int poles = 0;
    for (size_t i = 0; i < sp.deltas.size(); ++i) {
        if (!sp.notes[i].empty())
            ++poles;
        if (with_numeric)
            csv.row({sp.deltas[i], sp.alpha[i], sp.beta[i], sp.chi[i].real(), sp.chi[i].imag(),
                     sp.alpha_numeric[i]});
        else
            csv.row({sp.deltas[i], sp.alpha[i], sp.beta[i], sp.chi[i].real(), sp.chi[i].imag()});
    }

    json results{{"alpha_at_zero", sp.alpha_at_zero}, {"pole_points", poles}};
    if (std::isfinite(sp.dip_fwhm))
        results["dip_fwhm"] = sp.dip_fwhm;
    return {std::move(csv), std::move(results), json::object()};
}

// shared scan helper for the phase-algebra kinds
struct PhaseScan {
    std::string param;
    std::vector<double> values;
};

std::optional<PhaseScan> scan_from(const Obj& root, const std::set<std::string>& allowed) {
    auto s = root.child_opt("scan");
    if (!s)
        return std::nullopt;
    PhaseScan ps;
    ps.param = s->str("param");
    if (!allowed.count(ps.param))
        throw ParseError("scan param '" + ps.param + "' is not scannable here",
                         s->where() + "/param");
    const double lo = s->num_or("min", 0.0);
    const double hi = s->num_or("max", 2.0 * M_PI);
    const int n = static_cast<int>(s->integer_or("points", 361));
    s->done();
    if (n < 2 || !(hi > lo))
        throw ParseError("bad scan range", s->where());
    ps.values = linspace(lo, hi, n);
    return ps;
}

KindOutput run_kind_interferometer(const Obj& root) {
    const Obj params = root.child("params");
    double phi1 = params.num_or("phi1", 0.0);
    double phi2 = params.num_or("phi2", 0.0);
    double phi3 = params.num_or("phi3", 0.0);
    const std::optional<double> k_eff = params.num_opt("k_eff");
    const std::optional<double> accel = params.num_opt("accel");
    const std::optional<double> T = params.num_opt("T");
    params.done();
    const auto scan = scan_from(root, {"phi1", "phi2", "phi3"});

    Csv csv({{"phi1", "laser phase of the first pi/2 pulse"},
             {"phi2", "laser phase of the pi pulse"},
             {"phi3", "laser phase of the final pi/2 pulse"},
             {"P_s", "closed-form probability of |s>"},
             {"P_s_matrix", "matrix-product probability of |s>"}});
    auto emit = [&](double a, double b, double c) {
        csv.row({a, b, c, mz_probability(a, b, c), mz_probability_matrix(a, b, c)});
    };
    if (scan) {
        for (double v : scan->values) {
            double a = phi1, b = phi2, c = phi3;
            (scan->param == "phi1" ? a : scan->param == "phi2" ? b : c) = v;
            emit(a, b, c);
        }
    } else {
        emit(phi1, phi2, phi3);
    }

    json results{{"P_s", mz_probability(phi1, phi2, phi3)}};
    if (k_eff && accel && T) {
        const double dphi = gravity_phase(*k_eff, *accel, *T);
        results["gravity_phase"] = dphi;
        results["P_s_gravity"] = 0.5 * (1.0 - std::cos(dphi));
    }
    return {std::move(csv), std::move(results), json::object()};
}

KindOutput run_kind_ramsey(const Obj& root) {
    const Obj params = root.child("params");
    double phi_e = params.num_or("phi_e", 0.0);
    double phi_g = params.num_or("phi_g", 0.0);
    double phi1 = params.num_or("phi1", 0.0);
    double phi2 = params.num_or("phi2", 0.0);
    params.done();
    const auto scan = scan_from(root, {"phi_e", "phi_g", "phi1", "phi2"});

    Csv csv({{"phi_e", "free-evolution phase of the excited path"},
             {"phi_g", "free-evolution phase of the ground path"},
             {"phi1", "laser phase of the first pi/2 pulse"},
             {"phi2", "laser phase of the second pi/2 pulse"},
             {"P_s", "closed-form probability of |s>"},
             {"P_s_matrix", "matrix-product probability of |s>"}});
    auto emit = [&](double e, double g, double p1, double p2) {
        csv.row({e, g, p1, p2, ramsey_probability(e, g, p1, p2),
                 ramsey_probability_matrix(e, g, p1, p2)});
    };
    if (scan) {
        for (double v : scan->values) {
            double e = phi_e, g = phi_g, p1 = phi1, p2 = phi2;
            if (scan->param == "phi_e")
                e = v;
            else if (scan->param == "phi_g")
                g = v;
            else if (scan->param == "phi1")
                p1 = v;
            else
                p2 = v;
            emit(e, g, p1, p2);
        }
    } else {
        emit(phi_e, phi_g, phi1, phi2);
    }

    json results{{"P_s", ramsey_probability(phi_e, phi_g, phi1, phi2)}};
    return {std::move(csv), std::move(results), json::object()};
}

KindOutput run_kind_giant(const Obj& root) {
    const Obj params = root.child("params");
    const TopologyKind kind =
        topology_from(params.str("topology"), params.where() + "/topology");
    const double Gamma_pt = params.num_or("Gamma_pt", 1.0);
    const double spacing = params.num_or("spacing", 1.0);
    const double omega_a = params.num_or("omega_a", 1.0);
    const double v = params.num_or("v", 1.0);
    params.done();

    std::vector<double> grid;
    if (auto g = root.child_opt("grid"))
        grid = grid_from(*g, 0.0, 2.0 * M_PI, 1001);
    else
        grid = linspace(0.0, 2.0 * M_PI, 1001);

    const Topology t = Topology::make(kind, spacing, Gamma_pt, omega_a, v);

    Csv csv({{"phi", "propagation phase between layout steps"},
             {"Gamma_a", "individual relaxation rate of atom a"},
             {"Gamma_b", "individual relaxation rate of atom b"},
             {"Gamma_coll", "superradiant-mode collective rate"},
             {"g", "coherent exchange rate"}});
    for (double phi : grid) {
        const CollectiveRates r = collective_rates(t, phi);
        csv.row({phi, r.Gamma_a, r.Gamma_b, r.Gamma_coll, r.g});
    }

    const std::vector<double> df = decoherence_free_points(t, grid);
    json results{{"decoherence_free_points", df}, {"n_decoherence_free", df.size()}};
    return {std::move(csv), std::move(results), json::object()};
}

KindOutput run_kind_grover(const Obj& root) {
    const Obj params = root.child("params");
    const long long n_qubits = params.integer("n_qubits");
    const long long target = params.integer("target");
    if (n_qubits < 2 || n_qubits > 12)
        throw ParseError("n_qubits must be in [2, 12]", params.where() + "/n_qubits");
    const std::uint64_t N = std::uint64_t{1} << n_qubits;
    const long long iters = params.integer_or("iters", grover_optimal_iters(N));
    params.done();
    if (target < 0 || static_cast<std::uint64_t>(target) >= N)
        throw ParseError("target out of range", params.where() + "/target");
    if (iters < 0)
        throw ParseError("iters must be >= 0", params.where() + "/iters");

    Csv csv({{"iteration", "number of oracle+diffusion rounds applied"},
             {"probability", "statevector success probability"},
             {"closed_form", "rotation-formula success probability"}});
    for (long long k = 0; k <= iters; ++k)
        csv.row({static_cast<double>(k), grover(N, static_cast<std::uint64_t>(target), static_cast<int>(k)),
                 grover_success_closed_form(N, static_cast<int>(k))});

    json results{{"N", N},
                 {"success_probability", grover(N, static_cast<std::uint64_t>(target), static_cast<int>(iters))},
                 {"iters", iters},
                 {"optimal_iters", grover_optimal_iters(N)}};
    return {std::move(csv), std::move(results), json::object()};
}

KindOutput run_kind_deutsch(const Obj& root) {
    const Obj params = root.child("params");
    const long long f0 = params.integer("f0");
    const long long f1 = params.integer("f1");
    params.done();
    if ((f0 != 0 && f0 != 1) || (f1 != 0 && f1 != 1))
        throw ParseError("f0 and f1 must be 0 or 1", params.where());

    const DeutschResult r = deutsch({f0 == 1, f1 == 1});
    Csv csv({{"f0", "oracle truth table entry f(0)"},
             {"f1", "oracle truth table entry f(1)"},
             {"output", "measured data-qubit value f(0) xor f(1)"}});
    csv.row({static_cast<double>(f0), static_cast<double>(f1),
             static_cast<double>(r.output_bit)});

    json results{{"output_bit", r.output_bit},
                 {"oracle_type", r.output_bit == 0 ? "constant" : "balanced"}};
    return {std::move(csv), std::move(results), json::object()};
}

KindOutput run_kind_bb84(const Obj& root, std::uint64_t seed) {
    const Obj params = root.child("params");
    const long long n = params.integer("n_pulses");
    params.done();
    if (n < 1)
        throw ParseError("n_pulses must be >= 1", params.where() + "/n_pulses");

    const Bb84Result r = bb84_phase_sift(static_cast<int>(n), seed);

    Csv csv({{"index", "sifted-bit index"}, {"bit", "key bit"}});
    for (size_t i = 0; i < r.key_bits.size(); ++i)
        csv.row({static_cast<double>(i), static_cast<double>(r.key_bits[i])});

    std::string prefix;
    for (size_t i = 0; i < std::min<size_t>(64, r.key_bits.size()); ++i)
        prefix += r.key_bits[i] ? '1' : '0';
    json results{{"sifted_fraction", r.sifted_fraction},
                 {"qber", r.qber},
                 {"n_sifted", r.key_bits.size()},
                 {"key_prefix", prefix}};
    return {std::move(csv), std::move(results), json::object()};
}

KindOutput run_kind_squid(const Obj& root) {
    const Obj params = root.child("params");
    SquidParams p;
    p.I_c = params.num_or("I_c", 1.0);
    p.V0 = params.num_or("V0", 1.0);
    p.Phi0 = params.num_or("Phi0", 1.0);
    p.Phi = params.num_or("Phi", 0.0);
    const double delta_j = params.num_or("delta_j", 0.0);
    params.done();

    std::vector<double> grid;
    if (auto g = root.child_opt("grid"))
        grid = grid_from(*g, -2.0 * p.Phi0, 2.0 * p.Phi0, 401);
    else
        grid = linspace(-2.0 * p.Phi0, 2.0 * p.Phi0, 401);

    Csv csv({{"Phi", "applied flux"},
             {"delta_from_flux", "junction phase 2 pi Phi/Phi0"},
             {"V", "dc-SQUID voltage V0 sin(pi Phi/Phi0)"}});
    for (double Phi : grid) {
        SquidParams q = p;
        q.Phi = Phi;
        const SquidResponse r = squid_response(q, delta_j);
        csv.row({Phi, r.delta_from_flux, r.V});
    }

    const SquidResponse at = squid_response(p, delta_j);
    json results{{"I", at.I},
                 {"delta_from_flux", at.delta_from_flux},
                 {"V", at.V},
                 {"delta_j", delta_j}};
    return {std::move(csv), std::move(results), json::object()};
}

KindOutput run_kind_coherence(const Obj& root) {
    const Obj params = root.child("params");
    FringeInputs f;
    f.I1 = params.num_or("I1", 1.0);
    f.I2 = params.num_or("I2", 1.0);
    f.g1 = params.num_or("g1_abs", 1.0);
    const double g2_zero = params.num_or("g2_zero", 1.0);
    params.done();

    std::vector<double> grid;
    if (auto g = root.child_opt("grid"))
        grid = grid_from(*g, 0.0, 2.0 * M_PI, 361);
    else
        grid = linspace(0.0, 2.0 * M_PI, 361);

    Csv csv({{"phase", "interference phase"},
             {"intensity", "screen intensity I1 + I2 + 2 sqrt(I1 I2)|g1| cos(phase)"}});
    double imax = -std::numeric_limits<double>::infinity();
    double imin = std::numeric_limits<double>::infinity();
    for (double ph : grid) {
        FringeInputs fi = f;
        fi.phase = ph;
        const double I = fringe_intensity(fi);
        imax = std::max(imax, I);
        imin = std::min(imin, I);
        csv.row({ph, I});
    }

    const char* klass = nullptr;
    switch (g2_classify(g2_zero)) {
        case PhotonStatistics::Nonclassical: klass = "nonclassical (antibunched)"; break;
        case PhotonStatistics::Coherent: klass = "coherent"; break;
        case PhotonStatistics::Bunched: klass = "bunched"; break;
    }
    json results{{"I_max", imax},
                 {"I_min", imin},
                 {"visibility_scan", visibility(imax, imin)},
                 {"visibility_from_g1", visibility_from_g1(f.I1, f.I2, std::abs(f.g1))},
                 {"g2_zero", g2_zero},
                 {"g2_class", klass}};
    return {std::move(csv), std::move(results), json::object()};
}

} // namespace

const std::vector<std::string>& scenario_kinds() {
    static const std::vector<std::string> kinds = {
        "stirap", "fstirap", "cpt", "eit-scan", "interferometer", "ramsey",
        "giant",  "grover",  "deutsch", "bb84", "squid", "coherence"};
    return kinds;
}

RunResult run_scenario_json(const json& config, const std::string& stem,
                            const std::filesystem::path& out_dir,
                            std::optional<std::uint64_t> seed) {
    const Obj root(config, "");
    const std::string kind = root.str("kind");
    const std::uint64_t cfg_seed = static_cast<std::uint64_t>(root.integer_or("seed", 1));
    const std::uint64_t eff_seed = seed ? *seed : cfg_seed;

    KindOutput out = [&]() {
        if (kind == "stirap")
            return run_kind_stirap(root);
        if (kind == "fstirap")
            return run_kind_fstirap(root);
        if (kind == "cpt")
            return run_kind_cpt(root);
        if (kind == "eit-scan")
            return run_kind_eit_scan(root);
        if (kind == "interferometer")
            return run_kind_interferometer(root);
        if (kind == "ramsey")
            return run_kind_ramsey(root);
        if (kind == "giant")
            return run_kind_giant(root);
        if (kind == "grover")
            return run_kind_grover(root);
        if (kind == "deutsch")
            return run_kind_deutsch(root);
        if (kind == "bb84")
            return run_kind_bb84(root, eff_seed);
        if (kind == "squid")
            return run_kind_squid(root);
        if (kind == "coherence")
            return run_kind_coherence(root);
        throw ParseError("unknown kind '" + kind + "'", "/kind");
    }();
    root.done();

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + out_dir.string());

    const fs::path csv_path = out_dir / (stem + ".csv");
    const fs::path summary_path = out_dir / (stem + "_summary.json");
    out.csv.write(csv_path);

    json summary{{"kind", kind},
                 {"library_version", qisim::version},
                 {"seed", eff_seed},
                 {"schema", out.csv.schema()},
                 {"inputs", config},
                 {"results", out.results}};
    for (const auto& item : out.extra.items())
        summary[item.key()] = item.value();

    std::ofstream sout(summary_path, std::ios::binary);
    if (!sout)
        throw IoError("cannot open " + summary_path.string() + " for writing");
    sout << summary.dump(2) << '\n';
    if (!sout)
        throw IoError("failed writing " + summary_path.string());

    return {summary, {csv_path, summary_path}};
}

namespace {

json load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& ex) {
        // nlohmann reports the byte offset; surface it as-is
        throw ParseError(ex.what(), path.string());
    }
}

} // namespace

RunResult run_scenario(const std::filesystem::path& config_path,
                       const std::filesystem::path& out_dir,
                       std::optional<std::uint64_t> seed) {
    const json cfg = load_config(config_path);
    return run_scenario_json(cfg, config_path.stem().string(), out_dir, seed);
}

json sweep(const std::filesystem::path& config_path, const std::string& param,
           const std::vector<double>& values, const std::filesystem::path& out_dir,
           std::optional<std::uint64_t> seed, int threads) {
    if (values.empty())
        throw ParseError("sweep needs at least one value", "/values");
    if (threads < 1)
        threads = 1;
    const json base = load_config(config_path);

    // resolve the dotted path and require an existing scalar
    std::vector<std::string> keys;
    std::stringstream ss(param);
    for (std::string k; std::getline(ss, k, '.');)
        keys.push_back(k);
    {
        const json* cur = &base;
        for (const auto& k : keys) {
            if (!cur->is_object() || !cur->contains(k))
                throw ParseError("sweep parameter '" + param + "' not found in the config",
                                 "/" + param);
            cur = &(*cur)[k];
        }
        if (!cur->is_number())
            throw ParseError("sweep parameter '" + param + "' is not a scalar", "/" + param);
    }

    const std::string stem = config_path.stem().string();
    struct Entry {
        json record;
    };
    std::vector<Entry> entries(values.size());

    std::mutex mu;
    size_t next = 0;
    auto worker = [&]() {
        for (;;) {
            size_t i;
            {
                std::lock_guard lock(mu);
                if (next >= values.size())
                    return;
                i = next++;
            }
            json cfg = base;
            json* cur = &cfg;
            for (size_t k = 0; k + 1 < keys.size(); ++k)
                cur = &(*cur)[keys[k]];
            (*cur)[keys.back()] = values[i];

            char suffix[16];
            std::snprintf(suffix, sizeof suffix, "_%03zu", i);
            json rec{{"value", values[i]}, {"stem", stem + suffix}};
            try {
                const RunResult rr = run_scenario_json(cfg, stem + suffix, out_dir, seed);
                rec["status"] = "ok";
                json files = json::array();
                for (const auto& f : rr.files)
                    files.push_back(f.filename().string());
                rec["files"] = files;
            } catch (const std::exception& ex) {
                rec["status"] = "error";
                rec["error"] = ex.what();
            }
            entries[i].record = std::move(rec);
        }
    };

    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(threads, static_cast<int>(values.size()));
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();

    json runs = json::array();
    bool any_error = false;
    for (const auto& e : entries) {
        runs.push_back(e.record);
        if (e.record.value("status", "") != "ok")
            any_error = true;
    }
    json manifest{{"param", param},
                  {"library_version", qisim::version},
                  {"runs", runs},
                  {"all_ok", !any_error}};

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const fs::path mpath = out_dir / (stem + "_manifest.json");
    std::ofstream mout(mpath, std::ios::binary);
    if (!mout)
        throw IoError("cannot open " + mpath.string() + " for writing");
    mout << manifest.dump(2) << '\n';
    return manifest;
}

} // namespace qisim::scenario
