#include "qisim/eit.hpp"

#include <cmath>

namespace qisim {

namespace {

constexpr double pole_tol = 1e-300;

// Shared weak-probe kernel: the Lambda and ladder coherences have the same
// algebraic form once delta, the probe detuning Delta1 and the Raman
// coherence decay are identified.
complexd weak_probe_coherence(double Omega_P, double Omega_C, double delta, double Delta1,
                              double g1, double g3) {
    if (Omega_C == 0.0 && g3 == 0.0) {
        // removable delta^2/delta^2 limit: bare two-level coherence
        const double d2 = Delta1 * Delta1 + g1 * g1;
        if (d2 < pole_tol)
            throw PoleError("rho_eg: two-level denominator vanishes");
        return (0.5 * Omega_P / d2) * complexd(-Delta1, g1);
    }
    const double z1 = delta * Delta1 - g1 * g3 - 0.25 * Omega_C * Omega_C;
    const double z2 = g3 * Delta1 + g1 * delta;
    const double Z = z1 * z1 + z2 * z2;
    if (Z < pole_tol)
        throw PoleError("rho_eg: steady-state denominator Z vanishes at delta = " +
                        std::to_string(delta));
    const double re = -(delta * delta * Delta1 + g3 * g3 * Delta1 -
                        0.25 * delta * Omega_C * Omega_C);
    const double im = delta * delta * g1 + g1 * g3 * g3 + 0.25 * g3 * Omega_C * Omega_C;
    return (0.5 * Omega_P / Z) * complexd(re, im);
}

// rho_eg used by the susceptibility pipeline, as a function of the scanned
// detuning (two-photon for Lambda/ladder, probe for V).
complexd coherence_eg(const EitParams& p, double x) {
    switch (p.scheme) {
        case Scheme::Lambda:
            return rho_eg_lambda(p, x);
        case Scheme::Ladder:
            return rho_eg_ladder(p, x);
        case Scheme::Vee:
            // the V formula gives rho_ge; its conjugate plays the eg role
            return std::conj(rho_ge_vee(p, x));
    }
    throw ValidationError("coherence_eg: unknown scheme");
}

} // namespace

void EitParams::validate() const {
    if (Gamma_g < 0 || Gamma_e < 0 || Gamma_s < 0 || Gamma_t < 0)
        throw ValidationError("EitParams: decay rates must be >= 0");
    if (kappa_scale <= 0)
        throw ValidationError("EitParams: kappa_scale must be > 0");
    if (Gamma_sg && (*Gamma_sg < 0 || *Gamma_sg > Gamma_s))
        throw ValidationError("EitParams: Gamma_sg must be in [0, Gamma_s]");
}

DensityMatrix steady_state(const Eigen::Matrix3cd& H, const DecayRates& rates,
                           const Repopulation& repop) {
    rates.validate();
    const Eigen::Matrix3cd G = rates.gamma_hat();

    // L acting on column-stacked rho: -i(I (x) H - H^T (x) I) for the
    // commutator, -(I (x) G + G^T (x) I)/2 for the anticommutator.
    Eigen::Matrix<complexd, 9, 9> L = Eigen::Matrix<complexd, 9, 9>::Zero();
    auto idx = [](int r, int c) { return c * 3 + r; }; // column-major
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            for (int k = 0; k < 3; ++k) {
                L(idx(r, c), idx(k, c)) += -imag_unit * H(r, k);
                L(idx(r, c), idx(r, k)) += imag_unit * H(k, c);
            }
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            L(idx(r, c), idx(r, c)) += -0.5 * (G(r, r) + G(c, c));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (repop.feed(i, j) != 0.0)
                L(idx(j, j), idx(i, i)) += repop.feed(i, j);

    // replace the rho_gg row with the trace constraint
    Eigen::Matrix<complexd, 9, 9> A = L;
    Eigen::Matrix<complexd, 9, 1> b = Eigen::Matrix<complexd, 9, 1>::Zero();
    for (int c = 0; c < 9; ++c)
        A(idx(0, 0), c) = 0.0;
    A(idx(0, 0), idx(0, 0)) = 1.0;
    A(idx(0, 0), idx(1, 1)) = 1.0;
    A(idx(0, 0), idx(2, 2)) = 1.0;
    b(idx(0, 0)) = 1.0;

    Eigen::FullPivLU<Eigen::Matrix<complexd, 9, 9>> lu(A);
    if (!lu.isInvertible())
        throw NonUniqueSteadyStateError(
            "steady_state: generator null space is not fixed by the trace constraint");
    const Eigen::Matrix<complexd, 9, 1> v = lu.solve(b);

    if ((L * v).cwiseAbs().maxCoeff() > 1e-10)
        throw NonUniqueSteadyStateError("steady_state: residual ||drho/dt|| > 1e-10");

    Eigen::Matrix3cd rho = Eigen::Map<const Eigen::Matrix3cd>(v.data());
    rho = 0.5 * (rho + rho.adjoint().eval());
    return DensityMatrix(rho);
}

complexd rho_eg_lambda(const EitParams& p, double delta) {
    p.validate();
    const double Delta1 = delta + p.Delta_C; // delta = Delta1 - Delta2, Delta2 = Delta_C
    return weak_probe_coherence(p.Omega_P, p.Omega_C, delta, Delta1, p.gamma1(), p.gamma3());
}

complexd rho_eg_ladder(const EitParams& p, double delta) {
    p.validate();
    const double Delta1 = delta - p.Delta_C; // delta = Delta1 + Delta2
    return weak_probe_coherence(p.Omega_P, p.Omega_C, delta, Delta1, p.gamma1(), p.gamma3());
}

complexd rho_ge_vee(const EitParams& p, double Delta_P) {
    p.validate();
    const double Delta_C = p.Delta_C;
    const complexd K0(Delta_P - Delta_C, p.gamma_es());
    const complexd K1(Delta_P, p.gamma_ge());
    const complexd K2(Delta_C, -p.gamma_gs());
    const double Oc2 = p.Omega_C * p.Omega_C;

    double s = 0.0;
    if (Oc2 > 0.0) {
        const double ggs = p.gamma_gs();
        if (ggs <= 0.0 || p.Gamma_s <= 0.0)
            throw ValidationError("rho_ge_vee: Omega_C > 0 requires Gamma_s > 0");
        s = (Oc2 / (ggs * p.Gamma_s)) / (1.0 + (Delta_C / ggs) * (Delta_C / ggs));
    }
    double gamma = 0.0;
    const double open_rate = p.Gamma_s - p.gamma_sg_rate();
    if (open_rate != 0.0) {
        if (p.Gamma_t <= 0.0)
            throw ValidationError("rho_ge_vee: open decay (Gamma_sg < Gamma_s) requires Gamma_t > 0");
        gamma = open_rate / p.Gamma_t;
    }
    const double t_ratio = (p.Gamma_s > 0.0) ? p.Gamma_t / p.Gamma_s : 0.0;
    const double K3 = 2.0 * (1.0 + t_ratio + s * (1.0 + 0.5 * gamma));
    const double rho_ss = s / K3;
    const double rho_gg = (2.0 + s + 2.0 * t_ratio) / K3;

    const complexd denom = 2.0 * K2 * (4.0 * K0 * K1 - Oc2);
    if (std::abs(denom) < pole_tol)
        throw PoleError("rho_ge_vee: denominator vanishes at Delta_P = " + std::to_string(Delta_P));
    return p.Omega_P / denom * (rho_ss * Oc2 + rho_gg * (4.0 * K0 * K2 - Oc2));
}

complexd susceptibility_lambda(const EitParams& p, double delta) {
    if (p.Omega_P == 0.0)
        throw ValidationError("susceptibility: Omega_P must be nonzero");
    return 2.0 * p.kappa_scale * rho_eg_lambda(p, delta) / p.Omega_P;
}

complexd susceptibility(const EitParams& p, double detuning) {
    if (p.Omega_P == 0.0)
        throw ValidationError("susceptibility: Omega_P must be nonzero");
    return 2.0 * p.kappa_scale * coherence_eg(p, detuning) / p.Omega_P;
}

std::pair<double, double> alpha_beta(const EitParams& p, double detuning) {
    const complexd chi = susceptibility(p, detuning);
    return {chi.imag(), 0.5 * chi.real()};
}

complexd numeric_rho_eg(const EitParams& p, double delta) {
    p.validate();
    SchemeConfig c;
    c.scheme = p.scheme;
    c.convention = CouplingConvention::Half;
    c.Omega_P = p.Omega_P;
    c.Omega_C = p.Omega_C;
    DecayRates rates{p.Gamma_g, p.Gamma_e, p.Gamma_s, 0.0};
    Repopulation repop;
    switch (p.scheme) {
        case Scheme::Lambda:
            c.Delta1 = delta + p.Delta_C;
            c.Delta2 = p.Delta_C;
            repop = Repopulation::lambda_decay(p.Gamma_e);
            if (p.Gamma_s > 0.0)
                repop.feed(level_s, level_g) += p.Gamma_s;
            if (p.Gamma_g > 0.0)
                repop.feed(level_g, level_g) += p.Gamma_g; // ground decay feeds itself
            break;
        case Scheme::Ladder:
            c.Delta1 = delta - p.Delta_C;
            c.Delta2 = p.Delta_C;
            repop = Repopulation::ladder_decay(p.Gamma_e, p.Gamma_s);
            break;
        default:
            throw UnsupportedConfigError("numeric_rho_eg: dual path covers Lambda and ladder");
    }
    const DensityMatrix rho = steady_state(build_hamiltonian(c), rates, repop);
    return rho.matrix()(level_e, level_g);
}

double numeric_alpha(const EitParams& p, double delta) {
    const complexd rho_eg = numeric_rho_eg(p, delta);
    return (2.0 * p.kappa_scale * rho_eg / p.Omega_P).imag();
}

Spectrum transparency_scan(const EitParams& p, std::span<const double> delta_grid,
                           bool with_numeric) {
    if (delta_grid.empty())
        throw ValidationError("transparency_scan: empty grid");
    Spectrum sp;
    sp.deltas.assign(delta_grid.begin(), delta_grid.end());
    sp.chi.reserve(delta_grid.size());
    sp.alpha.reserve(delta_grid.size());
    sp.beta.reserve(delta_grid.size());
    sp.notes.assign(delta_grid.size(), "");

    for (size_t i = 0; i < delta_grid.size(); ++i) {
        try {
            const complexd chi = susceptibility(p, delta_grid[i]);
            sp.chi.push_back(chi);
            sp.alpha.push_back(chi.imag());
            sp.beta.push_back(0.5 * chi.real());
        } catch (const PoleError& ex) {
            sp.chi.push_back(complexd(std::nan(""), std::nan("")));
            sp.alpha.push_back(std::nan(""));
            sp.beta.push_back(std::nan(""));
            sp.notes[i] = ex.what();
        }
        if (with_numeric)
            sp.alpha_numeric.push_back(numeric_alpha(p, delta_grid[i]));
    }

    sp.alpha_at_zero = alpha_beta(p, 0.0).first;

    // transparency window: width of the dip around delta = 0 at half depth
    double alpha_max = 0.0;
    for (double a : sp.alpha)
        if (std::isfinite(a))
            alpha_max = std::max(alpha_max, a);
    if (alpha_max > sp.alpha_at_zero) {
        const double half = 0.5 * (alpha_max + sp.alpha_at_zero);
        size_t i0 = 0;
        for (size_t i = 1; i < sp.deltas.size(); ++i)
            if (std::abs(sp.deltas[i]) < std::abs(sp.deltas[i0]))
                i0 = i;
        auto interp = [&](size_t a, size_t b) {
            const double f = (half - sp.alpha[a]) / (sp.alpha[b] - sp.alpha[a]);
            return sp.deltas[a] + f * (sp.deltas[b] - sp.deltas[a]);
        };
        double left = std::nan(""), right = std::nan("");
        for (size_t k = i0; k + 1 < sp.deltas.size(); ++k)
            if (std::isfinite(sp.alpha[k]) && std::isfinite(sp.alpha[k + 1]) &&
                sp.alpha[k] < half && sp.alpha[k + 1] >= half) {
                right = interp(k, k + 1);
                break;
            }
        for (size_t k = i0; k > 0; --k)
            if (std::isfinite(sp.alpha[k]) && std::isfinite(sp.alpha[k - 1]) &&
                sp.alpha[k] < half && sp.alpha[k - 1] >= half) {
                left = interp(k, k - 1);
                break;
            }
        if (std::isfinite(right) && std::isfinite(left))
            sp.dip_fwhm = right - left;
    }
    return sp;
}

} // namespace qisim
