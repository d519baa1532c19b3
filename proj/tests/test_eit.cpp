#include <doctest.h>

#include <cmath>

#include "qisim/eit.hpp"

using namespace qisim;

namespace {

EitParams weak_lambda() {
    EitParams p;
    p.scheme = Scheme::Lambda;
    p.Omega_P = 1e-4;
    p.Omega_C = 1.0;
    p.Gamma_e = 1.0;
    p.Gamma_s = 2e-3; // gamma3 = 1e-3
    return p;
}

} // namespace

TEST_CASE("steady state fixed points") {
    SUBCASE("no drive with repopulation to |g> pins the ground state") {
        SchemeConfig c;
        c.convention = CouplingConvention::Half;
        const DecayRates rates{0.0, 1.0, 0.5, 0.0};
        Repopulation repop;
        repop.feed(level_e, level_g) = 1.0;
        repop.feed(level_s, level_g) = 0.5;
        const DensityMatrix rho = steady_state(build_hamiltonian(c), rates, repop);
        CHECK(rho.population(level_g) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rho.population(level_e) == doctest::Approx(0.0));
    }
    SUBCASE("result is hermitian and unit trace") {
        EitParams p = weak_lambda();
        const complexd r = numeric_rho_eg(p, 0.3); // exercises the solver
        (void)r;
        SchemeConfig c;
        c.convention = CouplingConvention::Half;
        c.Omega_P = 0.01;
        c.Omega_C = 1.0;
        c.Delta1 = 0.3;
        c.Delta2 = 0.0;
        const DecayRates rates{0.0, 1.0, 0.002, 0.0};
        Repopulation repop = Repopulation::lambda_decay(1.0);
        repop.feed(level_s, level_g) = 0.002;
        const DensityMatrix rho = steady_state(build_hamiltonian(c), rates, repop);
        CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("pure loss without feeds has no unit-trace steady state") {
        SchemeConfig c;
        c.convention = CouplingConvention::Half;
        c.Omega_P = 0.5;
        c.Omega_C = 0.8;
        c.Delta1 = 0.4;
        c.Delta2 = 0.1;
        const DecayRates rates{0.0, 1.0, 0.0, 0.0};
        CHECK_THROWS_AS(steady_state(build_hamiltonian(c), rates, {}), NonUniqueSteadyStateError);
    }
}

TEST_CASE("lambda weak-probe coherence against the numeric steady state") {
    EitParams p = weak_lambda();
    for (double delta : {-8.0, -2.5, -0.3, 0.0, 0.1, 1.7, 9.0}) {
        const complexd analytic = rho_eg_lambda(p, delta);
        const complexd numeric = numeric_rho_eg(p, delta);
        CHECK(std::abs(numeric - analytic) / std::abs(analytic) < 1e-6);
    }
}

TEST_CASE("lambda coherence limits") {
    SUBCASE("two-photon resonance with a stable Raman coherence is dark") {
        EitParams p = weak_lambda();
        p.Gamma_s = 0.0; // gamma3 = 0
        const complexd r = rho_eg_lambda(p, 0.0);
        CHECK(std::abs(r) == doctest::Approx(0.0));
    }
    SUBCASE("no coupling field reduces to the two-level lorentzian") {
        EitParams p = weak_lambda();
        p.Omega_C = 0.0;
        p.Gamma_s = 0.0;
        // delta scans the probe detuning; Delta1 = delta here
        for (double delta : {-2.0, 0.0, 0.5, 3.0}) {
            const complexd r = rho_eg_lambda(p, delta);
            const double g1 = p.gamma1();
            const complexd want =
                0.5 * p.Omega_P * complexd(-delta, g1) / (delta * delta + g1 * g1);
            CHECK(std::abs(r - want) < 1e-12);
        }
    }
    SUBCASE("continuous across delta = 0 for gamma3 > 0") {
        EitParams p = weak_lambda();
        const complexd lo = rho_eg_lambda(p, -1e-9);
        const complexd mid = rho_eg_lambda(p, 0.0);
        const complexd hi = rho_eg_lambda(p, 1e-9);
        CHECK(std::abs(lo - mid) < 1e-6 * std::abs(mid) + 1e-15);
        CHECK(std::abs(hi - mid) < 1e-6 * std::abs(mid) + 1e-15);
    }
}

TEST_CASE("susceptibility scaling and sign") {
    EitParams p = weak_lambda();
    SUBCASE("vanishes at ideal two-photon resonance") {
        p.Gamma_s = 0.0;
        const complexd chi = susceptibility_lambda(p, 0.0);
        CHECK(std::abs(chi) == doctest::Approx(0.0));
    }
    SUBCASE("linear in the collapsed prefactor") {
        const complexd chi1 = susceptibility_lambda(p, 0.7);
        p.kappa_scale = 2.0;
        const complexd chi2 = susceptibility_lambda(p, 0.7);
        CHECK(std::abs(chi2 - 2.0 * chi1) < 1e-15);
    }
    SUBCASE("absorption is nonnegative across the scan") {
        for (double delta = -10.0; delta <= 10.0; delta += 0.25)
            CHECK(susceptibility_lambda(p, delta).imag() >= -1e-18);
    }
    SUBCASE("Omega_P = 0 rejected") {
        p.Omega_P = 0.0;
        CHECK_THROWS_AS(susceptibility_lambda(p, 0.1), ValidationError);
    }
}

TEST_CASE("alpha/beta per scheme") {
    SUBCASE("lambda transparency point") {
        EitParams p = weak_lambda();
        p.Gamma_s = 0.0;
        const auto [alpha, beta] = alpha_beta(p, 0.0);
        CHECK(alpha == 0.0);
        CHECK(beta == 0.0);
    }
    SUBCASE("ladder absorption vanishes at two-photon resonance with a stable top level") {
        EitParams p = weak_lambda();
        p.scheme = Scheme::Ladder;
        p.Gamma_s = 0.0;
        const auto [alpha, beta] = alpha_beta(p, 0.0);
        CHECK(alpha == 0.0);
    }
    SUBCASE("single-field lambda reduces to the two-level absorption profile") {
        EitParams p = weak_lambda();
        p.Omega_C = 0.0;
        p.Gamma_s = 0.0;
        const double g1 = p.gamma1();
        for (double delta : {-1.0, 0.0, 2.0}) {
            const auto [alpha, beta] = alpha_beta(p, delta);
            const double want = p.kappa_scale * g1 / (delta * delta + g1 * g1);
            CHECK(alpha == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("alpha and beta recompute from chi") {
    EitParams p = weak_lambda();
    for (double delta : {-3.0, -0.2, 0.0, 1.1, 7.3}) {
        const complexd chi = susceptibility(p, delta);
        const auto [alpha, beta] = alpha_beta(p, delta);
        CHECK(std::abs(alpha - chi.imag()) < 1e-12);
        CHECK(std::abs(beta - 0.5 * chi.real()) < 1e-12);
    }
}

TEST_CASE("vee coherence") {
    EitParams p;
    p.scheme = Scheme::Vee;
    p.Omega_P = 1e-3;
    p.Gamma_e = 1.0;
    p.Gamma_s = 1.0;
    p.Gamma_t = 0.01;
    SUBCASE("no coupling reduces to the two-level coherence") {
        p.Omega_C = 0.0;
        for (double Dp : {-1.0, 0.0, 0.8}) {
            const complexd K1(Dp, p.gamma_ge());
            const complexd want = p.Omega_P / (2.0 * K1);
            CHECK(std::abs(rho_ge_vee(p, Dp) - want) < 1e-10);
        }
    }
    SUBCASE("transit-free limit with no coupling is identical") {
        p.Omega_C = 0.0;
        p.Gamma_t = 0.0;
        const complexd K1(0.0, p.gamma_ge());
        CHECK(std::abs(rho_ge_vee(p, 0.0) - p.Omega_P / (2.0 * K1)) < 1e-12);
    }
    SUBCASE("strong coupling suppresses the probe coherence") {
        p.Omega_C = 0.0;
        const double bare = std::abs(rho_ge_vee(p, 0.0));
        p.Omega_C = 20.0;
        const double dressed = std::abs(rho_ge_vee(p, 0.0));
        CHECK(dressed < 0.2 * bare);
    }
}

TEST_CASE("transparency scan") {
    SUBCASE("no coupling: single lorentzian, no dip") {
        EitParams p = weak_lambda();
        p.Omega_C = 0.0;
        p.Gamma_s = 0.0;
        const auto grid = linspace(-10.0, 10.0, 401);
        const Spectrum sp = transparency_scan(p, grid);
        // absorption peaks at line center and falls monotonically outward
        const double a0 = sp.alpha[200];
        CHECK(a0 > sp.alpha[150]);
        CHECK(a0 > sp.alpha[250]);
        CHECK(!std::isfinite(sp.dip_fwhm));
    }
    SUBCASE("coupling on: transparency dip at line center") {
        EitParams p = weak_lambda();
        p.Gamma_s = 0.0;
        const auto grid = linspace(-10.0, 10.0, 801);
        const Spectrum sp = transparency_scan(p, grid);
        CHECK(sp.alpha_at_zero == 0.0);
        CHECK(std::isfinite(sp.dip_fwhm));
        CHECK(sp.dip_fwhm > 0.0);
    }
    SUBCASE("transparency deepens as the Raman coherence stabilizes") {
        EitParams p = weak_lambda();
        double prev = std::numeric_limits<double>::infinity();
        for (double g3 : {1e-2, 1e-3, 1e-4}) {
            p.Gamma_s = 2.0 * g3;
            const double a0 = alpha_beta(p, 0.0).first;
            CHECK(a0 < prev);
            prev = a0;
        }
    }
    SUBCASE("numeric dual path agrees pointwise") {
        EitParams p = weak_lambda();
        const auto grid = linspace(-5.0, 5.0, 21);
        const Spectrum sp = transparency_scan(p, grid, true);
        for (size_t i = 0; i < grid.size(); ++i)
            CHECK(std::abs(sp.alpha_numeric[i] - sp.alpha[i]) <=
                  1e-6 * std::max(std::abs(sp.alpha[i]), 1e-30));
    }
    SUBCASE("dressed-state splitting tracks the coupling strength") {
        EitParams p = weak_lambda();
        p.scheme = Scheme::Ladder;
        p.Gamma_s = 0.0;
        for (double wc : {2.5, 5.0, 10.0}) {
            p.Omega_C = wc;
            const auto grid = linspace(-2.0 * wc, 2.0 * wc, 4001);
            const Spectrum sp = transparency_scan(p, grid);
            // find the two absorption maxima
            double best_neg = 0.0, best_pos = 0.0;
            double amax_neg = -1.0, amax_pos = -1.0;
            for (size_t i = 0; i < grid.size(); ++i) {
                if (grid[i] < 0 && sp.alpha[i] > amax_neg) {
                    amax_neg = sp.alpha[i];
                    best_neg = grid[i];
                }
                if (grid[i] > 0 && sp.alpha[i] > amax_pos) {
                    amax_pos = sp.alpha[i];
                    best_pos = grid[i];
                }
            }
            const double split = best_pos - best_neg;
            CHECK(std::abs(split - wc) / wc < 0.1);
        }
    }
}
