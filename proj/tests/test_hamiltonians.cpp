#include <doctest.h>

#include <random>

#include "qisim/hamiltonians.hpp"

using namespace qisim;

namespace {

SchemeConfig lambda_full(double wp, double wc, double D1, double D2) {
    SchemeConfig c;
    c.scheme = Scheme::Lambda;
    c.Omega_P = wp;
    c.Omega_C = wc;
    c.Delta1 = D1;
    c.Delta2 = D2;
    return c;
}

} // namespace

TEST_CASE("lambda hamiltonian detuning placement") {
    // no drive, Delta1 = 1, Delta2 = 0 -> delta = 1 -> diag(0, -1, -1)
    const Eigen::Matrix3cd H = build_hamiltonian(lambda_full(0, 0, 1, 0));
    CHECK(H(0, 0) == complexd(0, 0));
    CHECK(H(1, 1) == complexd(-1, 0));
    CHECK(H(2, 2) == complexd(-1, 0));
    CHECK(H.cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("lambda hamiltonian coupling placement at resonance") {
    const Eigen::Matrix3cd H = build_hamiltonian(lambda_full(1, 1, 0, 0));
    CHECK(H(level_e, level_g) == complexd(-1, 0));
    CHECK(H(level_g, level_e) == complexd(-1, 0));
    CHECK(H(level_e, level_s) == complexd(-1, 0));
    CHECK(H(level_s, level_e) == complexd(-1, 0));
    CHECK(H(level_g, level_s) == complexd(0, 0));
    CHECK(H(level_g, level_g) == complexd(0, 0));
}

TEST_CASE("hamiltonians are hermitian for all schemes and conventions") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (Scheme sch : {Scheme::Lambda, Scheme::Ladder, Scheme::Vee})
        for (CouplingConvention conv : {CouplingConvention::Full, CouplingConvention::Half})
            for (int k = 0; k < 10; ++k) {
                SchemeConfig c;
                c.scheme = sch;
                c.convention = conv;
                c.Delta1 = u(rng);
                c.Delta2 = u(rng);
                c.Omega_P = complexd(u(rng), u(rng));
                c.Omega_C = complexd(u(rng), u(rng));
                const Eigen::Matrix3cd H = build_hamiltonian(c);
                CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
            }
}

TEST_CASE("half convention halves couplings and keeps detunings") {
    SchemeConfig c = lambda_full(2, 4, 1, 0.5);
    c.convention = CouplingConvention::Half;
    const Eigen::Matrix3cd H = build_hamiltonian(c);
    CHECK(H(level_e, level_g) == complexd(-1, 0));
    CHECK(H(level_e, level_s) == complexd(-2, 0));
    CHECK(H(level_e, level_e) == complexd(-1, 0));
    CHECK(H(level_s, level_s) == complexd(-0.5, 0));
    CHECK(omega_full_from_half(2.0) == doctest::Approx(1.0));
}

TEST_CASE("ladder two-photon detuning is the sum") {
    SchemeConfig c;
    c.scheme = Scheme::Ladder;
    c.Delta1 = 1.0;
    c.Delta2 = 0.5;
    CHECK(c.two_photon_detuning() == doctest::Approx(1.5));
    const Eigen::Matrix3cd H = build_hamiltonian(c);
    CHECK(H(level_s, level_s) == complexd(-1.5, 0));
}

TEST_CASE("cpt eigensystem closed forms") {
    SUBCASE("symmetric drive at resonance") {
        const Eigensystem e = eigensystem_cpt(1.0, 1.0, 0.0);
        CHECK(e.lambda_plus == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(e.lambda_minus == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
        CHECK(e.lambda_0 == 0.0);
        const double inv = 1.0 / std::sqrt(2.0);
        CHECK(e.dark[0].real() == doctest::Approx(inv).epsilon(1e-14));
        CHECK(std::abs(e.dark[1]) == doctest::Approx(0.0));
        CHECK(e.dark[2].real() == doctest::Approx(-inv).epsilon(1e-14));
    }
    SUBCASE("pump off: dark state is |g>") {
        const Eigensystem e = eigensystem_cpt(0.0, 1.0, 0.0);
        CHECK(std::abs(e.dark[0]) == doctest::Approx(1.0));
        CHECK(std::abs(e.dark[2]) == doctest::Approx(0.0));
    }
    SUBCASE("asymmetric drive populations") {
        const Eigensystem e = eigensystem_cpt(1.0, 2.0, 0.0);
        CHECK(std::norm(e.dark[0]) == doctest::Approx(0.8).epsilon(1e-14));
        CHECK(std::norm(e.dark[2]) == doctest::Approx(0.2).epsilon(1e-14));
        CHECK(std::norm(e.dark[1]) == doctest::Approx(0.0));
    }
    SUBCASE("degenerate drive throws") {
        CHECK_THROWS_AS(eigensystem_cpt(0.0, 0.0, 0.0), DegenerateDriveError);
    }
}

TEST_CASE("cpt eigensystem properties over random drives") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> mag(0.1, 5.0);
    std::uniform_real_distribution<double> det(-5.0, 5.0);
    for (int k = 0; k < 50; ++k) {
        const double wp = mag(rng), wc = mag(rng), D = det(rng);
        const Eigensystem e = eigensystem_cpt(wp, wc, D);
        const Eigen::Matrix3cd H = build_hamiltonian(lambda_full(wp, wc, D, D));

        // H D = 0 and <e|D> = 0
        CHECK((H * e.dark).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(e.dark[1]) == 0.0);

        // eigenvector equations for the bright states
        CHECK((H * e.bright_plus - e.lambda_plus * e.bright_plus).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((H * e.bright_minus - e.lambda_minus * e.bright_minus).cwiseAbs().maxCoeff() <
              1e-10);

        // orthonormality
        CHECK(std::abs(e.dark.dot(e.bright_plus)) < 1e-10);
        CHECK(std::abs(e.dark.dot(e.bright_minus)) < 1e-10);
        CHECK(std::abs(e.bright_plus.dot(e.bright_minus)) < 1e-10);
        CHECK(e.dark.norm() == doctest::Approx(1.0).epsilon(1e-12));

        // numeric eigenvalues of the same matrix match the closed forms
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(H, Eigen::EigenvaluesOnly);
        std::array<double, 3> closed = {e.lambda_minus, e.lambda_0, e.lambda_plus};
        std::sort(closed.begin(), closed.end());
        for (int i = 0; i < 3; ++i)
            CHECK(es.eigenvalues()[i] == doctest::Approx(closed[i]).epsilon(1e-10));

        // eigendecomposition reconstructs H
        Eigen::Matrix3cd V;
        V.col(0) = e.bright_minus;
        V.col(1) = e.dark;
        V.col(2) = e.bright_plus;
        Eigen::Vector3cd lam(e.lambda_minus, e.lambda_0, e.lambda_plus);
        const Eigen::Matrix3cd rec = V * lam.asDiagonal() * V.adjoint();
        CHECK((H - rec).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("dark state does not depend on the detuning") {
    const Eigensystem e0 = eigensystem_cpt(1.3, 0.7, 0.0);
    for (double D : {1.0, 10.0}) {
        const Eigensystem eD = eigensystem_cpt(1.3, 0.7, D);
        CHECK((e0.dark - eD.dark).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("mixing angles") {
    SUBCASE("equal drives") {
        CHECK(mixing_angles(1.0, 1.0, 5.0).theta == doctest::Approx(M_PI / 4));
    }
    SUBCASE("resonant phi") {
        CHECK(mixing_angles(1.0, 1.0, 0.0).phi == doctest::Approx(M_PI / 4));
    }
    SUBCASE("large detuning limit") {
        CHECK(mixing_angles(1.0, 1.0, 1e9).phi == doctest::Approx(0.0).epsilon(1e-8));
    }
    SUBCASE("degenerate flagged, not thrown") {
        const MixingAngles m = mixing_angles(0.0, 0.0, 1.0);
        CHECK(m.theta == 0.0);
        CHECK(m.theta_degenerate);
    }
}

TEST_CASE("autler-townes levels") {
    const auto lv = autler_townes_levels(0.0, 10.0, 2.0);
    CHECK(lv[0] == doctest::Approx(-1.0));
    CHECK(lv[1] == doctest::Approx(1.0));
    CHECK(lv[2] == doctest::Approx(9.0));
    CHECK(lv[3] == doctest::Approx(11.0));
    CHECK(lv[1] - lv[0] == doctest::Approx(2.0));
    CHECK(lv[3] - lv[2] == doctest::Approx(2.0));

    const auto flat = autler_townes_levels(0.0, 10.0, 0.0);
    CHECK(flat[0] == flat[1]);
    CHECK(flat[2] == flat[3]);
}

TEST_CASE("adiabatic basis transform") {
    SUBCASE("dark-state column") {
        const Eigensystem e = eigensystem_cpt(1.0, 2.0, 0.4);
        const Eigen::Vector3cd c = adiabatic_to_diabatic(e, Eigen::Vector3cd(0, 1, 0));
        CHECK(c[0].real() == doctest::Approx(std::cos(e.theta)).epsilon(1e-14));
        CHECK(std::abs(c[1]) == doctest::Approx(0.0));
        CHECK(c[2].real() == doctest::Approx(-std::sin(e.theta)).epsilon(1e-14));
    }
    SUBCASE("B_- column at theta=pi/2, phi=0 is |g>") {
        const Eigen::Matrix3d R = adiabatic_basis_matrix(M_PI / 2, 0.0);
        CHECK(R(0, 0) == doctest::Approx(1.0));
        CHECK(std::abs(R(1, 0)) < 1e-15);
        CHECK(std::abs(R(2, 0)) < 1e-15);
    }
    SUBCASE("norm preserved for random amplitudes") {
        std::mt19937 rng(29);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const Eigensystem e = eigensystem_cpt(0.8, 1.7, 2.0);
        for (int k = 0; k < 20; ++k) {
            Eigen::Vector3cd a(complexd(u(rng), u(rng)), complexd(u(rng), u(rng)),
                               complexd(u(rng), u(rng)));
            a.normalize();
            const Eigen::Vector3cd c = adiabatic_to_diabatic(e, a);
            CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("unnormalized amplitudes rejected") {
        const Eigensystem e = eigensystem_cpt(1.0, 1.0, 0.0);
        CHECK_THROWS_AS(adiabatic_to_diabatic(e, Eigen::Vector3cd(1, 1, 0)), ValidationError);
    }
    SUBCASE("angle parametrization matches the closed-form eigenvectors at resonance") {
        // the +/- labels swap between the two parametrizations
        const Eigensystem e = eigensystem_cpt(1.4, 0.9, 0.0);
        const Eigen::Matrix3d R = adiabatic_basis_matrix(e.theta, e.phi);
        CHECK((R.col(0).cast<complexd>() - e.bright_plus).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((R.col(2).cast<complexd>() - e.bright_minus).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("adiabatic elimination of the intermediate level") {
    CHECK(adiabatic_elimination_ce(1.0, 0.0, 1.0, 0.0, 100.0, 0.0).real() ==
          doctest::Approx(0.01).epsilon(1e-14));
    CHECK(std::abs(adiabatic_elimination_ce(0.5, 0.5, 0.0, 0.0, 3.0, 1.0)) ==
          doctest::Approx(0.0));
    CHECK(std::abs(adiabatic_elimination_ce(1.0, 1.0, 1.0, 1.0, 1e12, 1.0)) < 1e-11);
    CHECK_THROWS_AS(adiabatic_elimination_ce(1.0, 0.0, 1.0, 1.0, 0.0, 0.0), SingularityError);
}

TEST_CASE("vee dark state lives in the upper doublet") {
    const Eigen::Vector3cd d = vee_dark_state(1.0, 1.0);
    CHECK(std::abs(d[0]) == doctest::Approx(0.0));
    CHECK(std::norm(d[1]) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::norm(d[2]) == doctest::Approx(0.5).epsilon(1e-14));
}
