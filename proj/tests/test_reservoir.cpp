#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qoe/reservoir.hpp"

using namespace qoe;

TEST_CASE("thermal bosonic reservoir is its own fixed point") {
    auto r = effective_reservoir({ReservoirKind::ThermalBoson, 0.6, 2.0});
    CHECK(r.beta_eff == 0.6);
    CHECK(r.r1 / r.r2 == doctest::Approx(std::exp(-1.2)).epsilon(1e-14));
    CHECK(r.r1 + r.r2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.r1 > 0.0);
    CHECK(r.r1 < r.r2);
    CHECK_THROWS_AS(effective_reservoir({ReservoirKind::ThermalBoson, 0.6, 2.0, 0.5}),
                    std::invalid_argument);
}

TEST_CASE("occupation identities") {
    for (auto kind : {ReservoirKind::ThermalBoson, ReservoirKind::CorrelatedPairOneAtom,
                      ReservoirKind::CorrelatedPairTwoAtoms}) {
        double xi = kind == ReservoirKind::ThermalBoson ? 0.0 : 1.5;
        auto r = effective_reservoir({kind, 0.45, 3.0, xi});
        CHECK(r.n_occ ==
              doctest::Approx(0.5 / std::tanh(0.5 * r.beta_eff * 3.0)).epsilon(1e-14));
        CHECK(r.n_occ == doctest::Approx(r.bose_occupation() + 0.5).epsilon(1e-13));
        CHECK(r.n_occ > 0.5);
    }
}

TEST_CASE("uncorrelated pair reproduces the bare temperature") {
    for (auto kind : {ReservoirKind::CorrelatedPairOneAtom, ReservoirKind::CorrelatedPairTwoAtoms}) {
        auto r = effective_reservoir({kind, 0.3, 6.0, 0.0});
        CHECK(r.beta_eff == doctest::Approx(0.3).epsilon(1e-14));
    }
}

TEST_CASE("closed-form effective temperature equals detailed balance") {
    double worst1 = 0.0, worst2 = 0.0;
    for (int ib = 0; ib < 10; ++ib)
        for (int iw = 0; iw < 10; ++iw)
            for (int ix = 0; ix < 10; ++ix) {
                double beta = 0.1 + 0.1 * ib;
                double omega = 0.5 + 7.5 * iw / 9.0;
                double xi = 5.0 * ix / 9.0;
                auto r1 = effective_reservoir({ReservoirKind::CorrelatedPairOneAtom, beta, omega, xi});
                worst1 = std::max(worst1, std::abs(r1.beta_eff - r1.beta_eff_detailed_balance()));
                auto r2 = effective_reservoir({ReservoirKind::CorrelatedPairTwoAtoms, beta, omega, xi});
                worst2 = std::max(worst2, std::abs(r2.beta_eff - r2.beta_eff_detailed_balance()));
            }
    CHECK(worst1 < 1e-12);
    CHECK(worst2 < 1e-12);
}

TEST_CASE("one-atom rates assemble from the pair state elements") {
    auto r = effective_reservoir({ReservoirKind::CorrelatedPairOneAtom, 0.3, 6.0, 2.0});
    // r1 + r2 = rho_g + rho_e + 2 rho_d = 1 for the one-atom contact
    CHECK(r.r1 + r.r2 == doctest::Approx(1.0).epsilon(1e-14));
    auto r2 = effective_reservoir({ReservoirKind::CorrelatedPairTwoAtoms, 0.3, 6.0, 2.0});
    CHECK(r2.r1 + r2.r2 < 1.0);  // 1 + 2 rho_nd with rho_nd < 0
}

TEST_CASE("correlations heat the one-atom effective reservoir") {
    double prev = effective_reservoir({ReservoirKind::CorrelatedPairOneAtom, 0.3, 6.0, 0.0}).beta_eff;
    for (double xi = 0.5; xi <= 12.0; xi += 0.5) {
        double be = effective_reservoir({ReservoirKind::CorrelatedPairOneAtom, 0.3, 6.0, xi}).beta_eff;
        CHECK(be < prev);  // strictly decreasing in xi
        CHECK(be < 0.3);
        CHECK(be > 0.0);
        prev = be;
    }
}

TEST_CASE("small-coupling expansion of the effective temperature") {
    // beta_eff/beta = 1 - (beta xi)^2 tanh(beta omega/2)/(2 beta omega) + O((beta xi)^4);
    // the textbook -1/4 coefficient emerges in the high-temperature limit.
    for (auto [beta, omega] : {std::pair{0.3, 6.0}, {0.05, 1.0}, {0.6, 2.0}}) {
        const double bw = beta * omega;
        const double coeff = std::tanh(0.5 * bw) / (2.0 * bw);
        for (double bx : {0.02, 0.05}) {
            auto r = effective_reservoir({ReservoirKind::CorrelatedPairOneAtom, beta, omega, bx / beta});
            double ratio = r.beta_eff / beta;
            CHECK(std::abs(ratio - (1.0 - coeff * bx * bx)) < 2e-3 * bx * bx);
        }
    }
    // high-temperature regime: the quadratic coefficient is 1/4 within 1%
    auto r = effective_reservoir({ReservoirKind::CorrelatedPairOneAtom, 0.05, 1.0, 1.0});
    double bx = 0.05;
    CHECK(r.beta_eff / 0.05 == doctest::Approx(1.0 - bx * bx / 4.0).epsilon(1e-5));
}

TEST_CASE("strong coupling doubles the two-atom effective temperature") {
    auto r = effective_reservoir({ReservoirKind::CorrelatedPairTwoAtoms, 0.6, 2.0, 50.0});
    CHECK(r.beta_eff == doctest::Approx(1.2).epsilon(1e-10));
}

TEST_CASE("reservoir input validation") {
    CHECK_THROWS_AS(effective_reservoir({ReservoirKind::ThermalBoson, -0.1, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(effective_reservoir({ReservoirKind::CorrelatedPairOneAtom, 0.3, -6.0, 1.0}),
                    std::invalid_argument);
}
