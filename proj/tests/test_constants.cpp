#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "modisc/constants.hpp"
#include "modisc/mesh.hpp"

using namespace modisc;

namespace {

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

}  // namespace

TEST_CASE("exponent pair identities") {
    const ExponentPair e(3.7);
    CHECK(std::abs(1.0 / e.p + 1.0 / e.p_prime - 1.0) < 1e-14);
    CHECK(std::abs(2.0 / e.p + 1.0 / e.p_pp - 1.0) < 1e-14);
    CHECK_THROWS_AS(ExponentPair(2.0), std::invalid_argument);
}

TEST_CASE("eta") {
    CHECK(eta(2.0, 5.0) == 0.0);
    CHECK(eta(5.0, 5.0) == 1.0);
    CHECK(eta(4.0, 8.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(eta(1.5, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(eta(6.0, 5.0), std::invalid_argument);
}

TEST_CASE("laplace constant bound") {
    // C_L p^{d+1}: 2^3 = 8 and 3^3 = 27 for d = 2, 3^4 = 81 for d = 3
    CHECK(laplace_constant_bound(2.0, 2, 1.0) == doctest::Approx(8.0));
    CHECK(laplace_constant_bound(3.0, 2, 1.0) == doctest::Approx(27.0));
    CHECK(laplace_constant_bound(3.0, 3, 1.0) == doctest::Approx(81.0));
    CHECK(laplace_constant_bound(2.0, 2, 1.0) >= 1.0);
}

TEST_CASE("p_star limits and worked value") {
    CHECK(p_star(0.0, 5.0, 10.0) == doctest::Approx(2.0));
    for (double t : {0.9, 0.95, 1.0}) CHECK(p_star(t, 5.0, 10.0) == doctest::Approx(5.0));
    // C_P = 8, P = 4, t = 1/2: 1/(1/2 - (log 2 / log 8)(1/4)) = 12/5
    CHECK(p_star(0.5, 4.0, 8.0) == doctest::Approx(2.4).epsilon(1e-14));
    CHECK(p_star(0.3, 4.0, 1.0) == doctest::Approx(4.0));  // Poisson case
}

TEST_CASE("p_star is continuous and nondecreasing") {
    const double P = 6.0, C_P = 20.0;
    double prev = p_star(0.0, P, C_P);
    CHECK(prev == doctest::Approx(2.0));
    for (int i = 1; i <= 1000; ++i) {
        const double t = static_cast<double>(i) / 1000.0;
        const double v = p_star(t, P, C_P);
        CHECK(v >= prev - 1e-12);
        CHECK(std::abs(v - prev) < 0.1);  // no jumps on a 1e-3 grid
        prev = v;
    }
    CHECK(prev == doctest::Approx(P));
    // both branches meet at t = 1 - 1/C_P
    const double junction = 1.0 - 1.0 / C_P;
    CHECK(p_star(junction - 1e-12, P, C_P) == doctest::Approx(P).epsilon(1e-9));
    CHECK(p_star(junction, P, C_P) == P);
}

TEST_CASE("c_reg worked values") {
    // alpha = beta = 1, p = P: constant collapses to C_P
    RegularityInputs in{1.0, 1.0, 4.0, 4.0, 1.0, 2};
    CHECK(c_reg(in, 9.0) == doctest::Approx(9.0).epsilon(1e-14));

    // alpha = beta = kappa, p = 2: eta = 0 and the constant is 1/kappa
    RegularityInputs in2{3.0, 3.0, 4.0, 2.0, 1.0, 2};
    CHECK(c_reg(in2, 9.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // alpha/beta = 0.5, C_P = 4, eta = 1/4 (P = 6 and p chosen accordingly)
    // C_reg = (1/beta) sqrt(2)/(1 - sqrt(2)/2)
    const double P = 6.0;
    // eta(p, 6) = 1/4  =>  1/2 - 1/p = (1/4)(1/2 - 1/6)  =>  p = 1/(1/2 - 1/12)
    const double p = 1.0 / (0.5 - (0.25) * (0.5 - 1.0 / 6.0));
    RegularityInputs in3{0.5, 1.0, P, p, 1.0, 2};
    const double expected = std::sqrt(2.0) / (1.0 - std::sqrt(2.0) * 0.5);
    CHECK(c_reg(in3, 4.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("c_reg denominator positivity matches p < p_star") {
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const double ratio = 0.05 + 0.9 * rng.uniform();
        const double P = 2.5 + 5.0 * rng.uniform();
        const double C_P = 1.5 + 30.0 * rng.uniform();
        const double ps = p_star(ratio, P, C_P);
        const double p = 2.0 + (P - 2.0) * rng.uniform();
        RegularityInputs in{ratio, 1.0, P, p, 1.0, 2};
        if (p < ps * (1.0 - 1e-12)) {
            CHECK_NOTHROW(c_reg(in, C_P));
        } else if (p > ps * (1.0 + 1e-12)) {
            CHECK_THROWS_AS(c_reg(in, C_P), std::domain_error);
        }
    }
}

TEST_CASE("p_max") {
    // worked value: alpha/beta = 0.5, C_P = 4, P = 6, c = 1/2
    const PMaxResult r = p_max(0.5, 6.0, 4.0, 0.5);
    CHECK(r.p_max == doctest::Approx(2.4).epsilon(1e-14));
    CHECK(r.p_max >= r.lower_bound);

    // c -> 1 recovers the first branch of p*
    const PMaxResult r2 = p_max(0.5, 6.0, 4.0, 1.0 - 1e-12);
    CHECK(r2.p_max == doctest::Approx(p_star(0.5, 6.0, 4.0)).epsilon(1e-9));

    SplitMix64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const double C_P = 2.0 + 40.0 * rng.uniform();
        const double ratio = (1.0 - 1.0 / C_P) * (0.05 + 0.9 * rng.uniform());
        const double P = 2.5 + 8.0 * rng.uniform();
        const double c = 0.05 + 0.9 * rng.uniform();
        const PMaxResult rr = p_max(ratio, P, C_P, c);
        CHECK(rr.p_max >= 2.0 - 1e-12);
        CHECK(rr.p_max <= p_star(ratio, P, C_P) + 1e-12);
        CHECK(rr.p_max >= rr.lower_bound - 1e-12);
    }
}

TEST_CASE("perturbation regimes") {
    // alpha = beta: always small regime
    RegularityInputs same{2.0, 2.0, 4.0, 3.0, 1.0, 2};
    const RegimeBound small = perturbation_regime_bound(same, 0.5);
    CHECK(small.regime == PerturbationRegime::Small);
    CHECK(small.constant == doctest::Approx(2.0 * 1.0 * std::pow(4.0, 3) / 2.0));

    // boundary ratio is included in the small regime (closed inequality)
    const double P = 4.0, C_L = 1.0;
    const double boundary = 1.0 - 1.0 / (2.0 * C_L * std::pow(P, 3));
    RegularityInputs edge{boundary, 1.0, P, 3.0, C_L, 2};
    CHECK(perturbation_regime_bound(edge, 0.5).regime == PerturbationRegime::Small);

    // alpha/beta = 0.5, c = 0.5: large-regime constant (1/beta)/(sqrt(.5)-.5)
    RegularityInputs big{0.5, 1.0, P, 2.0, C_L, 2};
    const RegimeBound large = perturbation_regime_bound(big, 0.5);
    CHECK(large.regime == PerturbationRegime::Large);
    CHECK(large.constant ==
          doctest::Approx(1.0 / (std::sqrt(0.5) - 0.5)).epsilon(1e-12));
}

TEST_CASE("czygmund C(d)") {
    CHECK(czygmund_C(2) == doctest::Approx(128.0 + 2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(czygmund_C(3) ==
          doctest::Approx(416.0 + 4.0 * std::numbers::pi * std::sqrt(3.0)).epsilon(1e-15));
    CHECK(czygmund_C(3) > czygmund_C(2));
    CHECK_THROWS_AS(czygmund_C(4), std::invalid_argument);
}

TEST_CASE("czygmund C(d,p)") {
    const double expected = 2.0 * std::pow(6.0, 2.0 / 3.0) *
                            std::cbrt(128.0 + 2.0 * std::numbers::pi);
    CHECK(czygmund_Cdp(2, 1.5) == doctest::Approx(expected).epsilon(1e-13));
    // divergence toward both endpoints of (1,2)
    CHECK(czygmund_Cdp(2, 1.9999) > czygmund_Cdp(2, 1.5));
    CHECK(czygmund_Cdp(2, 1.9999) > czygmund_Cdp(2, 1.99));
    CHECK(czygmund_Cdp(2, 1.01) > czygmund_Cdp(2, 1.5));
    CHECK_THROWS_AS(czygmund_Cdp(2, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(czygmund_Cdp(2, 1.0), std::invalid_argument);
}

TEST_CASE("czygmund C1 branches") {
    for (int d : {2, 3}) {
        CHECK(czygmund_C1(d, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
        // branch continuity at the junctions
        for (double pj : {1.5, 2.0, 3.0}) {
            const double lo = czygmund_C1(d, pj - 1e-11);
            const double hi = czygmund_C1(d, pj + 1e-11);
            CHECK(std::abs(lo - hi) / hi < 1e-8);
        }
        SplitMix64 rng(5 + d);
        for (int i = 0; i < 50; ++i) {
            const double p = 1.0 + 30.0 * rng.uniform() + 1e-6;
            const double v = czygmund_C1(d, p);
            CHECK(v >= 1.0 - 1e-12);
            CHECK(czygmund_C1(d, p / (p - 1.0)) == doctest::Approx(v).epsilon(1e-12));
        }
        // O(p) growth: the ratio C1/p stabilizes for large p
        const double r3 = czygmund_C1(d, 1e3) / 1e3;
        const double r4 = czygmund_C1(d, 1e4) / 1e4;
        CHECK(std::abs(r3 - r4) / r4 < 0.05);
    }
}

TEST_CASE("theta") {
    CHECK(theta(2.0, 6.0) == 1.0);
    CHECK(theta(6.0, 6.0) == 0.0);
    CHECK(theta(3.0, 6.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(theta(4.0, 3.0), std::invalid_argument);

    SplitMix64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const double r = 2.0 + 6.0 * rng.uniform() + 1e-9;
        const double t = r + 6.0 * rng.uniform() + 1e-9;
        const double th = theta(r, t);
        CHECK(th > 0.0);
        CHECK(th < 1.0);
        CHECK(std::abs(1.0 / r - (th / 2.0 + (1.0 - th) / t)) < 1e-14);
    }
}

TEST_CASE("friedrichs bound") {
    const TriangleMesh square = build_structured_square(2);
    const FriedrichsBound b = friedrichs_bound(square, 1.0);
    CHECK(b.C_F == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
    CHECK(b.C_Omega == doctest::Approx(b.C_F));

    const FriedrichsBound quartered = friedrichs_bound(square, 4.0);
    CHECK(quartered.C_Omega == doctest::Approx(0.5 * b.C_Omega).epsilon(1e-14));

    const FriedrichsBound doubled = friedrichs_bound(2.0 * square.diameter(), 1.0);
    CHECK(doubled.C_F == doctest::Approx(2.0 * b.C_F).epsilon(1e-14));
    CHECK_THROWS_AS(friedrichs_bound(square, 0.0), std::invalid_argument);
}
