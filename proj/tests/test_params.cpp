#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "normset/params.hpp"

using namespace normset;

TEST_CASE("paper exponents match the defining recursion") {
    auto p = ParameterSystem::paper();

    auto e1 = p.paper_parameters(1);
    CHECK(e1.m_exp == 8);
    CHECK(e1.n_exp == 7);
    CHECK(!e1.s.has_value());

    auto e2 = p.paper_parameters(2);
    CHECK(e2.m_exp == 40);
    CHECK(*e2.s == 160);
    CHECK(e2.n_exp == 1280);

    auto e3 = p.paper_parameters(3);
    CHECK(e3.m_exp == 200);
    CHECK(*e3.s == 800);
    CHECK(e3.n_exp == 1024800);

    CHECK_THROWS_AS(p.paper_parameters(0), std::domain_error);
}

TEST_CASE("paper exponents cross-check against the closed forms") {
    // independent route: e_m(j) = 8 * 5^(j-1); e_n via logarithmic identity
    // log2 n_{j+1} = s_{j+1} * (1 + log2 n_j) with s_{j+1} = 4 * e_m(j+1)
    auto p = ParameterSystem::paper();
    Integer em(8), en(7);
    for (long j = 1; j <= 6; ++j) {
        auto e = p.paper_parameters(j);
        CHECK(e.m_exp == em);
        CHECK(e.n_exp == en);
        em *= 5;
        en = Integer(4) * em * (en + 1);
    }
}

TEST_CASE("TINY surrogate basics") {
    auto t = ParameterSystem::tiny();
    CHECK(t.m(1) == 2);
    CHECK(t.m(2) == 4);
    CHECK(t.n(2) == 4);
    CHECK(t.m(10) == 1024);
    CHECK(t.omega1().contains(1));
    CHECK(t.omega1().contains(3));
    CHECK(!t.omega1().contains(2));
    CHECK(t.omega2().contains(2));
    CHECK(t.omega2().at(1) == 2);
    CHECK(t.omega2().at(2) == 4);
    // never a shared element over a deep probe
    for (long k = 1; k <= 10'000; ++k) {
        CHECK(!t.omega2().contains(t.omega1().at(k)));
        CHECK(!t.omega1().contains(t.omega2().at(k)));
    }
}

TEST_CASE("surrogate validation") {
    using I = Integer;
    CHECK_NOTHROW(ParameterSystem::make_surrogate({I(2), I(4), I(8), I(16)},
                                                  {I(2), I(4), I(8), I(16)}));
    // non-increasing m
    CHECK_THROWS_WITH_AS(
        ParameterSystem::make_surrogate({I(2), I(2), I(8), I(16)}, {I(2), I(4), I(8), I(16)}),
        doctest::Contains("not strictly increasing"), std::invalid_argument);
    // m_1 >= 2 fails
    CHECK_THROWS_WITH_AS(
        ParameterSystem::make_surrogate({I(1), I(2), I(4), I(8)}, {I(2), I(4), I(8), I(16)}),
        doctest::Contains("m_1 >= 2"), std::invalid_argument);
    // strictly increasing integer m with m_1 >= 2 forces m_{2j} >= 2j+1, so
    // sum 1/m_{2j}^2 <= pi^2/8 - 1 < 1 automatically; the check still runs
    CHECK(ParameterSystem::make_surrogate({I(2), I(3)}, {I(2), I(3)}).gamma_sq() < 1);
    CHECK_NOTHROW(ParameterSystem::make_surrogate({I(2), I(4)}, {I(2), I(3)}));
    // overlapping omegas
    CHECK_THROWS_WITH_AS(
        ParameterSystem::make_surrogate({I(2), I(4)}, {I(2), I(3)}, {1, 2}, {1, 2}),
        doctest::Contains("omega"), std::invalid_argument);
}

TEST_CASE("weight tail bound") {
    auto t = ParameterSystem::tiny();
    CHECK(t.weight_tail_bound(Rational(0), 3) == 0);

    // TINY, x_l1 = 1, J = 1: sum_{j>=2} 16^{-j} = 1/240
    Rational b = t.weight_tail_bound(Rational(1), 1);
    CHECK(b * b >= Rational(1, 240));
    CHECK(b * b <= Rational(1, 240) * Rational(1'000'000'001, 1'000'000'000));

    // partial-sum oracle: the bound dominates any finite partial sum
    Rational partial(0);
    for (long j = 2; j <= 40; ++j) {
        Integer m = t.m(2 * j);
        partial += Rational(1) / Rational(m * m);
    }
    CHECK(b * b >= partial);

    // monotone decreasing in J
    Rational prev = t.weight_tail_bound(Rational(1), 1);
    for (long J = 2; J <= 8; ++J) {
        Rational cur = t.weight_tail_bound(Rational(1), J);
        CHECK(cur <= prev);
        prev = cur;
    }
}

TEST_CASE("gamma squared stays below one") {
    CHECK(ParameterSystem::tiny().gamma_sq() < 1);
    CHECK(ParameterSystem::paper().gamma_sq() < 1);
    CHECK(ParameterSystem::pow2(2, 3).gamma_sq() < 1);
}
