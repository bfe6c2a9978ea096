#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "normset/functional.hpp"
#include "normset/generators.hpp"
#include "normset/params.hpp"
#include "normset/rng.hpp"

using namespace normset;

namespace {
const ParameterSystem& tiny() {
    static ParameterSystem p = ParameterSystem::tiny();
    return p;
}
} // namespace

TEST_CASE("evaluate on small trees") {
    // (1/m_2)(e_1* + e_2*) on e_1 + e_2 is 2/4
    FPtr f = mk_weighted(2, {mk_leaf(1, 1), mk_leaf(1, 2)});
    Vector x = Vector::basis(1).plus(Vector::basis(2));
    CHECK(evaluate(f, x, tiny()) == Rational(1, 2));

    // sum a_i * weighted: 3/5 * 1/4 + 4/5 * 1/16 = 1/5
    FPtr g = mk_elltwo({{Rational(3, 5), mk_weighted(2, {mk_leaf(1, 1)})},
                        {Rational(4, 5), mk_weighted(4, {mk_leaf(1, 2)})}});
    CHECK(evaluate(g, x, tiny()) == Rational(1, 5));

    CHECK(evaluate(g, Vector(), tiny()) == 0);
    CHECK(evaluate(mk_zero(), x, tiny()) == 0);
}

TEST_CASE("weight_of") {
    CHECK(*weight_of(mk_weighted(2, {mk_leaf(1, 3)}), tiny()) == 4);
    CHECK(!weight_of(mk_leaf(1, 5), tiny()).has_value());
    FPtr e = mk_elltwo({{Rational(1, 2), mk_weighted(2, {mk_leaf(1, 1)})},
                        {Rational(1, 2), mk_weighted(4, {mk_leaf(1, 2)})}});
    CHECK(!weight_of(e, tiny()).has_value());
}

TEST_CASE("range_of and restriction") {
    FPtr f = mk_weighted(2, {mk_leaf(1, 2), mk_leaf(1, 7)});
    CHECK(range_of(f, tiny()) == Interval{2, 7});

    FPtr cut = restrict_to(f, Interval{3, 5});
    CHECK(cut->kind == NodeKind::zero);
    CHECK(range_of(cut, tiny()).is_empty());

    CHECK(range_of(mk_leaf(-1, 4), tiny()) == Interval{4, 4});

    FPtr g = restrict_to_set(mk_weighted(2, {mk_leaf(1, 1), mk_leaf(1, 2)}), {1});
    CHECK(g->kind == NodeKind::weighted);
    CHECK(g->children.size() == 1);
    CHECK(evaluate(g, Vector::basis(1), tiny()) == Rational(1, 4));
}

TEST_CASE("restrict to the full range is evaluation-equivalent") {
    Rng rng(99);
    for (int t = 0; t < 30; ++t) {
        FPtr f = random_g0_tree(rng, tiny(), 2, 1, 20);
        Interval r = range_of(f, tiny());
        if (r.is_empty()) continue;
        FPtr g = restrict_to(f, r);
        for (int k = 0; k < 10; ++k) {
            Vector x = random_vector(rng, 5, 25);
            CHECK(evaluate(f, x, tiny()) == evaluate(g, x, tiny()));
        }
    }
}

TEST_CASE("validate: arity, weight distinctness, family boundaries") {
    // n_2 = 4 at TINY, so five children overflow
    std::vector<FPtr> five;
    for (long i = 1; i <= 5; ++i) five.push_back(mk_leaf(1, i));
    auto r = validate(mk_weighted(2, five), FamilyTag::g0(), tiny());
    CHECK(!r.ok);
    CHECK(r.reason.find("arity") != std::string::npos);

    // equal weights in a combination
    FPtr bad = mk_elltwo({{Rational(1, 2), mk_weighted(2, {mk_leaf(1, 1)})},
                          {Rational(1, 2), mk_weighted(2, {mk_leaf(1, 5)})}});
    r = validate(bad, FamilyTag::g0(), tiny());
    CHECK(!r.ok);
    CHECK(r.reason.find("pairwise different") != std::string::npos);

    // mixed combination: fails under G0, passes under F_{j0}
    FPtr mixed = mk_elltwo({{Rational(3, 5), mk_weighted(2, {mk_leaf(1, 1)})},
                            {Rational(4, 5), mk_leaf(1, 9)}});
    CHECK(!validate(mixed, FamilyTag::g0(), tiny()).ok);
    CHECK(validate(mixed, FamilyTag::fj0(2), tiny()).ok);

    // sum of squares above one
    FPtr heavy = mk_elltwo({{Rational(4, 5), mk_weighted(2, {mk_leaf(1, 1)})},
                            {Rational(4, 5), mk_weighted(4, {mk_leaf(1, 5)})}});
    CHECK(!validate(heavy, FamilyTag::g0(), tiny()).ok);

    // non-successive weighted children
    FPtr overlap = mk_weighted(2, {mk_leaf(1, 3), mk_leaf(1, 2)});
    CHECK(!validate(overlap, FamilyTag::g0(), tiny()).ok);

    // the zero functional is accepted everywhere
    CHECK(validate(mk_zero(), FamilyTag::g0(), tiny()).ok);
    CHECK(validate(mk_zero(), FamilyTag::w0(), tiny()).ok);
    CHECK(validate(mk_zero(), FamilyTag::fj0(2), tiny()).ok);
}

TEST_CASE("restriction of combinations keeps validity") {
    Rng rng(7);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        FPtr f = random_g0_tree(rng, tiny(), 2, 1, 24);
        REQUIRE(validate(f, FamilyTag::g0(), tiny()).ok);
        long a = rng.range(1, 24), b = rng.range(a, 24);
        FPtr g = restrict_to(f, Interval{a, b});
        CHECK(validate(g, FamilyTag::g0(), tiny()).ok);
        // evaluation agreement on the restriction
        for (int k = 0; k < 5; ++k) {
            Vector x = random_vector(rng, 5, 26);
            CHECK(evaluate(g, x, tiny()) == evaluate(f, x.restrict_interval({a, b}), tiny()));
        }
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("coordinate bound and linearity") {
    Rng rng(1234);
    for (int t = 0; t < 50; ++t) {
        FPtr f = random_g0_tree(rng, tiny(), 2, 1, 16);
        for (long n = 1; n <= 18; ++n) {
            Rational c = evaluate(f, Vector::basis(n), tiny());
            CHECK(rat_abs(c) <= 1);
        }
        Vector x = random_vector(rng, 4, 16);
        Vector y = random_vector(rng, 4, 16);
        Rational alpha = rng.rational(5, 5);
        Rational lhs = evaluate(f, x.plus(y.scaled(alpha)), tiny());
        CHECK(lhs == evaluate(f, x, tiny()) + alpha * evaluate(f, y, tiny()));
    }
}

TEST_CASE("sign flip preserves validity") {
    Rng rng(555);
    for (int t = 0; t < 40; ++t) {
        FPtr f = random_g0_tree(rng, tiny(), 2, 1, 20);
        FPtr g = negate(f);
        CHECK(validate(g, FamilyTag::g0(), tiny()).ok);
        Vector x = random_vector(rng, 5, 22);
        CHECK(evaluate(g, x, tiny()) == -evaluate(f, x, tiny()));
    }
}

TEST_CASE("aux family validation details") {
    auto& p = tiny();
    // C_{j0} leaf at the cap: j0 = 2 means #F <= n_1 = 2
    FPtr c2 = mk_cset({{1, 3}, {-1, 5}});
    CHECK(validate(c2, FamilyTag::fj0(2), p).ok);
    FPtr c3 = mk_cset({{1, 3}, {-1, 5}, {1, 7}});
    auto r = validate(c3, FamilyTag::fj0(2), p);
    CHECK(!r.ok);
    CHECK(r.reason.find("#F") != std::string::npos);

    // doubled arity: 2n_2 = 8 children pass under F_{j0}, fail under G0
    std::vector<FPtr> eight;
    for (long i = 1; i <= 8; ++i) eight.push_back(mk_leaf(1, i));
    FPtr w8 = mk_weighted(2, eight);
    CHECK(validate(w8, FamilyTag::fj0(2), p).ok);
    CHECK(!validate(w8, FamilyTag::g0(), p).ok);

    // duplicated basis index in the mixed part
    FPtr dup = mk_elltwo({{Rational(1, 2), mk_leaf(1, 4)}, {Rational(1, 2), mk_leaf(1, 4)}});
    r = validate(dup, FamilyTag::fj0(2), p);
    CHECK(!r.ok);
    CHECK(r.reason.find("duplicated basis index") != std::string::npos);

    // odd-weight top node only in F'
    FPtr odd = mk_weighted(3, {mk_cset({{1, 1}})});
    CHECK(!validate(odd, FamilyTag::fj0(2), p).ok);
    CHECK(validate(odd, FamilyTag::fj0_prime(2), p).ok);
    // and never nested
    FPtr nested = mk_weighted(2, {odd});
    CHECK(!validate(nested, FamilyTag::fj0_prime(2), p).ok);

    CHECK(!validate(c2, FamilyTag::g0(), p).ok);
}

TEST_CASE("random aux trees validate") {
    Rng rng(42);
    for (int t = 0; t < 50; ++t) {
        FPtr f = random_aux_tree(rng, tiny(), 2, false, 2, 1, 20);
        auto r = validate(f, FamilyTag::fj0(2), tiny());
        CAPTURE(canonical_encoding(f));
        CAPTURE(r.reason);
        CHECK(r.ok);
        FPtr g = random_aux_tree(rng, tiny(), 2, true, 2, 1, 20);
        auto r2 = validate(g, FamilyTag::fj0_prime(2), tiny());
        CAPTURE(canonical_encoding(g));
        CAPTURE(r2.reason);
        CHECK(r2.ok);
    }
}

TEST_CASE("canonical encoding is order-stable for combinations") {
    FPtr a = mk_elltwo({{Rational(3, 5), mk_weighted(2, {mk_leaf(1, 1)})},
                        {Rational(4, 5), mk_weighted(4, {mk_leaf(1, 2)})}});
    FPtr b = mk_elltwo({{Rational(4, 5), mk_weighted(4, {mk_leaf(1, 2)})},
                        {Rational(3, 5), mk_weighted(2, {mk_leaf(1, 1)})}});
    CHECK(structurally_equal(a, b));
    CHECK(!structurally_equal(a, mk_leaf(1, 1)));
}
