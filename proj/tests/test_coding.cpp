#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "normset/coding.hpp"
#include "normset/generators.hpp"

using namespace normset;

namespace {
FPtr pair_functional(long a) {  // (1/m_2)(e_a* + e_{a+1}*)
    return mk_weighted(2, {mk_leaf(1, a), mk_leaf(1, a + 1)});
}
} // namespace

TEST_CASE("sigma assigns the smallest admissible unused even value") {
    SigmaRegistry reg(ParameterSystem::tiny());
    // prefix ((1/m_2)(e_1*+e_2*)): coords 1/4, maxsupp 2, bound 8;
    // candidates 2j with j even: m_4 = 16 > 8
    std::vector<FPtr> prefix{pair_functional(1)};
    long v = reg.sigma_assign(prefix);
    CHECK(v == 4);
    CHECK(reg.sigma_assign(prefix) == 4);  // determinism
    CHECK(*reg.sigma_lookup(prefix) == 4);

    // a second distinct prefix with the same bound gets the next value
    std::vector<FPtr> prefix2{pair_functional(3)};
    CHECK(reg.sigma_assign(prefix2) == 8);

    CHECK(reg.audit().ok);
}

TEST_CASE("sigma rejects prefixes outside Q_s") {
    SigmaRegistry reg(ParameterSystem::tiny());
    std::vector<FPtr> bad{pair_functional(3), pair_functional(1)};  // not successive
    CHECK_THROWS_AS(reg.sigma_assign(bad), std::invalid_argument);
    std::vector<FPtr> zero{mk_zero()};
    CHECK_THROWS_AS(reg.sigma_assign(zero), std::invalid_argument);
    std::vector<FPtr> empty;
    CHECK_THROWS_AS(reg.sigma_assign(empty), std::invalid_argument);
}

TEST_CASE("sigma injectivity over many random prefixes") {
    SigmaRegistry reg(ParameterSystem::tiny());
    Rng rng(20'240'101);
    std::set<long> values;
    long assigned = 0;
    for (int t = 0; t < 200; ++t) {
        std::vector<FPtr> prefix;
        long pos = 1;
        long len = rng.range(1, 3);
        for (long i = 0; i < len; ++i) {
            FPtr f = random_g0_tree(rng, ParameterSystem::tiny(), 1, pos, pos + 3);
            Interval r = range_of(f, reg.params());
            if (r.is_empty()) {
                f = mk_leaf(1, pos);
                r = {pos, pos};
            }
            prefix.push_back(f);
            pos = r.hi + 1;
        }
        if (reg.sigma_lookup(prefix)) continue;
        long v = reg.sigma_assign(prefix);
        CHECK(values.insert(v).second);
        ++assigned;
    }
    CHECK(assigned > 100);
    CHECK(reg.audit().ok);
}

TEST_CASE("journal replay is byte-identical") {
    SigmaRegistry reg(ParameterSystem::tiny());
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        std::vector<FPtr> prefix{pair_functional(1 + 2 * t)};
        reg.sigma_assign(prefix);
    }
    LeafChainFactory factory;
    auto seq = build_special_sequence(1, factory, reg);
    CHECK(!seq.id.empty());

    std::string j1 = reg.journal_jsonl();
    SigmaRegistry reg2 = SigmaRegistry::replay(j1, ParameterSystem::tiny());
    CHECK(reg2.journal_jsonl() == j1);
    CHECK(reg2.audit().ok);
    CHECK(reg2.find_sequence(seq.id) != nullptr);
    // replayed assignments resolve identically
    std::vector<FPtr> probe{pair_functional(3)};
    CHECK(reg.sigma_assign(probe) == reg2.sigma_assign(probe));
}

TEST_CASE("special sequence construction at TINY j=1") {
    SigmaRegistry reg(ParameterSystem::tiny());
    LeafChainFactory factory;
    auto seq = build_special_sequence(1, factory, reg);
    REQUIRE(seq.components.size() == 8);  // n_3 = 8
    // first weight: smallest odd j_1 with m_{2j_1} > n_3^2 = 64 is j_1 = 5
    CHECK(seq.weight_indices[0] == 10);
    // sigma escalation for leaf chains at positions 1..8
    std::vector<long> expect{10, 12, 16, 20, 24, 28, 32, 36};
    CHECK(seq.weight_indices == expect);

    CHECK(validate_special_sequence(seq.components, 1, reg).ok);

    SUBCASE("truncation fails the length clause") {
        std::vector<FPtr> shorter(seq.components.begin(), seq.components.end() - 1);
        auto r = validate_special_sequence(shorter, 1, reg);
        CHECK(!r.ok);
        CHECK(r.reason.find("length") != std::string::npos);
    }
    SUBCASE("a tampered second weight fails condition 3") {
        std::vector<FPtr> tampered = seq.components;
        tampered[1] = mk_weighted(14, {mk_leaf(1, 2)});
        auto r = validate_special_sequence(tampered, 1, reg);
        CHECK(!r.ok);
        CHECK(r.reason.find("condition 3") != std::string::npos);
    }
    SUBCASE("a first weight from Omega2 fails condition 2") {
        std::vector<FPtr> wrong = seq.components;
        wrong[0] = mk_weighted(12, {mk_leaf(1, 1)});  // j_1 = 6 is even
        auto r = validate_special_sequence(wrong, 1, reg);
        CHECK(!r.ok);
        CHECK(r.reason.find("condition 2") != std::string::npos);
    }
}

TEST_CASE("growth inequality holds post hoc for every assignment") {
    SigmaRegistry reg(ParameterSystem::tiny());
    Rng rng(99);
    for (int t = 0; t < 50; ++t) {
        std::vector<FPtr> prefix{random_weighted_tree(rng, ParameterSystem::tiny(), 1,
                                                      1 + 4 * t, 4 + 4 * t, 2 * rng.range(1, 3))};
        if (range_of(prefix[0], reg.params()).is_empty()) continue;
        long v = reg.sigma_assign(prefix);
        Rational bound = reg.growth_bound(prefix);
        CHECK(Rational(reg.params().m(v)) > bound);
    }
    CHECK(reg.audit().ok);
}

TEST_CASE("sequence length budget guards huge lengths") {
    SigmaRegistry reg(ParameterSystem::tiny());
    LeafChainFactory factory;
    // n_{2j+1} = 2^9 = 512 exceeds a budget of 100
    CHECK_THROWS_WITH_AS(build_special_sequence(4, factory, reg, 100),
                         doctest::Contains("budget"), std::invalid_argument);
}
