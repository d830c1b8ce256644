#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <random>

#include "laver/identities.hpp"
#include "laver/table.hpp"
#include "laver/tower.hpp"
#include "oracle/dense_oracle.hpp"

using namespace laver;

TEST_CASE("small tables match hand-derived rows") {
    const auto a0 = build_table(0);
    CHECK(a0.size() == 1);
    CHECK(a0.row(0) == std::vector<Element>{0});

    const auto a1 = build_table(1);
    CHECK(a1.row(0) == std::vector<Element>{1, 0});
    CHECK(a1.row(1) == std::vector<Element>{0});

    const auto a2 = build_table(2);
    CHECK(a2.row(0) == std::vector<Element>{1, 2, 3, 0});
    CHECK(a2.row(1) == std::vector<Element>{2, 0});
    CHECK(a2.row(2) == std::vector<Element>{3, 0});
    CHECK(a2.row(3) == std::vector<Element>{0});
}

TEST_CASE("build agrees with the dense oracle for n <= 8") {
    for (Rank n = 0; n <= 8; ++n) {
        CAPTURE(n);
        const auto t = build_table(n);
        const oracle::DenseTable d(n);
        CHECK(t.validate().empty());
        for (std::uint64_t a = 0; a < t.size(); ++a) {
            const auto e = static_cast<Element>(a);
            REQUIRE(t.period(e) == d.period(a));
            for (std::uint64_t b = 0; b <= t.size(); ++b) REQUIRE(t.apply(e, b) == d.op(a, b));
            if (a + 1 < t.size()) REQUIRE(t.threshold(e) == d.threshold(a));
        }
    }
}

TEST_CASE("dense oracle itself is left distributive") {
    for (unsigned n = 0; n <= 4; ++n) CHECK(oracle::DenseTable(n).left_distributive());
}

TEST_CASE("apply examples") {
    CHECK(build_table(5).apply(5, 1) == 6);
    const auto a9 = build_table(9);
    CHECK(a9.apply(48, 51) == 243);
    CHECK(a9.apply(192, 51) == 243);
    CHECK(build_table(3).apply(2, 3) == 7);
    for (Rank n = 0; n <= 10; ++n) {
        const auto t = build_table(n);
        for (std::uint64_t a = 0; a < t.size(); ++a) {
            REQUIRE(t.apply(static_cast<Element>(a), 1) == (a + 1) % t.size());
            REQUIRE(t.apply(static_cast<Element>(a), 0) == 0);
        }
    }
}

TEST_CASE("apply reduces b into the period") {
    const auto t = build_table(6);
    for (std::uint64_t a = 0; a < t.size(); ++a) {
        const auto e = static_cast<Element>(a);
        const auto p = t.period(e);
        for (std::uint64_t b = 1; b <= p; ++b) {
            REQUIRE(t.apply(e, b + p) == t.apply(e, b));
            REQUIRE(t.apply(e, b + (std::uint64_t{1} << 40)) == t.apply(e, b));
        }
    }
}

TEST_CASE("periods") {
    CHECK(build_table(3).period(5) == 2);
    for (Rank n = 1; n <= 12; ++n) {
        const auto t = build_table(n);
        CHECK(t.period(0) == t.size());
        CHECK(t.period(static_cast<Element>(t.size() - 1)) == 1);
        CHECK(t.period(static_cast<Element>(t.size() / 2)) == t.size() / 2);
        for (std::uint64_t a = 1; a + 1 < t.size(); ++a) {
            const auto p = t.period(static_cast<Element>(a));
            REQUIRE(std::has_single_bit(p));
            REQUIRE(p > 1);
            REQUIRE(p < t.size());
        }
    }
}

TEST_CASE("thresholds") {
    CHECK(build_table(5).threshold(5) == 2);
    CHECK(build_table(10).threshold(34) == 5);
    for (Rank n = 1; n <= 12; ++n) {
        const auto t = build_table(n);
        // At n = 1, 2^{n-1} is the top element and has no threshold.
        if (n >= 2) CHECK(t.threshold(static_cast<Element>(t.size() / 2)) == 1);
        CHECK_THROWS_AS(t.threshold(static_cast<Element>(t.size() - 1)), UndefinedThresholdError);
        const Element half = static_cast<Element>(t.size() / 2);
        for (std::uint64_t a = 0; a + 1 < t.size(); ++a) {
            const auto e = static_cast<Element>(a);
            const auto th = t.threshold(e);
            REQUIRE(th >= 1);
            if (th > 1) REQUIRE(t.apply(e, th - 1) < half);
            REQUIRE(t.apply(e, th) >= half);
            REQUIRE(th <= t.period(e) / 2);
        }
    }
}

TEST_CASE("compose") {
    CHECK(build_table(9).compose(34, 4) == 242);
    CHECK(build_table(4).compose(4, 2) == 6);
    for (Rank n = 1; n <= 8; ++n) {
        const auto t = build_table(n);
        for (std::uint64_t b = 0; b + 1 < t.size(); ++b) REQUIRE(t.compose(0, static_cast<Element>(b)) == b);
    }
}

TEST_CASE("compose is compatible with application, exhaustive n <= 6") {
    for (Rank n = 0; n <= 6; ++n) {
        CAPTURE(n);
        CHECK(compose_violations_exhaustive(build_table(n), 0) == 0);
    }
}

TEST_CASE("left distributivity") {
    for (Rank n = 0; n <= 6; ++n) {
        CAPTURE(n);
        const auto t = build_table(n);
        CHECK(ld_violations_exhaustive(t, 0) == 0);
        CHECK(ld_violations_exhaustive(t, 3) == 0);
    }
    for (Rank n = 7; n <= 12; ++n) {
        CAPTURE(n);
        CHECK(ld_violations_sampled(build_table(n), 1'000'000, 20261018 + n, 2) == 0);
    }
}

TEST_CASE("from_rows rejects rows breaking the invariants") {
    using Rows = std::vector<std::vector<Element>>;
    CHECK_NOTHROW(LaverTable::from_rows(2, Rows{{1, 2, 3, 0}, {2, 0}, {3, 0}, {0}}));
    CHECK_THROWS(LaverTable::from_rows(2, Rows{{1, 2, 3, 0}, {3, 0}, {2, 0}, {0}}));     // a * 1 != a + 1
    CHECK_THROWS(LaverTable::from_rows(2, Rows{{1, 3, 2, 0}, {2, 0}, {3, 0}, {0}}));     // not increasing
    CHECK_THROWS(LaverTable::from_rows(2, Rows{{1, 2, 3}, {2, 0}, {3, 0}, {0}}));        // length 3
    CHECK_THROWS(LaverTable::from_rows(2, Rows{{1, 2, 3, 1}, {2, 0}, {3, 0}, {0}}));     // no final 0
    CHECK_THROWS(LaverTable::from_rows(2, Rows{{1, 2, 3, 0}, {2, 0}, {3, 0}}));          // missing row
}

TEST_CASE("homomorphism, period evolution, shift law and doubling witness") {
    const auto tower = TableTower::build(12);
    for (Rank n = 0; n < 12; ++n) {
        CAPTURE(n);
        const auto& lo = tower.at(n);
        const auto& hi = tower.at(n + 1);
        const std::uint64_t mask = lo.size() - 1;
        if (n <= 8) {
            for (std::uint64_t a = 0; a < hi.size(); ++a)
                for (std::uint64_t b = 0; b < hi.size(); ++b)
                    REQUIRE((hi.apply(static_cast<Element>(a), b) & mask) ==
                            lo.apply(static_cast<Element>(a & mask), b & mask));
        }
        for (std::uint64_t a = 0; a < lo.size(); ++a) {
            const auto e = static_cast<Element>(a);
            const auto p = lo.period(e);
            const auto q = hi.period(e);
            REQUIRE((q == p || q == 2 * p));
            REQUIRE(hi.period(static_cast<Element>(a + lo.size())) == p);
            if (q == 2 * p) REQUIRE(hi.apply(e, p) == lo.size());
        }
    }
}

TEST_CASE("powers of two in A_{n+2}") {
    for (Rank n = 0; n <= 10; ++n) {
        const auto t = build_table(n + 2);
        const auto two_n = static_cast<Element>(std::uint64_t{1} << n);
        CHECK(t.apply(two_n, two_n) == 2 * two_n);
        for (std::uint64_t a = 1; a <= two_n; ++a) REQUIRE(t.apply(two_n, a) == (two_n + a) % t.size());
    }
}

TEST_CASE("value width and storage") {
    CHECK(build_table(8).value_width() == 1);
    CHECK(build_table(9).value_width() == 2);
    CHECK(value_width_for(16) == 2);
    CHECK(value_width_for(17) == 4);
    const auto t = build_table(17);
    CHECK(t.value_width() == 4);
    CHECK(t.validate().empty());
    std::uint64_t sum = 0;
    for (std::uint64_t a = 0; a < t.size(); ++a) sum += t.period(static_cast<Element>(a));
    CHECK(sum == t.total_entries());
}

TEST_CASE("resource limit fails fast") {
    CHECK_THROWS_AS(build_table(12, BuildLimits{1000}), ResourceLimitError);
    CHECK_THROWS_AS(build_table(33), ResourceLimitError);
    CHECK_NOTHROW(build_table(6, BuildLimits{build_table(6).total_entries()}));
}

TEST_CASE("range errors") {
    const auto t = build_table(3);
    CHECK_THROWS_AS(t.apply(8, 1), std::out_of_range);
    CHECK_THROWS_AS(t.period(8), std::out_of_range);
    CHECK_THROWS_AS(t.compose(1, 8), std::out_of_range);
}

TEST_CASE("tower reduces arguments and reports missing ranks") {
    const auto tower = TableTower::build(5);
    CHECK(tower.apply(3, 13, 3) == tower.at(3).apply(5, 3));
    CHECK(tower.period(64, 5) == 32);
    CHECK_THROWS_AS(tower.at(6), MissingTableError);
    CHECK_THROWS_AS(tower.require(7, "test"), MissingTableError);
}
