#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "laver/conjectures.hpp"
#include "oracle/dense_oracle.hpp"

using namespace laver;

namespace {
const TableTower& tower14() {
    static const TableTower t = TableTower::build(14);
    return t;
}
}  // namespace

TEST_CASE("check names round-trip") {
    for (Check c : all_checks()) CHECK(parse_check(check_name(c)) == c);
    CHECK(parse_check("weak_uh") == Check::weak_uh);
    CHECK_FALSE(parse_check("nope").has_value());
}

TEST_CASE("TH at n = 3 sweeps seven elements") {
    const auto r = verify_th(3, tower14());
    CHECK(r.status == Status::verified);
    CHECK(r.elements_checked == 7);
    CHECK(r.counterexamples.empty());
}

TEST_CASE("TH passes trivially when the threshold is 1") {
    // a >= 2^{n-1} - 1 has a * 1 >= 2^{n-1}, so c = 0, whose period doubles.
    const auto& t = tower14();
    for (Rank k = 0; k < 13; ++k) CHECK(in_range(0, GammaIndex{k}, t));
    for (Rank n = 2; n <= 12; ++n) {
        const auto& table = t.at(n);
        for (std::uint64_t a = table.size() / 2 - 1; a + 1 < table.size(); ++a) {
            REQUIRE(table.threshold(static_cast<Element>(a)) == 1);
        }
    }
}

TEST_CASE("all checks verified at desk scale") {
    const auto& t = tower14();
    for (Check c : all_checks()) {
        for (Rank n = min_rank(c); n <= 12; ++n) {
            if ((rank_parity(c) == 1 && n % 2 == 0) || (rank_parity(c) == 2 && n % 2 == 1)) continue;
            CAPTURE(check_name(c));
            CAPTURE(n);
            const auto r = verify(c, n, t);
            CHECK(r.status == Status::verified);
            CHECK(r.violations == 0);
            CHECK(r.undecided == 0);
        }
    }
    CHECK(verify_twin(13, t).status == Status::verified);
}

TEST_CASE("weak UH matches a brute-force oracle for n <= 4") {
    const auto dense = oracle::dense_tower(5);
    for (Rank n = 1; n <= 4; ++n) {
        std::uint64_t collisions = 0;
        const std::uint64_t half = std::uint64_t{1} << (n - 1);
        for (std::uint64_t a = 1; a < half; ++a)
            for (std::uint64_t b = a + 1; b < half; ++b) {
                if (!oracle::dense_in_range(dense, a, n) || !oracle::dense_in_range(dense, b, n)) continue;
                if (dense[n].period(a) != dense[n].period(b)) continue;
                unsigned k = 0;
                while ((std::uint64_t{1} << k) < dense[n].period(a)) ++k;
                std::uint64_t c = 1;
                while (!oracle::dense_in_range(dense, c, k)) ++c;
                if (dense[n].op(a, c) == dense[n].op(b, c)) ++collisions;
            }
        CHECK(collisions == 0);
        CHECK(verify_weak_uh(n, tower14()).status == Status::verified);
    }
}

TEST_CASE("WTH variants agree element by element below 2^{n-1}") {
    const auto& t = tower14();
    for (Rank n = 2; n <= 12; ++n) {
        for (std::uint64_t a = 1; a < (std::uint64_t{1} << (n - 1)); ++a) {
            if (!in_range(a, GammaIndex{n}, t)) continue;
            const bool base = wth_holds(Check::wth, n, a, t);
            REQUIRE(wth_holds(Check::wth1, n, a, t) == base);
            REQUIRE(wth_holds(Check::wth2, n, a, t) == base);
            REQUIRE(wth_holds(Check::wth3, n, a, t) == base);
        }
    }
}

TEST_CASE("WTH1-3 over the full range a < 2^n - 1") {
    SweepOptions wide;
    wide.full_range = true;
    for (Check c : {Check::wth1, Check::wth2, Check::wth3}) {
        for (Rank n = min_rank(c); n <= 12; ++n) {
            const auto r = verify(c, n, tower14(), wide);
            CHECK(r.full_range);
            CHECK(r.elements_checked == (std::uint64_t{1} << n) - 2);
            CHECK(r.status == Status::verified);
        }
    }
}

TEST_CASE("the range hypothesis of WTH1 is needed") {
    const auto& t = tower14();
    // n = 5, a = 5: c = 1, a * c = 6, gamma_5 not in range(6).
    CHECK_FALSE(in_range(5, GammaIndex{5}, t));
    CHECK(t.at(5).threshold(5) == 2);
    CHECK(t.apply(5, 5, 1) == 6);
    CHECK_FALSE(wth_holds(Check::wth1, 5, 5, t));

    SweepOptions loose;
    loose.drop_range_hypothesis = true;
    const auto r = verify(Check::wth1, 5, t, loose);
    CHECK(r.status == Status::counterexample);
    bool found = false;
    for (const auto& w : r.counterexamples) {
        CHECK(revalidate(Check::wth1, 5, w, t, loose));
        if (w.a == 5) {
            found = true;
            CHECK(w.get("c") == 1);
            CHECK(w.get("target") == 6);
        }
    }
    CHECK(found);
    // With the hypothesis restored none of them qualifies.
    for (const auto& w : r.counterexamples) CHECK_FALSE(revalidate(Check::wth1, 5, w, t));

    // n = 10, a = 34: c = 4, [a o c]_9 = 242 and gamma_9 not in range(242).
    CHECK_FALSE(in_range(34, GammaIndex{10}, t));
    CHECK(t.at(10).threshold(34) == 5);
    CHECK(t.compose(9, 34, 4) == 242);
    CHECK_FALSE(in_range(242, GammaIndex{9}, t));
    CHECK_FALSE(wth_holds(Check::wth3, 10, 34, t));
}

TEST_CASE("uniqueness needs the least c") {
    const auto& t = tower14();
    // n = 9, a = 48, b = 192, c = 51 collide in A_9 ...
    CHECK(table_collision(9, 48, 192, 51, t));
    CHECK(t.apply(9, 48, 51) == 243);
    CHECK(act_on_gamma(48, GammaIndex{7}, t).value.idx == 9);
    CHECK(act_on_gamma(192, GammaIndex{7}, t).value.idx == 9);
    CHECK(act_on_gamma(51, GammaIndex{3}, t).value.idx == 7);
    // ... but 51 is not the least witness for gamma_7, and the verifier
    // using the least one finds nothing.
    const auto least = least_range_witness(GammaIndex{7}, t);
    CHECK(least != 51);
    CHECK_FALSE(table_collision(9, 48, 192, least, t));
    CHECK(verify_weak_uh(9, t).status == Status::verified);
    CHECK(verify_uh(9, t).status == Status::verified);
    // 192 >= 2^8 is outside the pair range anyway.
    Witness w;
    w.a = 48;
    w.b = 192;
    CHECK_FALSE(revalidate(Check::weak_uh, 9, w, t));
}

TEST_CASE("UH has no pairs of period 1") {
    const auto& t = tower14();
    for (Rank n = 2; n <= 12; ++n) {
        for (std::uint64_t a = 1; a < (std::uint64_t{1} << (n - 1)); ++a) REQUIRE(t.period(a, n) > 1);
    }
}

TEST_CASE("threshold values agree across three ranks at n = 6") {
    const auto& t = tower14();
    struct Row {
        std::uint64_t a, c, ac, aoc;
    };
    // From the dense oracle.
    const Row rows[] = {{2, 3, 15, 47}, {15, 1, 16, 31}, {16, 15, 31, 31}, {19, 3, 28, 31}, {28, 3, 31, 31}, {31, 0, 0, 31}};
    std::uint64_t qualifying = 0;
    for (std::uint64_t a = 1; a < 32; ++a) qualifying += in_range(a, GammaIndex{6}, t);
    CHECK(qualifying == std::size(rows));
    for (const auto& r : rows) {
        CAPTURE(r.a);
        REQUIRE(in_range(r.a, GammaIndex{6}, t));
        CHECK(t.at(6).threshold(static_cast<Element>(r.a)) == r.c + 1);
        for (Rank m : {5u, 6u, 7u}) CHECK(t.apply(m, r.a, r.c) == r.ac);
        CHECK(t.compose(7, r.a, r.c) == r.aoc);
        CHECK(t.compose(6, r.a, r.c) == r.aoc);
    }
    const auto rep = check_lemma53(6, t);
    CHECK(rep.status == Status::verified);
    CHECK(rep.qualifying == 6);
    CHECK(check_lemma53(1, t).qualifying == 0);
}

TEST_CASE("argument and table errors") {
    const auto small = TableTower::build(6);
    CHECK_THROWS_AS(verify_th(6, small), MissingTableError);
    CHECK_THROWS_AS(verify_twin(4, tower14()), std::invalid_argument);
    CHECK_THROWS_AS(verify(Check::lemma59, 5, tower14()), std::invalid_argument);
    CHECK_THROWS_AS(verify(Check::cor510, 5, small), MissingTableError);
    CHECK_THROWS_AS(verify_th(0, tower14()), std::invalid_argument);
}

TEST_CASE("revalidation rejects fabricated witnesses") {
    const auto& t = tower14();
    for (Check c : all_checks()) {
        Witness w;
        w.a = 3;
        w.b = 5;
        const Rank n = rank_parity(c) == 2 ? 6 : 7;
        CAPTURE(check_name(c));
        CHECK_FALSE(revalidate(c, n, w, t));
    }
    Witness undecided;
    undecided.kind = Witness::Kind::undecided;
    CHECK_FALSE(revalidate(Check::th, 5, undecided, t));
}
