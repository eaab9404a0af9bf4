#include "doctest.h"

#include <cmath>

#include "bocce/seq_space.hpp"
#include "support/generators.hpp"

using namespace bocce;

TEST_SUITE_BEGIN("seq_space");

TEST_CASE("norms on unit and ladder vectors") {
    CHECK(norm(SeqVec::unit(5), SpaceKind::L2) == 1.0);
    for (int k = 1; k <= 10; ++k) {
        std::vector<std::pair<int, double>> ones;
        for (int i = 1; i <= k; ++i) ones.emplace_back(i, 1.0);
        CHECK(norm(SeqVec(ones), SpaceKind::L2) ==
              doctest::Approx(std::sqrt(k)).epsilon(1e-13));
        CHECK(norm(SeqVec::unit(k) * std::ldexp(1.0, k), SpaceKind::L2) ==
              std::ldexp(1.0, k));
    }
    CHECK(norm(SeqVec(), SpaceKind::L1) == 0.0);
}

TEST_CASE("pairing and dual norms") {
    for (int k = 1; k <= 6; ++k) {
        Functional ek = Functional::coordinate(k, SpaceKind::L2);
        CHECK(pair(ek, SeqVec::unit(k), SpaceKind::L2) == 1.0);
    }
    Functional y{SeqVec({{1, 0.5}, {4, -2.0}}), SpaceKind::L2};
    CHECK(pair(y, SeqVec::unit(4) * 16.0) == -32.0);
    Functional ones{SeqVec({{1, 1.0}, {2, 1.0}}), SpaceKind::L1};
    CHECK(dual_norm(ones) == 1.0); // linf norm of the coefficients
    CHECK(dual(SpaceKind::L1) == SpaceKind::LInf);
    CHECK(dual(dual(SpaceKind::L2)) == SpaceKind::L2);
    CHECK(dual(dual(SpaceKind::L1)) == SpaceKind::L1);
    CHECK_THROWS_AS(pair(ones, SeqVec::unit(1), SpaceKind::L2), KindMismatch);
}

TEST_CASE("Hoelder inequality on random sparse vectors") {
    auto g = testsupport::rng(23);
    for (SpaceKind kind : {SpaceKind::L1, SpaceKind::L2, SpaceKind::LInf}) {
        for (int it = 0; it < 300; ++it) {
            SeqVec v = testsupport::random_seqvec(g, 8, 5);
            Functional xs{testsupport::random_seqvec(g, 8, 5), kind};
            CHECK(std::abs(pair(xs, v)) <=
                  dual_norm(xs) * norm(v, kind) + 1e-12);
        }
    }
}

TEST_CASE("l2 norm attainment") {
    auto g = testsupport::rng(29);
    for (int it = 0; it < 100; ++it) {
        SeqVec v = testsupport::random_seqvec(g, 8, 5);
        double n = norm(v, SpaceKind::L2);
        if (n == 0.0) continue;
        Functional xs{v * (1.0 / n), SpaceKind::L2};
        CHECK(pair(xs, v) == doctest::Approx(n).epsilon(1e-12));
    }
}

TEST_CASE("triangle inequality") {
    auto g = testsupport::rng(31);
    for (SpaceKind kind : {SpaceKind::L1, SpaceKind::L2, SpaceKind::LInf}) {
        for (int it = 0; it < 200; ++it) {
            SeqVec a = testsupport::random_seqvec(g, 8, 5);
            SeqVec b = testsupport::random_seqvec(g, 8, 5);
            double lhs = norm(a + b, kind);
            double rhs = norm(a, kind) + norm(b, kind);
            CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-15);
        }
    }
}

TEST_CASE("stored entries stay nonzero") {
    SeqVec a({{1, 1.0}, {2, -3.0}});
    SeqVec b({{1, -1.0}, {3, 2.0}});
    SeqVec c = a + b;
    for (const auto& [k, v] : c.entries()) CHECK(v != 0.0);
    CHECK(c[1] == 0.0);
    CHECK(c.support_size() == 2);
    CHECK((a - a).is_zero());
    SeqVec d({{4, 0.0}, {2, 1.0}});
    CHECK(d.support_size() == 1);
    CHECK(d.max_index() == 2);
    CHECK(d.support_within(2));
    CHECK_FALSE(SeqVec::unit(3).support_within(2));
}

TEST_CASE("kind strings round-trip") {
    for (SpaceKind k : {SpaceKind::L1, SpaceKind::L2, SpaceKind::LInf})
        CHECK(space_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(space_kind_from_string("l3"), ParseError);
}

TEST_SUITE_END();
