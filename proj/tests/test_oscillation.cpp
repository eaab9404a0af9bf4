#include "doctest.h"

#include <cmath>

#include "bocce/gallery.hpp"
#include "bocce/oscillation.hpp"
#include "support/generators.hpp"

using namespace bocce;

namespace {

FunctionSequence convergent_sequence(std::mt19937_64& g, std::size_t prefix) {
    auto palette = testsupport::random_palette(g, 3, 6, 1.0);
    std::uniform_int_distribution<int> level_pick(1, 3);
    FunctionSequence seq;
    seq.kind = SpaceKind::L2;
    seq.label = "convergent";
    StepFunction limit = testsupport::palette_step(g, level_pick(g),
                                                   SpaceKind::L2, palette);
    for (std::size_t k = 1; k <= prefix; ++k) {
        StepFunction noise = testsupport::palette_step(g, level_pick(g),
                                                       SpaceKind::L2, palette);
        seq.members.push_back(limit +
                              noise * std::pow(0.25, static_cast<double>(k)));
    }
    seq.limit = limit;
    return seq;
}

} // namespace

TEST_SUITE_BEGIN("oscillation");

TEST_CASE("bocce oscillation basics") {
    StepFunction r1 = gallery::gen_rademacher(1);
    CHECK(bocce_osc(r1, DyadicSet::full(0)) == doctest::Approx(1.0));

    StepFunction c = StepFunction::constant(SeqVec({{2, 3.0}}), SpaceKind::L2);
    auto g = testsupport::rng(3);
    for (int it = 0; it < 10; ++it)
        CHECK(bocce_osc(c, testsupport::random_nonempty_set(g, 3)) == 0.0);

    StepFunction ind = StepFunction::real_valued(1, {1.0, 0.0});
    CHECK(bocce_osc(ind, DyadicSet::full(0)) == doctest::Approx(0.5));
    CHECK(bocce_osc(ind, DyadicSet::empty(1)) == 0.0);
}

TEST_CASE("inequalities between oscillations") {
    auto g = testsupport::rng(47);
    for (int it = 0; it < 200; ++it) {
        StepFunction f = testsupport::random_step(g, 3, SpaceKind::L2);
        StepFunction h = testsupport::random_step(g, 3, SpaceKind::L2);
        DyadicSet A = testsupport::random_nonempty_set(g, 3);
        double of = bocce_osc(f, A);
        double oh = bocce_osc(h, A);
        CHECK(std::abs(of - oh) <= bocce_osc(f - h, A) + 1e-12);
        CHECK(bocce_osc(f + h, A) <= of + oh + 1e-12);
        CHECK(A.measure().to_double() * of <= 2.0 * l1_norm(f, A) + 1e-12);
    }
}

TEST_CASE("pettis bocce oscillation") {
    StepFunction c = StepFunction::constant(SeqVec({{1, 2.0}}), SpaceKind::L2);
    CHECK(pettis_bocce_osc(c, DyadicSet::full(0)) == 0.0);

    auto ex52 = gallery::gen_ex52(4);
    for (std::size_t k = 1; k <= 4; ++k) {
        double p = pettis_bocce_osc(ex52.member(k), DyadicSet::full(0));
        double b = bocce_osc(ex52.member(k), DyadicSet::full(0));
        CHECK(p == doctest::Approx(1.0));
        CHECK(b == doctest::Approx(1.0));
    }

    auto ex53 = gallery::gen_ex53(4);
    for (std::size_t k = 1; k <= 4; ++k) {
        double p = pettis_bocce_osc(ex53.member(k), DyadicSet::full(0));
        double b = bocce_osc(ex53.member(k), DyadicSet::full(0));
        CHECK(p <= b + 1e-12);
        CHECK(b == doctest::Approx(1.0));
        CHECK(p == doctest::Approx(testsupport::pettis_bocce_oracle(
                       ex53.member(k), DyadicSet::full(0)))
                       .epsilon(1e-10));
    }
}

TEST_CASE("orthogonal fast path agrees with plain enumeration") {
    auto g = testsupport::rng(53);
    std::uniform_real_distribution<double> amp(0.1, 2.0);
    std::bernoulli_distribution zero(0.25);
    for (int it = 0; it < 150; ++it) {
        // disjoint supports: atom i uses coordinate i+1 (or none)
        int level = 2 + it % 2;
        StepFunction f(level, SpaceKind::L2);
        for (std::uint64_t i = 0; i < f.atom_count(); ++i)
            if (!zero(g))
                f.set_value(i, SeqVec::unit(static_cast<int>(i) + 1) * amp(g));
        DyadicSet A = testsupport::random_nonempty_set(g, level);
        CHECK(pettis_bocce_osc(f, A) ==
              doctest::Approx(testsupport::pettis_bocce_oracle(f, A))
                  .epsilon(1e-10));
    }
}

TEST_CASE("pettis bocce oscillation never exceeds bocce oscillation") {
    auto g = testsupport::rng(59);
    for (int it = 0; it < 100; ++it) {
        auto palette = testsupport::random_palette(g, 3, 5);
        StepFunction f = testsupport::palette_step(g, 3, SpaceKind::L2, palette);
        DyadicSet A = testsupport::random_nonempty_set(g, 3);
        CHECK(pettis_bocce_osc(f, A) <= bocce_osc(f, A) + 1e-12);
    }
}

TEST_CASE("small bocce oscillation and the conditional expectation identity") {
    DyadicPartition halves = DyadicPartition::atoms(1);
    StepFunction r1 = gallery::gen_rademacher(1);
    StepFunction r2 = gallery::gen_rademacher(2);
    CHECK(small_bocce_osc(r1, halves) == 0.0);
    CHECK(small_bocce_osc(r2, halves) == doctest::Approx(1.0));
    CHECK(small_bocce_osc(r2, DyadicPartition::atoms(2)) == 0.0);

    auto g = testsupport::rng(61);
    for (int it = 0; it < 200; ++it) {
        StepFunction f = testsupport::random_step(g, 4, SpaceKind::L2);
        DyadicPartition pi = testsupport::random_partition(g, 1 + it % 4, 3);
        double lhs = small_bocce_osc(f, pi);
        double rhs = l1_norm(f - cond_expectation(f, pi));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("constancy blocks kill the oscillation on every sub-block") {
    auto g = testsupport::rng(67);
    for (int it = 0; it < 30; ++it) {
        auto palette = testsupport::random_palette(g, 3, 5);
        StepFunction f = testsupport::palette_step(g, 3, SpaceKind::L2, palette);
        DyadicPartition pi = constancy_partition(f);
        for (const auto& block : pi.blocks())
            for_each_subset(block, f.level(), 16, [&](const DyadicSet& sub) {
                CHECK(bocce_osc(f, sub) == 0.0);
                return true;
            });
    }
}

TEST_CASE("zero-average selection forces a null function") {
    // brute-force form of the small-averages lemma at level <= 4
    auto g = testsupport::rng(71);
    std::vector<double> eps_grid = default_eps_grid();
    double eps0 = eps_grid.back();
    for (int it = 0; it < 20; ++it) {
        int level = 3;
        std::vector<double> vals(std::size_t{1} << level);
        std::uniform_real_distribution<double> low(0.0, 0.9 * eps0);
        std::uniform_real_distribution<double> high(0.0, 3.0);
        bool small = it % 2 == 0;
        for (auto& v : vals) v = small ? low(g) : high(g);
        StepFunction phi = StepFunction::real_valued(level, vals);

        bool hypothesis = true;
        for (double eps : eps_grid) {
            if (!hypothesis) break;
            for_each_subset(
                DyadicSet::full(0), level, 16, [&](const DyadicSet& B) {
                    bool found = false;
                    for_each_subset(B, level, 16, [&](const DyadicSet& A) {
                        if (average(phi, A)[1] < eps) {
                            found = true;
                            return false;
                        }
                        return true;
                    });
                    if (!found) {
                        hypothesis = false;
                        return false;
                    }
                    return true;
                });
        }
        if (hypothesis) {
            double max_atom = 0.0;
            for (const auto& v : phi.values())
                max_atom = std::max(max_atom, v[1]);
            CHECK(max_atom < 2.0 * eps0);
        }
        if (small) CHECK(hypothesis); // non-vacuous instances
    }
}

TEST_CASE("sequential bocce criterion") {
    auto g = testsupport::rng(73);
    CriterionOptions opt;
    for (int it = 0; it < 5; ++it) {
        FunctionSequence seq = convergent_sequence(g, 8);
        auto v = sequential_bocce_check(seq, opt);
        CHECK(v.status == CriterionStatus::SatisfiedAtResolution);
    }

    // constant sequence
    FunctionSequence cst;
    cst.kind = SpaceKind::L2;
    cst.members.assign(6, StepFunction::constant(SeqVec({{1, 1.0}, {2, -0.5}}),
                                                 SpaceKind::L2));
    cst.limit = cst.members.front();
    CHECK(sequential_bocce_check(cst, opt).status ==
          CriterionStatus::SatisfiedAtResolution);

    // Rademacher-type members oscillate on every searched set
    CriterionOptions exhaustive;
    exhaustive.search_level = 4;
    exhaustive.max_subset_atoms = 16;
    exhaustive.test_sets = {DyadicSet::full(0)};
    exhaustive.eps_grid = {0.5};
    auto ex52 = gallery::gen_ex52(8);
    auto v52 = sequential_bocce_check(ex52, exhaustive);
    CHECK(v52.status == CriterionStatus::Falsified);
    for (const auto& w : v52.witnesses) {
        CHECK_FALSE(w.found);
        CHECK(w.skipped == 0);
        CHECK(w.best_value >= 0.5);
        CHECK(w.searched == 65535);
    }
}

TEST_CASE("sequential pettis bocce criterion") {
    CriterionOptions opt;
    opt.search_level = 2;
    opt.test_sets = default_test_sets(1);
    auto ex53 = gallery::gen_ex53(14);
    auto v = sequential_pettis_bocce_check(ex53, opt);
    CHECK(v.status == CriterionStatus::SatisfiedAtResolution);

    CriterionOptions exhaustive;
    exhaustive.search_level = 4;
    exhaustive.test_sets = {DyadicSet::full(0)};
    exhaustive.eps_grid = {0.5};
    auto ex52 = gallery::gen_ex52(8);
    CHECK(sequential_pettis_bocce_check(ex52, exhaustive).status ==
          CriterionStatus::Falsified);

    FunctionSequence zero;
    zero.kind = SpaceKind::L2;
    zero.members.assign(6, StepFunction::zero(SpaceKind::L2));
    zero.limit = StepFunction::zero(SpaceKind::L2);
    CHECK(sequential_pettis_bocce_check(zero, CriterionOptions{}).status ==
          CriterionStatus::SatisfiedAtResolution);
}

TEST_CASE("registered subsequences participate in the check") {
    auto g = testsupport::rng(79);
    FunctionSequence seq = convergent_sequence(g, 8);
    CriterionOptions opt;
    opt.subsequences = {{2, 4, 6, 8}};
    auto v = sequential_bocce_check(seq, opt);
    CHECK(v.status == CriterionStatus::SatisfiedAtResolution);
    bool saw_registered = false;
    for (const auto& w : v.witnesses)
        if (w.subsequence == 1) saw_registered = true;
    CHECK(saw_registered);
    CriterionOptions bad;
    bad.subsequences = {{0}};
    CHECK_THROWS_AS(sequential_bocce_check(seq, bad), Error);
}

TEST_CASE("pettis criterion verdicts are translation invariant") {
    auto g = testsupport::rng(83);
    CriterionOptions opt;
    opt.search_level = 3;
    opt.test_sets = default_test_sets(2);
    for (int it = 0; it < 8; ++it) {
        auto palette = testsupport::random_palette(g, 3, 5);
        FunctionSequence seq;
        seq.kind = SpaceKind::L2;
        seq.limit = StepFunction::zero(SpaceKind::L2);
        for (int k = 0; k < 6; ++k)
            seq.members.push_back(
                testsupport::palette_step(g, 3, SpaceKind::L2, palette));
        StepFunction shift =
            testsupport::palette_step(g, 2, SpaceKind::L2, palette);
        FunctionSequence shifted = seq;
        for (auto& m : shifted.members) m = m + shift;
        auto a = sequential_pettis_bocce_check(seq, opt);
        auto b = sequential_pettis_bocce_check(shifted, opt);
        CHECK(a.status == b.status);
        REQUIRE(a.witnesses.size() == b.witnesses.size());
        for (std::size_t i = 0; i < a.witnesses.size(); ++i)
            CHECK(a.witnesses[i].found == b.witnesses[i].found);
    }
    // the mechanism: on atoms where the shift is constant the recentred
    // restriction is unchanged
    for (int it = 0; it < 20; ++it) {
        StepFunction f = testsupport::random_step(g, 4, SpaceKind::L2);
        StepFunction shift = testsupport::random_step(g, 3, SpaceKind::L2);
        std::uniform_int_distribution<std::uint64_t> atom(0, 7);
        DyadicSet a = DyadicSet::atom(3, atom(g));
        CHECK(pettis_bocce_osc(f + shift, a) ==
              doctest::Approx(pettis_bocce_osc(f, a)).epsilon(1e-10));
    }
}

TEST_CASE("set bocce criterion") {
    auto g = testsupport::rng(89);
    CriterionOptions opt;

    // singletons and finite constant families are covered
    StepFunction f = testsupport::palette_step(
        g, 3, SpaceKind::L2, testsupport::random_palette(g, 3, 5));
    CHECK(set_bocce_check({f}, opt).status ==
          CriterionStatus::SatisfiedAtResolution);
    std::vector<StepFunction> constants;
    for (int i = 1; i <= 3; ++i)
        constants.push_back(
            StepFunction::constant(SeqVec::unit(i), SpaceKind::L2));
    CHECK(set_bocce_check(constants, opt).status ==
          CriterionStatus::SatisfiedAtResolution);

    // Rademacher-type family below its own resolution
    std::vector<StepFunction> rad;
    for (int k = 1; k <= 4; ++k) {
        StepFunction r = gallery::gen_rademacher(k);
        StepFunction vr(r.level(), SpaceKind::L2);
        for (std::uint64_t i = 0; i < vr.atom_count(); ++i)
            vr.set_value(i, SeqVec::unit(1) * r.value(i)[1]);
        rad.push_back(std::move(vr));
    }
    CriterionOptions shallow = opt;
    shallow.search_level = 3;
    shallow.eps_grid = {0.5};
    shallow.test_sets = {DyadicSet::full(0)};
    CHECK(set_bocce_check(rad, shallow).status == CriterionStatus::Falsified);
    CriterionOptions deep = shallow;
    deep.search_level = 4;
    CHECK(set_bocce_check(rad, deep).status ==
          CriterionStatus::SatisfiedAtResolution);
}

TEST_CASE("oscillation conditions B0, B1, B2") {
    auto g = testsupport::rng(97);
    CriterionOptions opt;

    FunctionSequence conv = convergent_sequence(g, 8);
    CHECK(b2_check(conv, opt).status == CriterionStatus::SatisfiedAtResolution);
    CHECK(b1_check(conv, opt).status == CriterionStatus::SatisfiedAtResolution);
    CHECK(b0_check(conv, opt).status == CriterionStatus::SatisfiedAtResolution);

    CriterionOptions exhaustive;
    exhaustive.search_level = 4;
    exhaustive.test_sets = {DyadicSet::full(0)};
    exhaustive.eps_grid = {0.5};
    exhaustive.max_subset_atoms = 16;
    auto ex52 = gallery::gen_ex52(8);
    CHECK(b0_check(ex52, exhaustive).status == CriterionStatus::Falsified);

    FunctionSequence cst;
    cst.kind = SpaceKind::L2;
    cst.members.assign(6, StepFunction::constant(SeqVec::unit(2), SpaceKind::L2));
    cst.limit = cst.members.front();
    CHECK(b0_check(cst, opt).status == CriterionStatus::SatisfiedAtResolution);
    CHECK(b1_check(cst, opt).status == CriterionStatus::SatisfiedAtResolution);
    CHECK(b2_check(cst, opt).status == CriterionStatus::SatisfiedAtResolution);

    // the spike needs the adaptive exceptional block
    auto spike = gallery::gen_spike(8);
    auto vb1 = b1_check(spike, opt);
    CHECK(vb1.status == CriterionStatus::SatisfiedAtResolution);
}

TEST_CASE("small bocce set check") {
    auto g = testsupport::rng(101);
    CriterionOptions opt;
    std::vector<StepFunction> constants = {
        StepFunction::constant(SeqVec::unit(1), SpaceKind::L2),
        StepFunction::constant(SeqVec::unit(2) * 2.0, SpaceKind::L2)};
    CHECK(small_bocce_set_check(constants, opt).status ==
          CriterionStatus::SatisfiedAtResolution);

    std::vector<StepFunction> rad;
    for (int k = 1; k <= 4; ++k) {
        StepFunction r = gallery::gen_rademacher(k);
        StepFunction vr(r.level(), SpaceKind::L2);
        for (std::uint64_t i = 0; i < vr.atom_count(); ++i)
            vr.set_value(i, SeqVec::unit(1) * r.value(i)[1]);
        rad.push_back(std::move(vr));
    }
    CriterionOptions shallow;
    shallow.search_level = 3;
    shallow.eps_grid = {0.5};
    CHECK(small_bocce_set_check(rad, shallow).status ==
          CriterionStatus::Falsified);
}

TEST_SUITE_END();
