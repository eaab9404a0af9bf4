#include "doctest.h"

#include "bocce/gallery.hpp"
#include "bocce/serialization.hpp"
#include "support/generators.hpp"

using namespace bocce;

TEST_SUITE_BEGIN("serialization");

TEST_CASE("round12 formatting") {
    CHECK(round12(1.0) == 1.0);
    CHECK(format12(0.125) == "0.125");
    CHECK(round12(0.1234567890123456789) == 0.123456789012);
    CHECK(format12(1e-30) == "1e-30");
}

TEST_CASE("step functions round-trip through JSON") {
    auto g = testsupport::rng(151);
    for (int it = 0; it < 50; ++it) {
        StepFunction f = testsupport::random_step(g, 1 + it % 4,
                                                  SpaceKind::L2, 6, 3, 1.0);
        StepFunction back = step_function_from_json(to_json(f));
        CHECK(back.level() == f.level());
        CHECK(back.kind() == f.kind());
        // values were rounded to 12 significant digits on the way out
        for (std::uint64_t i = 0; i < f.atom_count(); ++i)
            CHECK(norm(back.value(i) - f.value(i), SpaceKind::LInf) <= 1e-11);
    }
    CHECK_THROWS_AS(step_function_from_json("{\"level\":2}"), ParseError);
    CHECK_THROWS_AS(step_function_from_json("{bad json"), ParseError);
    CHECK_THROWS_AS(
        step_function_from_json(
            "{\"level\":1,\"kind\":\"l2\",\"values\":[{}]}"),
        ParseError);
    CHECK_THROWS_AS(
        step_function_from_json(
            "{\"level\":25,\"kind\":\"l2\",\"values\":[]}"),
        ResolutionOverflow);
}

TEST_CASE("sequences parse from arrays and objects") {
    auto seq = gallery::gen_ex53(3);
    FunctionSequence back = sequence_from_json(to_json(seq));
    CHECK(back.size() == 3);
    CHECK(back.kind == SpaceKind::L2);
    CHECK(back.label == "ex53");
    CHECK(back.limit.has_value());

    std::string arr = "[" + to_json(seq.member(1)) + "," +
                      to_json(seq.member(2)) + "]";
    FunctionSequence from_arr = sequence_from_json(arr);
    CHECK(from_arr.size() == 2);
    CHECK(from_arr.limit.has_value());
    CHECK(l1_norm(*from_arr.limit) == 0.0);

    CHECK_THROWS_AS(sequence_from_json("[]"), ParseError);
    CHECK_THROWS_AS(sequence_from_json("{\"nope\":1}"), ParseError);
}

TEST_CASE("seqvec json uses sparse coordinate keys") {
    SeqVec v({{3, 0.5}, {1, -2.0}});
    CHECK(to_json(v) == "{\"1\":-2.0,\"3\":0.5}");
    CHECK(seqvec_from_json(to_json(v)) == v);
}

TEST_CASE("pettis result and verdict shapes") {
    auto ex53 = gallery::gen_ex53(3);
    std::string exact = to_json(pettis_norm_exact(ex53.member(2)));
    CHECK(exact.find("\"method\":\"exact\"") != std::string::npos);
    CHECK(exact.find("\"witness\"") != std::string::npos);
    std::string bounds = to_json(pettis_norm_bounds(ex53.member(2), {}));
    CHECK(bounds.find("\"method\":\"bounds\"") != std::string::npos);
    CHECK(bounds.find("\"upper\"") != std::string::npos);

    auto verdict = sequential_bocce_check(ex53, CriterionOptions{});
    std::string vj = to_json(verdict);
    CHECK(vj.find("\"status\"") != std::string::npos);
    CHECK(vj.find("\"witnesses\"") != std::string::npos);
}

TEST_CASE("modulus curves serialize to csv") {
    auto spike = gallery::gen_spike(4);
    auto curve = ui_modulus(spike, {1.0, 2.0, 4.0});
    std::string csv = to_csv(curve);
    CHECK(csv.rfind("threshold,value\n", 0) == 0);
    CHECK(csv.find("\n1,1\n") != std::string::npos);
}

TEST_CASE("report serialization is deterministic and csv is namespaced") {
    auto seq = gallery::make_sequence("ex53", 6);
    auto cfg = gallery::report_config("ex53", 6);
    auto r1 = lattice_report(seq, cfg);
    auto r2 = lattice_report(seq, cfg);
    CHECK(to_json(r1) == to_json(r2));

    std::string csv = report_to_csv(r1);
    CHECK(csv.rfind("k,metric,value\n", 0) == 0);
    CHECK(csv.find(",trend.strong,") != std::string::npos);
    CHECK(csv.find(",trend.pettis,") != std::string::npos);
    CHECK(csv.find("0,modulus.ui.c=") != std::string::npos);

    std::string j = to_json(r1);
    for (const char* key :
         {"\"flags\"", "\"trends\"", "\"criteria\"", "\"moduli\"",
          "\"tightness\"", "\"biting\"", "\"theorem45\"", "\"theorem48\""})
        CHECK(j.find(key) != std::string::npos);
}

TEST_SUITE_END();
