#include "bocce/gallery.hpp"

#include <algorithm>
#include <cmath>

namespace bocce {
namespace gallery {

namespace {

FunctionSequence with_zero_limit(SpaceKind kind, std::string label) {
    FunctionSequence seq;
    seq.kind = kind;
    seq.label = std::move(label);
    seq.limit = StepFunction::zero(kind);
    return seq;
}

// Sign of r_i on the level-L atom with index `atom` (L >= i).
double rademacher_sign(int i, int level, std::uint64_t atom) {
    return ((atom >> (level - i)) & 1) ? -1.0 : 1.0;
}

} // namespace

FunctionSequence gen_ex32(std::size_t prefix) {
    FunctionSequence seq = with_zero_limit(SpaceKind::L2, "ex32");
    for (std::size_t k = 1; k <= prefix; ++k)
        seq.members.push_back(StepFunction::constant(
            SeqVec::unit(static_cast<int>(k)), SpaceKind::L2));
    return seq;
}

FunctionSequence gen_ex34(std::size_t prefix) {
    FunctionSequence seq = with_zero_limit(SpaceKind::L2, "ex34");
    for (std::size_t k = 1; k <= prefix; ++k) {
        StepFunction f(static_cast<int>(k), SpaceKind::L2);
        f.set_value(0, SeqVec::unit(static_cast<int>(k)) *
                           std::ldexp(1.0, static_cast<int>(k)));
        seq.members.push_back(std::move(f));
    }
    return seq;
}

StepFunction gen_rademacher(int k) {
    if (k < 1) throw Error("gen_rademacher: index is 1-based");
    std::vector<double> vals(std::size_t{1} << k);
    for (std::uint64_t j = 0; j < vals.size(); ++j)
        vals[j] = rademacher_sign(k, k, j);
    return StepFunction::real_valued(k, std::move(vals));
}

FunctionSequence gen_rademacher_seq(std::size_t prefix) {
    FunctionSequence seq = with_zero_limit(SpaceKind::L1, "rademacher");
    for (std::size_t k = 1; k <= prefix; ++k)
        seq.members.push_back(gen_rademacher(static_cast<int>(k)));
    return seq;
}

FunctionSequence gen_ex52(std::size_t prefix) {
    FunctionSequence seq = with_zero_limit(SpaceKind::L2, "ex52");
    for (std::size_t k = 1; k <= prefix; ++k) {
        int ki = static_cast<int>(k);
        StepFunction f(ki, SpaceKind::L2);
        for (std::uint64_t j = 0; j < f.atom_count(); ++j)
            f.set_value(j, SeqVec::unit(ki) * rademacher_sign(ki, ki, j));
        seq.members.push_back(std::move(f));
    }
    return seq;
}

FunctionSequence gen_ex53(std::size_t prefix) {
    FunctionSequence seq = with_zero_limit(SpaceKind::L2, "ex53");
    for (std::size_t k = 1; k <= prefix; ++k) {
        int ki = static_cast<int>(k);
        StepFunction f(ki, SpaceKind::L2);
        for (std::uint64_t j = 0; j < f.atom_count(); ++j)
            f.set_value(j, SeqVec::unit(static_cast<int>(
                               (std::uint64_t{1} << ki) + j + 1)));
        seq.members.push_back(std::move(f));
    }
    return seq;
}

FunctionSequence gen_ex53_scaled(std::size_t prefix) {
    FunctionSequence seq = gen_ex53(prefix);
    seq.label = "ex53-scaled";
    for (std::size_t k = 1; k <= prefix; ++k)
        seq.members[k - 1] =
            seq.members[k - 1] *
            std::pow(2.0, static_cast<double>(k) / 4.0);
    return seq;
}

FunctionSequence gen_ex55(std::size_t prefix) {
    FunctionSequence seq = with_zero_limit(SpaceKind::L1, "ex55");
    for (std::size_t k = 1; k <= prefix; ++k) {
        int ki = static_cast<int>(k);
        StepFunction f(ki, SpaceKind::L1);
        for (std::uint64_t j = 0; j < f.atom_count(); ++j) {
            std::vector<std::pair<int, double>> entries;
            for (int i = 1; i <= ki; ++i)
                entries.emplace_back(
                    i, rademacher_sign(i, ki, j) / static_cast<double>(ki));
            f.set_value(j, SeqVec(std::move(entries)));
        }
        seq.members.push_back(std::move(f));
    }
    return seq;
}

FunctionSequence gen_spike(std::size_t prefix) {
    FunctionSequence seq = with_zero_limit(SpaceKind::L1, "spike");
    for (std::size_t n = 1; n <= prefix; ++n) {
        StepFunction f(static_cast<int>(n), SpaceKind::L1);
        f.set_value(0, SeqVec({{1, std::ldexp(1.0, static_cast<int>(n))}}));
        seq.members.push_back(std::move(f));
    }
    return seq;
}

TestG ex34_shell_test(std::size_t prefix) {
    int L = static_cast<int>(prefix) + 1;
    StepFunction b(L, SpaceKind::L2); // dual of l2
    for (int j = 1; j <= static_cast<int>(prefix); ++j) {
        // shell [2^-(j+1), 2^-j) = atoms [2^(L-j-1), 2^(L-j))
        std::uint64_t from = std::uint64_t{1} << (L - j - 1);
        std::uint64_t to = std::uint64_t{1} << (L - j);
        for (std::uint64_t a = from; a < to; ++a)
            b.set_value(a, SeqVec::unit(j));
    }
    TestG g = TestG::from_dual(b, "shell");
    return g;
}

StepFunction ex55_dual_witness(std::size_t prefix) {
    int L = static_cast<int>(prefix);
    StepFunction b(L, SpaceKind::LInf); // dual of l1
    for (std::uint64_t j = 0; j < b.atom_count(); ++j) {
        std::vector<std::pair<int, double>> entries;
        for (int i = 1; i <= L; ++i)
            if (rademacher_sign(i, L, j) > 0.0) entries.emplace_back(i, 1.0);
        b.set_value(j, SeqVec(std::move(entries)));
    }
    return b;
}

const std::vector<std::string>& ids() {
    static const std::vector<std::string> kIds = {
        "ex32", "ex34", "ex52", "ex53", "ex53-scaled",
        "ex55", "spike", "rademacher"};
    return kIds;
}

bool has_id(const std::string& id) {
    return std::find(ids().begin(), ids().end(), id) != ids().end();
}

FunctionSequence make_sequence(const std::string& id, std::size_t prefix) {
    if (id == "ex32") return gen_ex32(prefix);
    if (id == "ex34") return gen_ex34(prefix);
    if (id == "ex52") return gen_ex52(prefix);
    if (id == "ex53") return gen_ex53(prefix);
    if (id == "ex53-scaled") return gen_ex53_scaled(prefix);
    if (id == "ex55") return gen_ex55(prefix);
    if (id == "spike") return gen_spike(prefix);
    if (id == "rademacher") return gen_rademacher_seq(prefix);
    throw ParseError("unknown gallery id: " + id);
}

ReportConfig report_config(const std::string& id, std::size_t prefix) {
    ReportConfig cfg;
    cfg.prefix = prefix;
    if (id == "ex34") {
        TestG shell = ex34_shell_test(prefix);
        cfg.extra_duals.push_back(shell.linear_terms().front());
        cfg.extra_tests.push_back(std::move(shell));
        // separates the constant shell pairing (1/2) from the vanishing
        // scalar trends
        cfg.tol = 0.25;
    } else if (id == "ex55") {
        StepFunction b = ex55_dual_witness(prefix);
        cfg.extra_tests.push_back(TestG::from_dual(b, "b55"));
        cfg.extra_duals.push_back(std::move(b));
        // sits between the Pettis decay (~1/sqrt(k)) and the pairing 1/2
        cfg.tol = 0.4;
    }
    return cfg;
}

} // namespace gallery
} // namespace bocce
