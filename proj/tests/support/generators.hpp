#pragma once

// Test-only helpers: seeded random instances and brute-force oracles kept
// independent of the library's computation paths.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "bocce/functionals.hpp"
#include "bocce/oscillation.hpp"
#include "bocce/step_function.hpp"

namespace testsupport {

using bocce::DyadicPartition;
using bocce::DyadicSet;
using bocce::FunctionSequence;
using bocce::SeqVec;
using bocce::SpaceKind;
using bocce::StepFunction;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline SeqVec random_seqvec(std::mt19937_64& g, int max_coord, int max_support,
                            double amplitude = 2.0) {
    std::uniform_int_distribution<int> support(0, max_support);
    std::uniform_int_distribution<int> coord(1, max_coord);
    std::uniform_real_distribution<double> value(-amplitude, amplitude);
    std::vector<std::pair<int, double>> entries;
    int n = support(g);
    for (int i = 0; i < n; ++i) entries.emplace_back(coord(g), value(g));
    return SeqVec(std::move(entries));
}

inline StepFunction random_step(std::mt19937_64& g, int level, SpaceKind kind,
                                int max_coord = 6, int max_support = 3,
                                double amplitude = 2.0) {
    StepFunction f(level, kind);
    for (std::uint64_t i = 0; i < f.atom_count(); ++i)
        f.set_value(i, random_seqvec(g, max_coord, max_support, amplitude));
    return f;
}

inline std::vector<SeqVec> random_palette(std::mt19937_64& g, int size,
                                          int max_coord = 6,
                                          double amplitude = 2.0) {
    std::vector<SeqVec> out;
    for (int i = 0; i < size; ++i)
        out.push_back(random_seqvec(g, max_coord, 3, amplitude));
    return out;
}

inline StepFunction palette_step(std::mt19937_64& g, int level, SpaceKind kind,
                                 const std::vector<SeqVec>& palette) {
    std::uniform_int_distribution<std::size_t> pick(0, palette.size() - 1);
    StepFunction f(level, kind);
    for (std::uint64_t i = 0; i < f.atom_count(); ++i)
        f.set_value(i, palette[pick(g)]);
    return f;
}

inline DyadicSet random_set(std::mt19937_64& g, int level) {
    std::bernoulli_distribution bit(0.5);
    DyadicSet s(level);
    for (std::uint64_t i = 0; i < s.atom_count(); ++i)
        if (bit(g)) s.set_atom(i, true);
    return s;
}

inline DyadicSet random_nonempty_set(std::mt19937_64& g, int level) {
    DyadicSet s = random_set(g, level);
    if (s.empty_set()) {
        std::uniform_int_distribution<std::uint64_t> pick(0, s.atom_count() - 1);
        s.set_atom(pick(g), true);
    }
    return s;
}

inline DyadicPartition random_partition(std::mt19937_64& g, int level,
                                        int parts) {
    std::uniform_int_distribution<int> pick(0, parts - 1);
    std::vector<DyadicSet> blocks(parts, DyadicSet(level));
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << level); ++i)
        blocks[static_cast<std::size_t>(pick(g))].set_atom(i, true);
    std::vector<DyadicSet> nonempty;
    for (auto& b : blocks)
        if (!b.empty_set()) nonempty.push_back(std::move(b));
    return DyadicPartition::of_blocks(std::move(nonempty));
}

/// Palette-valued sequence with a random or convergent tail; kinds rotate.
inline FunctionSequence random_sequence(std::mt19937_64& g, std::size_t prefix,
                                        bool strongly_convergent) {
    static const SpaceKind kinds[] = {SpaceKind::L1, SpaceKind::L2,
                                      SpaceKind::LInf};
    std::uniform_int_distribution<int> kind_pick(0, 2);
    std::uniform_int_distribution<int> level_pick(1, 3);
    SpaceKind kind = kinds[kind_pick(g)];
    auto palette = random_palette(g, 3);
    FunctionSequence seq;
    seq.kind = kind;
    seq.label = strongly_convergent ? "random-convergent" : "random";
    StepFunction limit = palette_step(g, level_pick(g), kind, palette);
    if (strongly_convergent) {
        for (std::size_t k = 1; k <= prefix; ++k) {
            StepFunction noise = palette_step(g, level_pick(g), kind, palette);
            double decay = std::pow(0.25, static_cast<double>(k));
            seq.members.push_back(limit + noise * decay);
        }
        seq.limit = limit;
    } else {
        for (std::size_t k = 1; k <= prefix; ++k)
            seq.members.push_back(palette_step(g, level_pick(g), kind, palette));
        std::bernoulli_distribution zero_limit(0.5);
        seq.limit = zero_limit(g) ? StepFunction::zero(kind) : limit;
    }
    return seq;
}

/// Brute-force Pettis norm oracle: plain sign enumeration over all distinct
/// nonzero-value blocks, no component decomposition, no dual-side shortcut.
inline double pettis_oracle(const StepFunction& f) {
    auto blocks = bocce::distinct_value_blocks(f, false);
    std::size_t m = blocks.size();
    if (m == 0) return 0.0;
    if (m > 20) throw std::runtime_error("pettis_oracle: too many blocks");
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m - 1)); ++mask) {
        SeqVec u = blocks[0].value * blocks[0].set.measure().to_double();
        for (std::size_t j = 1; j < m; ++j) {
            double s = (mask & (std::uint64_t{1} << (j - 1))) ? -1.0 : 1.0;
            u = u + blocks[j].value * (s * blocks[j].set.measure().to_double());
        }
        best = std::max(best, bocce::norm(u, f.kind()));
    }
    return best;
}

/// Brute-force Pettis Bocce oscillation via the oracle above.
inline double pettis_bocce_oracle(const StepFunction& f, const DyadicSet& A) {
    auto mu = A.measure();
    if (mu.num() == 0) return 0.0;
    int L = std::max(f.level(), A.level());
    StepFunction g = f.refined(L);
    DyadicSet S = A.refined(L);
    SeqVec m = bocce::average(g, S);
    StepFunction h(L, g.kind());
    for (std::uint64_t i = 0; i < g.atom_count(); ++i)
        if (S.contains(i)) h.set_value(i, g.value(i) - m);
    return pettis_oracle(h) / mu.to_double();
}

/// Mean of |sum of k independent signs|, by direct binomial enumeration.
inline double mean_abs_rademacher_sum(int k) {
    double total = 0.0;
    double binom = 1.0; // C(k, 0)
    for (int j = 0; j <= k; ++j) {
        total += binom * std::abs(static_cast<double>(k - 2 * j));
        binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
    }
    return std::ldexp(total, -k);
}

} // namespace testsupport
