#include "bocce/oscillation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace bocce {

double bocce_osc(const StepFunction& f, const DyadicSet& A) {
    DyadicRational mu = A.measure();
    if (mu.num() == 0) return 0.0; // 0/0 convention
    int L = std::max(f.level(), A.level());
    StepFunction g = f.refined(L, 30);
    DyadicSet S = A.refined(L, 30);
    SeqVec m = average(g, S);
    double s = 0.0;
    for (std::uint64_t i = 0; i < g.atom_count(); ++i)
        if (S.contains(i)) s += norm(g.value(i) - m, g.kind());
    return s * DyadicRational(1, L).to_double() / mu.to_double();
}

namespace {

// True if the nonzero atom values have pairwise disjoint coordinate
// supports (then they are mutually orthogonal in l2).
bool disjoint_supports(const StepFunction& g,
                       const std::vector<std::uint64_t>& atoms) {
    std::vector<int> coords;
    for (auto i : atoms)
        for (const auto& [c, v] : g.value(i).entries()) coords.push_back(c);
    std::sort(coords.begin(), coords.end());
    return std::adjacent_find(coords.begin(), coords.end()) == coords.end();
}

// Exact max over per-atom sign patterns of || sum_a s_a w (v_a - mean) ||_2
// when the v_a have disjoint supports. With sigma = sum of signs and
// c = sigma / t the squared norm is w^2 * sum_a (s_a - c)^2 ||v_a||^2,
// so for each sign-count it suffices to pick the extremal subset of
// squared norms, which sorting plus prefix sums yields in O(t log t).
double orthogonal_recentred_max(const StepFunction& g,
                                const std::vector<std::uint64_t>& atoms) {
    std::size_t t = atoms.size();
    std::vector<double> n2(t);
    double total = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
        double n = norm(g.value(atoms[i]), g.kind());
        n2[i] = n * n;
        total += n2[i];
    }
    std::sort(n2.begin(), n2.end());
    std::vector<double> prefix(t + 1, 0.0);
    for (std::size_t i = 0; i < t; ++i) prefix[i + 1] = prefix[i] + n2[i];
    double best = 0.0;
    for (std::size_t p = 0; p <= t; ++p) {
        double c = (2.0 * static_cast<double>(p) - static_cast<double>(t)) /
                   static_cast<double>(t);
        double sp;
        if (c > 0.0)
            sp = prefix[p]; // smallest p squared norms get +1
        else if (c < 0.0)
            sp = total - prefix[t - p]; // largest p squared norms get +1
        else
            sp = 0.0;
        double inner = (1.0 + c * c) * total - 2.0 * c * (2.0 * sp - total);
        best = std::max(best, inner);
    }
    return std::sqrt(best);
}

} // namespace

double pettis_bocce_osc(const StepFunction& f, const DyadicSet& A, int cap) {
    DyadicRational mu = A.measure();
    if (mu.num() == 0) return 0.0;
    int L = std::max(f.level(), A.level());
    StepFunction g = f.refined(L, 30);
    DyadicSet S = A.refined(L, 30);
    auto atoms = S.atom_indices();

    if (g.kind() == SpaceKind::L2 && disjoint_supports(g, atoms)) {
        double t = static_cast<double>(atoms.size());
        return orthogonal_recentred_max(g, atoms) / t;
    }

    SeqVec sum;
    for (auto i : atoms) sum = sum + g.value(i);
    SeqVec mean = sum * (1.0 / static_cast<double>(atoms.size()));
    StepFunction h(L, g.kind());
    for (auto i : atoms) h.set_value(i, g.value(i) - mean);
    return pettis_norm_exact(h, cap).value / mu.to_double();
}

std::string to_string(CriterionStatus s) {
    switch (s) {
    case CriterionStatus::SatisfiedAtResolution: return "satisfied_at_resolution";
    case CriterionStatus::Falsified: return "falsified";
    case CriterionStatus::Inconclusive: return "inconclusive";
    }
    throw Error("to_string: bad status");
}

std::vector<double> default_eps_grid() {
    return {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
}

std::vector<DyadicSet> default_test_sets(int max_level) {
    std::vector<DyadicSet> out;
    out.push_back(DyadicSet::full(0));
    for (int j = 1; j <= max_level; ++j)
        for (std::uint64_t i = 1; i <= (std::uint64_t{1} << j); ++i)
            out.push_back(DyadicSet::interval(j, i));
    return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::size_t> full_index_list(std::size_t n) {
    std::vector<std::size_t> out(n);
    std::iota(out.begin(), out.end(), 1);
    return out;
}

// Tail past the burn-in: the second half (rounding up) of the index list.
std::vector<std::size_t> tail_of(const std::vector<std::size_t>& idx) {
    std::size_t tail_len = (idx.size() + 1) / 2;
    return {idx.end() - static_cast<std::ptrdiff_t>(tail_len), idx.end()};
}

// First index N such that the whole window [N, K] must stay below eps;
// mirrors the burn-in rule above.
std::size_t start_index_cap(std::size_t n) { return n - (n + 1) / 2 + 1; }

struct SubsetScan {
    std::vector<double> values; // per enumerated subset; NaN where skipped
    std::vector<std::uint64_t> atoms;
    int level = 0;
    bool enumerable = false;

    DyadicSet set_for(std::size_t enum_index) const {
        DyadicSet s(level);
        std::uint64_t mask = enum_index + 1;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) s.set_atom(atoms[i], true);
        return s;
    }
};

// Evaluates fn on every nonempty dyadic subset of base at the effective
// search level, recording NaN where fn overflows its enumeration cap.
SubsetScan scan_subsets(const DyadicSet& base, const CriterionOptions& opt,
                        const std::function<double(const DyadicSet&)>& fn) {
    SubsetScan scan;
    scan.level = std::max(opt.search_level, base.level());
    DyadicSet b = base.refined(scan.level, 30);
    scan.atoms = b.atom_indices();
    if (scan.atoms.size() > static_cast<std::size_t>(opt.max_subset_atoms))
        return scan;
    scan.enumerable = true;
    std::uint64_t total = (std::uint64_t{1} << scan.atoms.size()) - 1;
    scan.values.reserve(total);
    for (std::uint64_t mask = 1; mask <= total; ++mask) {
        DyadicSet s(scan.level);
        for (std::size_t i = 0; i < scan.atoms.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) s.set_atom(scan.atoms[i], true);
        double v;
        try {
            v = fn(s);
        } catch (const EnumerationOverflow&) {
            v = std::numeric_limits<double>::quiet_NaN();
        }
        scan.values.push_back(v);
    }
    return scan;
}

CriterionVerdict aggregate(std::vector<SearchWitness> witnesses,
                           const CriterionOptions& opt, std::string note) {
    CriterionVerdict v;
    v.search_level = opt.search_level;
    v.eps_grid = opt.eps_grid;
    v.note = std::move(note);
    v.witnesses = std::move(witnesses);
    bool any_falsified = false, any_unsolved = false;
    for (const auto& w : v.witnesses) {
        if (w.found) continue;
        if (w.skipped == 0 && w.searched > 0)
            any_falsified = true;
        else
            any_unsolved = true;
    }
    if (any_falsified)
        v.status = CriterionStatus::Falsified;
    else if (any_unsolved)
        v.status = CriterionStatus::Inconclusive;
    else
        v.status = CriterionStatus::SatisfiedAtResolution;
    return v;
}

using MemberOsc =
    std::function<double(std::size_t member_one_based, const DyadicSet&)>;

CriterionVerdict sequential_check_impl(const FunctionSequence& seq,
                                       const CriterionOptions& opt,
                                       const MemberOsc& osc,
                                       const std::string& name) {
    std::string note =
        name + ": liminf surrogate = min over the tail past the burn-in "
               "(second half of the prefix); subset search at the stated level";
    if (seq.members.empty()) {
        CriterionVerdict v = aggregate({}, opt, note + "; empty prefix");
        v.status = CriterionStatus::Inconclusive;
        return v;
    }
    std::vector<std::vector<std::size_t>> subs;
    subs.push_back(full_index_list(seq.size()));
    for (const auto& s : opt.subsequences) {
        for (auto k : s)
            if (k == 0 || k > seq.size())
                throw Error("criterion subsequence index out of range");
        if (!s.empty()) subs.push_back(s);
    }

    std::vector<SearchWitness> witnesses;
    for (std::size_t si = 0; si < subs.size(); ++si) {
        auto tail = tail_of(subs[si]);
        for (const auto& B : opt.test_sets) {
            SubsetScan scan = scan_subsets(B, opt, [&](const DyadicSet& A) {
                double v = kInf;
                for (auto k : tail) v = std::min(v, osc(k, A));
                return v;
            });
            for (double eps : opt.eps_grid) {
                SearchWitness w;
                w.eps = eps;
                w.subsequence = si;
                w.base = B;
                w.best_value = kInf;
                if (!scan.enumerable) {
                    w.skipped = 1;
                    witnesses.push_back(std::move(w));
                    continue;
                }
                for (std::size_t i = 0; i < scan.values.size(); ++i) {
                    double v = scan.values[i];
                    if (std::isnan(v)) {
                        ++w.skipped;
                        continue;
                    }
                    ++w.searched;
                    if (v < w.best_value) w.best_value = v;
                    if (v < eps) {
                        w.found = true;
                        w.set = scan.set_for(i);
                        break;
                    }
                }
                witnesses.push_back(std::move(w));
            }
        }
    }
    return aggregate(std::move(witnesses), opt, note);
}

} // namespace

CriterionVerdict sequential_bocce_check(const FunctionSequence& seq,
                                        const CriterionOptions& options) {
    return sequential_check_impl(
        seq, options,
        [&](std::size_t k, const DyadicSet& A) {
            return bocce_osc(seq.member(k), A);
        },
        "sequential_bocce");
}

CriterionVerdict
sequential_pettis_bocce_check(const FunctionSequence& seq,
                              const CriterionOptions& options) {
    return sequential_check_impl(
        seq, options,
        [&](std::size_t k, const DyadicSet& A) {
            return pettis_bocce_osc(seq.member(k), A, options.pettis_cap);
        },
        "sequential_pettis_bocce");
}

CriterionVerdict set_bocce_check(const std::vector<StepFunction>& members,
                                 const CriterionOptions& options) {
    std::string note =
        "set_bocce: greedy cover of members by enumerated subsets";
    if (members.empty() || members.size() > 64)
        throw Error("set_bocce_check: member count must be in [1, 64]");
    std::vector<SearchWitness> witnesses;
    for (const auto& B : options.test_sets) {
        // Per-subset coverage masks are eps-independent only through the
        // oscillation values, so store those once per base set.
        std::vector<std::vector<double>> osc_rows;
        SubsetScan scan = scan_subsets(B, options, [&](const DyadicSet& A) {
            std::vector<double> row(members.size());
            for (std::size_t m = 0; m < members.size(); ++m)
                row[m] = bocce_osc(members[m], A);
            osc_rows.push_back(std::move(row));
            return 0.0;
        });
        for (double eps : options.eps_grid) {
            SearchWitness w;
            w.eps = eps;
            w.base = B;
            w.best_value = kInf;
            if (!scan.enumerable) {
                w.skipped = 1;
                witnesses.push_back(std::move(w));
                continue;
            }
            w.searched = osc_rows.size();
            std::vector<std::uint64_t> cover(osc_rows.size(), 0);
            std::vector<double> member_best(members.size(), kInf);
            for (std::size_t i = 0; i < osc_rows.size(); ++i)
                for (std::size_t m = 0; m < members.size(); ++m) {
                    member_best[m] = std::min(member_best[m], osc_rows[i][m]);
                    if (osc_rows[i][m] < eps) cover[i] |= std::uint64_t{1} << m;
                }
            w.best_value = *std::max_element(member_best.begin(),
                                             member_best.end());
            std::uint64_t all = members.size() == 64
                                    ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << members.size()) - 1;
            std::uint64_t covered = 0;
            while (covered != all) {
                std::size_t best_i = osc_rows.size();
                int best_gain = 0;
                for (std::size_t i = 0; i < osc_rows.size(); ++i) {
                    int gain = std::popcount(cover[i] & ~covered);
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_i = i;
                    }
                }
                if (best_i == osc_rows.size()) break;
                covered |= cover[best_i];
                w.collection.push_back(scan.set_for(best_i));
            }
            w.found = covered == all;
            witnesses.push_back(std::move(w));
        }
    }
    return aggregate(std::move(witnesses), options, note);
}

namespace {

// max over the mandatory tail window [start_index_cap, K].
double window_max(const std::vector<double>& per_member) {
    std::size_t n = per_member.size();
    std::size_t from = start_index_cap(n);
    double m = 0.0;
    for (std::size_t k = from; k <= n; ++k) m = std::max(m, per_member[k - 1]);
    return m;
}

// Minimal N with osc < eps for all k >= N, or 0 if even the mandatory
// window fails.
int minimal_start(const std::vector<double>& per_member, double eps) {
    std::size_t n = per_member.size();
    if (window_max(per_member) >= eps) return 0;
    std::size_t last_fail = 0;
    for (std::size_t k = 1; k <= n; ++k)
        if (per_member[k - 1] >= eps) last_fail = k;
    return static_cast<int>(last_fail + 1);
}

} // namespace

CriterionVerdict b0_check(const FunctionSequence& seq,
                          const CriterionOptions& options) {
    std::string note =
        "b0: per (eps, B) a subset C and start index N with oscillation < eps "
        "for all members k >= N; N is capped so the burn-in tail stays in range";
    if (seq.members.empty()) throw Error("b0_check: empty prefix");
    std::vector<SearchWitness> witnesses;
    for (const auto& B : options.test_sets) {
        std::vector<std::vector<double>> osc_rows;
        SubsetScan scan = scan_subsets(B, options, [&](const DyadicSet& C) {
            std::vector<double> row(seq.size());
            for (std::size_t k = 1; k <= seq.size(); ++k)
                row[k - 1] = bocce_osc(seq.member(k), C);
            osc_rows.push_back(std::move(row));
            return 0.0;
        });
        for (double eps : options.eps_grid) {
            SearchWitness w;
            w.eps = eps;
            w.base = B;
            w.best_value = kInf;
            if (!scan.enumerable) {
                w.skipped = 1;
                witnesses.push_back(std::move(w));
                continue;
            }
            for (std::size_t i = 0; i < osc_rows.size(); ++i) {
                ++w.searched;
                w.best_value = std::min(w.best_value, window_max(osc_rows[i]));
                int n0 = minimal_start(osc_rows[i], eps);
                if (n0 > 0) {
                    w.found = true;
                    w.set = scan.set_for(i);
                    w.start_index = n0;
                    break;
                }
            }
            witnesses.push_back(std::move(w));
        }
    }
    return aggregate(std::move(witnesses), options, note);
}

namespace {

struct PartitionCandidate {
    DyadicPartition partition;
    std::string origin;
};

// Atom partitions at each level up to the search level, plus per level an
// adaptive variant that parks the atoms oscillating above eps in an
// exceptional block (admissible only when that block has measure < eps).
std::vector<PartitionCandidate>
candidate_partitions(const FunctionSequence& seq, double eps,
                     const CriterionOptions& opt) {
    std::vector<PartitionCandidate> out;
    for (int m = 0; m <= opt.search_level; ++m)
        out.push_back({DyadicPartition::atoms(m),
                       "atoms level " + std::to_string(m)});
    for (int m = 0; m <= opt.search_level; ++m) {
        DyadicSet bad(m);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << m); ++i) {
            DyadicSet a = DyadicSet::atom(m, i);
            std::vector<double> row(seq.size());
            for (std::size_t k = 1; k <= seq.size(); ++k)
                row[k - 1] = bocce_osc(seq.member(k), a);
            if (window_max(row) >= eps) bad.set_atom(i, true);
        }
        std::uint64_t bad_count = bad.popcount();
        if (bad_count == 0 || bad_count == bad.atom_count()) continue;
        if (!(bad.measure().to_double() < eps)) continue;
        std::vector<DyadicSet> blocks;
        blocks.push_back(bad);
        for (std::uint64_t i = 0; i < bad.atom_count(); ++i)
            if (!bad.contains(i)) blocks.push_back(DyadicSet::atom(m, i));
        out.push_back({DyadicPartition::of_blocks(std::move(blocks), 0),
                       "adaptive level " + std::to_string(m)});
    }
    return out;
}

CriterionVerdict partition_condition_check(const FunctionSequence& seq,
                                           const CriterionOptions& opt,
                                           bool quantify_sub_blocks,
                                           const std::string& name) {
    std::string note =
        name + ": searched candidate partitions = atom partitions at levels "
               "0.." +
        std::to_string(opt.search_level) +
        " plus adaptive exceptional-block variants; falsification is "
        "relative to this candidate space";
    if (seq.members.empty()) throw Error(name + ": empty prefix");
    std::vector<SearchWitness> witnesses;
    for (double eps : opt.eps_grid) {
        SearchWitness w;
        w.eps = eps;
        w.best_value = kInf;
        for (const auto& cand : candidate_partitions(seq, eps, opt)) {
            double worst = 0.0;
            int start = 1;
            bool overflow = false;
            for (std::size_t bi = 0; bi < cand.partition.blocks().size(); ++bi) {
                if (cand.partition.is_exceptional(bi)) continue;
                const DyadicSet& block = cand.partition.blocks()[bi];
                auto eval_region = [&](const DyadicSet& region) {
                    std::vector<double> row(seq.size());
                    for (std::size_t k = 1; k <= seq.size(); ++k)
                        row[k - 1] = bocce_osc(seq.member(k), region);
                    worst = std::max(worst, window_max(row));
                    int n0 = minimal_start(row, eps);
                    if (n0 == 0)
                        start = 0;
                    else if (start > 0)
                        start = std::max(start, n0);
                };
                if (quantify_sub_blocks) {
                    try {
                        for_each_subset(block, block.level() + opt.b2_sub_depth,
                                        opt.max_subset_atoms,
                                        [&](const DyadicSet& sub) {
                                            eval_region(sub);
                                            return true;
                                        });
                    } catch (const EnumerationOverflow&) {
                        overflow = true;
                        break;
                    }
                } else {
                    eval_region(block);
                }
            }
            if (overflow) {
                ++w.skipped;
                continue;
            }
            ++w.searched;
            w.best_value = std::min(w.best_value, worst);
            if (start > 0) {
                w.found = true;
                w.start_index = start;
                for (std::size_t bi = 0; bi < cand.partition.blocks().size();
                     ++bi) {
                    if (cand.partition.is_exceptional(bi))
                        w.set = cand.partition.blocks()[bi];
                    else
                        w.collection.push_back(cand.partition.blocks()[bi]);
                }
                break;
            }
        }
        witnesses.push_back(std::move(w));
    }
    return aggregate(std::move(witnesses), opt, note);
}

} // namespace

CriterionVerdict b1_check(const FunctionSequence& seq,
                          const CriterionOptions& options) {
    return partition_condition_check(seq, options, false, "b1");
}

CriterionVerdict b2_check(const FunctionSequence& seq,
                          const CriterionOptions& options) {
    return partition_condition_check(seq, options, true, "b2");
}

double small_bocce_osc(const StepFunction& f, const DyadicPartition& pi) {
    double s = 0.0;
    for (std::size_t i = 0; i < pi.blocks().size(); ++i) {
        if (pi.is_exceptional(i)) continue;
        s += pi.blocks()[i].measure().to_double() * bocce_osc(f, pi.blocks()[i]);
    }
    return s;
}

CriterionVerdict
small_bocce_set_check(const std::vector<StepFunction>& members,
                      const CriterionOptions& options) {
    std::string note =
        "small_bocce_set: searched atom partitions at levels 0.." +
        std::to_string(options.search_level) +
        "; falsification is relative to this candidate space";
    if (members.empty()) throw Error("small_bocce_set_check: no members");
    std::vector<SearchWitness> witnesses;
    for (double eps : options.eps_grid) {
        SearchWitness w;
        w.eps = eps;
        w.best_value = kInf;
        for (int m = 0; m <= options.search_level; ++m) {
            DyadicPartition pi = DyadicPartition::atoms(m);
            double worst = 0.0;
            for (const auto& f : members)
                worst = std::max(worst, small_bocce_osc(f, pi));
            ++w.searched;
            w.best_value = std::min(w.best_value, worst);
            if (worst < eps) {
                w.found = true;
                w.collection = pi.blocks();
                break;
            }
        }
        witnesses.push_back(std::move(w));
    }
    return aggregate(std::move(witnesses), options, note);
}

} // namespace bocce
