#include "bocce/tight_biting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bocce {

TightnessGrids default_tightness_grids(std::size_t prefix) {
    TightnessGrids g;
    g.eps_grid = default_eps_grid();
    g.radius_grid.push_back(0.0);
    for (std::size_t i = 0; i <= prefix; ++i)
        g.radius_grid.push_back(std::ldexp(1.0, static_cast<int>(i)));
    for (std::size_t d = 0; d < std::max<std::size_t>(prefix, 1); ++d)
        g.dim_grid.push_back(static_cast<int>(d));
    return g;
}

DyadicRational ball_escape(const StepFunction& f, double radius, int dim) {
    std::int64_t count = 0;
    for (const auto& v : f.values()) {
        bool inside = norm(v, f.kind()) <= radius && v.support_within(dim);
        if (!inside) ++count;
    }
    return DyadicRational(count, f.level());
}

DyadicRational finite_set_escape(const StepFunction& f,
                                 const std::vector<SeqVec>& values) {
    std::int64_t count = 0;
    for (const auto& v : f.values()) {
        bool inside = std::find(values.begin(), values.end(), v) != values.end();
        if (!inside) ++count;
    }
    return DyadicRational(count, f.level());
}

StepFunction restrict_to_ball(const StepFunction& f, double radius, int dim) {
    StepFunction out = f;
    for (std::uint64_t i = 0; i < f.atom_count(); ++i) {
        const SeqVec& v = f.value(i);
        if (!(norm(v, f.kind()) <= radius && v.support_within(dim)))
            out.set_value(i, SeqVec());
    }
    return out;
}

namespace {

DyadicRational max_ball_escape(const FunctionSequence& seq, double radius,
                               int dim, std::vector<DyadicRational>& escapes) {
    escapes.clear();
    DyadicRational worst = DyadicRational::zero();
    for (const auto& f : seq.members) {
        DyadicRational e = ball_escape(f, radius, dim);
        escapes.push_back(e);
        if (e > worst) worst = e;
    }
    return worst;
}

} // namespace

std::vector<TightnessWitness> tightness_search(const FunctionSequence& seq,
                                               const TightnessGrids& grids) {
    std::vector<TightnessWitness> out;
    for (double eps : grids.eps_grid) {
        TightnessWitness w;
        w.eps = eps;
        w.mode = TightnessWitness::Mode::ConstantBall;
        bool first = true;
        std::vector<DyadicRational> escapes;
        for (int d : grids.dim_grid) {
            for (double r : grids.radius_grid) {
                DyadicRational worst = max_ball_escape(seq, r, d, escapes);
                if (worst.to_double() <= eps) {
                    w.found = true;
                    w.radius = r;
                    w.dim = d;
                    w.escapes = escapes;
                    w.max_escape = worst;
                    break;
                }
                if (first || worst < w.max_escape) {
                    // track the best failure for the NOT_FOUND report
                    w.radius = r;
                    w.dim = d;
                    w.escapes = escapes;
                    w.max_escape = worst;
                    first = false;
                }
            }
            if (w.found) break;
        }
        out.push_back(std::move(w));
    }
    return out;
}

TightnessWitness finite_set_witness(const FunctionSequence& seq, double eps) {
    TightnessWitness w;
    w.eps = eps;
    w.mode = TightnessWitness::Mode::FiniteSet;
    std::vector<SeqVec> values;
    auto add_values = [&](const StepFunction& f) {
        for (const auto& b : distinct_value_blocks(f, true))
            if (std::find(values.begin(), values.end(), b.value) == values.end())
                values.push_back(b.value);
    };
    if (seq.limit) add_values(*seq.limit);
    else values.push_back(SeqVec());
    for (const auto& f : seq.members)
        if (finite_set_escape(f, values).to_double() > eps) add_values(f);
    w.finite_set = values;
    w.max_escape = DyadicRational::zero();
    for (const auto& f : seq.members) {
        DyadicRational e = finite_set_escape(f, values);
        w.escapes.push_back(e);
        if (e > w.max_escape) w.max_escape = e;
    }
    w.found = w.max_escape.to_double() <= eps;
    return w;
}

BitingDecomposition biting_decompose(const FunctionSequence& seq,
                                     const BitingSchedule& schedule) {
    if (schedule.target <= 0.0)
        throw Error("biting_decompose: target must be positive");
    BitingDecomposition out;
    std::size_t n = seq.size();
    if (n == 0) return out;

    double bound = 0.0;
    for (const auto& f : seq.members) bound = std::max(bound, l1_norm(f));
    for (std::size_t k = 1; k <= n; ++k) {
        out.indices.push_back(k);
        out.truncation_levels.push_back(static_cast<double>(k) * bound /
                                        schedule.target);
    }

    double c_last = out.truncation_levels.back();
    double residual = ui_modulus(seq, {c_last}).last_value();
    out.all_omega = residual <= schedule.ui_tolerance;

    FunctionSequence bitten;
    bitten.kind = seq.kind;
    bitten.label = seq.label + " (bitten)";
    DyadicSet acc = DyadicSet::empty(0);
    bool have_acc = false;
    for (std::size_t k = 1; k <= n; ++k) {
        const StepFunction& f = seq.member(k);
        DyadicSet keep(f.level());
        if (out.all_omega) {
            keep = DyadicSet::full(f.level());
        } else {
            double c = out.truncation_levels[k - 1];
            for (std::uint64_t i = 0; i < f.atom_count(); ++i)
                if (norm(f.value(i), f.kind()) <= c) keep.set_atom(i, true);
        }
        DyadicSet a = have_acc ? unite(acc, keep) : keep;
        acc = a;
        have_acc = true;
        out.sets.push_back(a);
        out.removed_measure.push_back(complement(a).measure());

        StepFunction fb(a.level(), f.kind());
        StepFunction fr = f.refined(a.level(), 30);
        for (std::uint64_t i = 0; i < fb.atom_count(); ++i)
            if (a.contains(i)) fb.set_value(i, fr.value(i));
        out.bitten_l1.push_back(l1_norm(fb));
        bitten.members.push_back(std::move(fb));
    }
    out.bitten_ui = ui_modulus(bitten, out.truncation_levels);
    return out;
}

Theorem45Report theorem45_check(bool weak_surrogate, CriterionStatus bocce,
                                bool tight_at_every_eps, bool strong) {
    Theorem45Report r;
    r.weak_surrogate = weak_surrogate;
    r.bocce = bocce;
    r.tight = tight_at_every_eps;
    r.strong = strong;
    r.decided = bocce != CriterionStatus::Inconclusive;
    r.conditions_met = weak_surrogate &&
                       bocce == CriterionStatus::SatisfiedAtResolution &&
                       tight_at_every_eps;
    r.agrees = !r.decided || r.conditions_met == strong;
    r.note = r.decided
                 ? "agreement between (weak + sequential Bocce + tight) and the "
                   "strong trend, at finite resolution"
                 : "no claim: criterion search was inconclusive";
    return r;
}

Theorem48Report theorem48_check(const FunctionSequence& seq,
                                CriterionStatus bocce,
                                bool tight_at_every_eps,
                                const BitingDecomposition& bite, double tol) {
    Theorem48Report r;
    for (const auto& f : seq.members) r.l1_bound = std::max(r.l1_bound, l1_norm(f));
    r.tight = tight_at_every_eps;
    r.bocce = bocce;
    r.decided = bocce != CriterionStatus::Inconclusive;

    // Cauchy behaviour of the bitten parts over the tail window.
    std::size_t n = bite.indices.size();
    if (n >= 2) {
        std::vector<double> increments;
        for (std::size_t k = 1; k + 1 <= n; ++k) {
            StepFunction a = seq.member(bite.indices[k - 1]);
            StepFunction b = seq.member(bite.indices[k]);
            DyadicSet sa = bite.sets[k - 1];
            DyadicSet sb = bite.sets[k];
            int L = std::max({a.level(), b.level(), sa.level(), sb.level()});
            StepFunction ar = a.refined(L, 30), br = b.refined(L, 30);
            DyadicSet sar = sa.refined(L, 30), sbr = sb.refined(L, 30);
            StepFunction diff(L, seq.kind);
            for (std::uint64_t i = 0; i < diff.atom_count(); ++i) {
                SeqVec va = sar.contains(i) ? ar.value(i) : SeqVec();
                SeqVec vb = sbr.contains(i) ? br.value(i) : SeqVec();
                diff.set_value(i, vb - va);
            }
            increments.push_back(l1_norm(diff));
        }
        std::size_t window = std::max<std::size_t>(1, increments.size() / 2);
        for (std::size_t i = increments.size() - window; i < increments.size();
             ++i)
            r.bitten_cauchy_tail = std::max(r.bitten_cauchy_tail, increments[i]);
        r.bitten_strongly_cauchy = r.bitten_cauchy_tail < tol;
    } else {
        r.bitten_strongly_cauchy = true;
    }
    if (!bite.removed_measure.empty()) {
        r.removed_last = bite.removed_measure.back();
        r.removed_vanishing = r.removed_last.to_double() < tol ||
                              (bite.removed_measure.size() >= 2 &&
                               r.removed_last <
                                   bite.removed_measure.front());
    }
    r.conditions_met = tight_at_every_eps &&
                       bocce == CriterionStatus::SatisfiedAtResolution;
    r.agrees = !r.decided || !r.conditions_met ||
               (r.bitten_strongly_cauchy && r.removed_vanishing);
    r.note = "one-directional check: bounded + tight + sequential Bocce "
             "should yield strongly Cauchy bitten parts and vanishing "
             "removed measure";
    return r;
}

} // namespace bocce
