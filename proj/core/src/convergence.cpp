#include "bocce/convergence.hpp"

#include <algorithm>
#include <cmath>

namespace bocce {

TestG TestG::from_functional(const Functional& xs, std::string label) {
    TestG g;
    g.add_abs_term(xs, DyadicSet::full(0));
    g.label_ = std::move(label);
    return g;
}

TestG TestG::from_dual(const StepFunction& b, std::string label) {
    TestG g;
    g.add_linear_term(b);
    g.label_ = std::move(label);
    return g;
}

TestG TestG::norm_test(int declared_dim, std::string label) {
    if (declared_dim <= 0)
        throw Error("TestG::norm_test: the norm integrand needs a declared "
                    "finite ambient dimension");
    TestG g;
    g.norm_term_ = true;
    g.declared_dim_ = declared_dim;
    g.label_ = std::move(label);
    return g;
}

void TestG::add_abs_term(Functional xs, DyadicSet where) {
    abs_terms_.push_back({std::move(xs), std::move(where)});
}

void TestG::add_linear_term(StepFunction dual_valued) {
    linear_terms_.push_back(std::move(dual_valued));
}

double TestG::bound_constant() const {
    double c = 0.0;
    for (const auto& t : abs_terms_) c += dual_norm(t.functional);
    for (const auto& b : linear_terms_) {
        double sup = 0.0;
        for (const auto& v : b.values())
            sup = std::max(sup, norm(v, b.kind()));
        c += sup;
    }
    if (norm_term_) c += 1.0;
    return c;
}

double TestG::evaluate(const StepFunction& x) const {
    int L = x.level();
    for (const auto& t : abs_terms_) L = std::max(L, t.where.level());
    for (const auto& b : linear_terms_) {
        if (b.kind() != dual(x.kind()))
            throw KindMismatch("TestG: dual-valued term kind mismatch");
        L = std::max(L, b.level());
    }
    StepFunction xr = x.refined(L, 30);

    std::vector<DyadicSet> sets;
    for (const auto& t : abs_terms_) {
        if (t.functional.primal != x.kind())
            throw KindMismatch("TestG: functional term kind mismatch");
        sets.push_back(t.where.refined(L, 30));
    }
    std::vector<StepFunction> duals;
    for (const auto& b : linear_terms_) duals.push_back(b.refined(L, 30));

    double sum = 0.0;
    for (std::uint64_t i = 0; i < xr.atom_count(); ++i) {
        const SeqVec& v = xr.value(i);
        double g = 0.0;
        for (std::size_t t = 0; t < abs_terms_.size(); ++t)
            if (sets[t].contains(i))
                g += std::abs(pair(abs_terms_[t].functional, v));
        for (const auto& b : duals) g += b.value(i).dot(v);
        if (norm_term_) g += norm(v, x.kind());
        sum += g;
    }
    return sum * DyadicRational(1, L).to_double();
}

bool tail_window_pass(const std::vector<double>& values, double threshold) {
    if (values.empty()) return false;
    std::size_t window = std::max<std::size_t>(1, (values.size() + 2) / 3);
    double m = 0.0;
    for (std::size_t i = values.size() - window; i < values.size(); ++i)
        m = std::max(m, std::abs(values[i]));
    return m < threshold;
}

double default_report_tolerance(std::size_t prefix) {
    return 10.0 * std::pow(2.0, -static_cast<double>(prefix) / 2.0);
}

std::vector<Functional> coordinate_family(SpaceKind kind, std::size_t count) {
    std::vector<Functional> out;
    for (std::size_t i = 1; i <= count; ++i)
        out.push_back(Functional::coordinate(static_cast<int>(i), kind));
    return out;
}

namespace {

TrendSeries make_series(std::string name, std::vector<double> values,
                        double threshold) {
    TrendSeries s;
    s.name = std::move(name);
    s.values = std::move(values);
    s.threshold = threshold;
    s.pass = tail_window_pass(s.values, threshold);
    return s;
}

} // namespace

TrendSeries strong_trend(const FunctionSequence& seq, double tol) {
    if (!seq.limit) throw Error("strong_trend: missing limit candidate");
    std::vector<double> vals;
    for (std::size_t k = 1; k <= seq.size(); ++k)
        vals.push_back(l1_norm(seq.deviation(k)));
    return make_series("trend.strong", std::move(vals), tol);
}

PettisTrend pettis_trend(const FunctionSequence& seq, double tol, int cap,
                         const std::vector<Functional>& fallback) {
    if (!seq.limit) throw Error("pettis_trend: missing limit candidate");
    PettisTrend out;
    std::vector<double> vals;
    for (std::size_t k = 1; k <= seq.size(); ++k) {
        StepFunction d = seq.deviation(k);
        try {
            vals.push_back(pettis_norm_exact(d, cap).value);
            out.methods.push_back(PettisMethod::Exact);
        } catch (const EnumerationOverflow&) {
            vals.push_back(pettis_norm_bounds(d, fallback).value);
            out.methods.push_back(PettisMethod::Bounds);
        }
    }
    out.series = make_series("trend.pettis", std::move(vals), tol);
    return out;
}

std::vector<TrendSeries> limited_trend(const FunctionSequence& seq,
                                       const std::vector<TestG>& tests,
                                       double tol) {
    if (!seq.limit) throw Error("limited_trend: missing limit candidate");
    std::vector<TrendSeries> out;
    for (std::size_t t = 0; t < tests.size(); ++t) {
        std::vector<double> vals;
        for (std::size_t k = 1; k <= seq.size(); ++k)
            vals.push_back(tests[t].evaluate(seq.deviation(k)));
        std::string name = tests[t].label().empty()
                               ? "trend.limited." + std::to_string(t)
                               : "trend.limited." + tests[t].label();
        double c = tests[t].bound_constant();
        out.push_back(make_series(name, std::move(vals),
                                  tol * std::max(1.0, c)));
    }
    return out;
}

namespace {

std::vector<Functional> unit_ball(const std::vector<Functional>& fs) {
    std::vector<Functional> out;
    for (const auto& f : fs) {
        Functional g = f;
        double dn = dual_norm(g);
        if (dn > 1.0) g.coeffs = g.coeffs * (1.0 / dn);
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace

std::vector<TrendSeries>
scalar_strong_trends(const FunctionSequence& seq,
                     const std::vector<Functional>& functionals, double tol) {
    if (!seq.limit) throw Error("scalar_strong_trends: missing limit");
    std::vector<TrendSeries> out;
    auto family = unit_ball(functionals);
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::vector<double> vals;
        for (std::size_t k = 1; k <= seq.size(); ++k)
            vals.push_back(l1_norm(scalarize(seq.deviation(k), family[i])));
        out.push_back(make_series(
            "trend.scalar_strong.f" + std::to_string(i), std::move(vals), tol));
    }
    return out;
}

std::vector<TrendSeries>
scalar_in_measure_trends(const FunctionSequence& seq,
                         const std::vector<Functional>& functionals,
                         const std::vector<double>& eps_grid, double tol) {
    if (!seq.limit) throw Error("scalar_in_measure_trends: missing limit");
    std::vector<TrendSeries> out;
    auto family = unit_ball(functionals);
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (double eps : eps_grid) {
            std::vector<double> vals;
            for (std::size_t k = 1; k <= seq.size(); ++k) {
                StepFunction s = scalarize(seq.deviation(k), family[i]);
                vals.push_back(
                    measure_deviation(s, StepFunction::zero(s.kind()), eps)
                        .to_double());
            }
            out.push_back(make_series("trend.scalar_in_measure.f" +
                                          std::to_string(i) +
                                          ".eps=" + std::to_string(eps),
                                      std::move(vals), tol / eps));
        }
    }
    return out;
}

std::vector<TrendSeries>
scalar_weak_trends(const FunctionSequence& seq,
                   const std::vector<Functional>& functionals,
                   const std::vector<DyadicSet>& test_sets, double tol) {
    if (!seq.limit) throw Error("scalar_weak_trends: missing limit");
    std::vector<TrendSeries> out;
    auto family = unit_ball(functionals);
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t b = 0; b < test_sets.size(); ++b) {
            std::vector<double> vals;
            for (std::size_t k = 1; k <= seq.size(); ++k) {
                StepFunction s = scalarize(seq.deviation(k), family[i]);
                vals.push_back(integral(s, test_sets[b])[1]);
            }
            out.push_back(make_series("trend.scalar_weak.f" +
                                          std::to_string(i) + ".B=" +
                                          test_sets[b].to_text(),
                                      std::move(vals), tol));
        }
    }
    return out;
}

std::vector<TrendSeries>
weak_surrogate_trend(const FunctionSequence& seq,
                     const std::vector<StepFunction>& duals, double tol) {
    if (!seq.limit) throw Error("weak_surrogate_trend: missing limit");
    std::vector<TrendSeries> out;
    for (std::size_t b = 0; b < duals.size(); ++b) {
        if (duals[b].kind() != dual(seq.kind))
            throw KindMismatch("weak_surrogate_trend: dual kind mismatch");
        double sup = 0.0;
        for (const auto& v : duals[b].values())
            sup = std::max(sup, norm(v, duals[b].kind()));
        std::vector<double> vals;
        for (std::size_t k = 1; k <= seq.size(); ++k) {
            StepFunction d = seq.deviation(k);
            int L = std::max(d.level(), duals[b].level());
            StepFunction dr = d.refined(L, 30);
            StepFunction br = duals[b].refined(L, 30);
            double s = 0.0;
            for (std::uint64_t i = 0; i < dr.atom_count(); ++i)
                s += br.value(i).dot(dr.value(i));
            vals.push_back(s * DyadicRational(1, L).to_double());
        }
        out.push_back(make_series("trend.weak.b" + std::to_string(b),
                                  std::move(vals),
                                  tol * std::max(1.0, sup)));
    }
    return out;
}

std::vector<TrendSeries> delta_cauchy(const FunctionSequence& seq,
                                      const std::vector<DyadicSet>& test_sets,
                                      double tol) {
    if (!seq.limit) throw Error("delta_cauchy: missing limit candidate");
    std::vector<TrendSeries> out;
    for (const auto& B : test_sets) {
        std::vector<double> vals;
        for (std::size_t k = 1; k <= seq.size(); ++k)
            vals.push_back(norm(average(seq.member(k), B) -
                                    average(*seq.limit, B),
                                seq.kind));
        out.push_back(make_series("trend.delta_cauchy.B=" + B.to_text(),
                                  std::move(vals), tol));
    }
    return out;
}

std::vector<TrendSeries> in_measure_trend(const FunctionSequence& seq,
                                          const std::vector<double>& eps_grid,
                                          double tol) {
    if (!seq.limit) throw Error("in_measure_trend: missing limit candidate");
    std::vector<TrendSeries> out;
    for (double eps : eps_grid) {
        std::vector<double> vals;
        for (std::size_t k = 1; k <= seq.size(); ++k)
            vals.push_back(
                measure_deviation(seq.member(k), *seq.limit, eps).to_double());
        out.push_back(make_series("trend.in_measure.eps=" + std::to_string(eps),
                                  std::move(vals), tol));
    }
    return out;
}

bool LatticeReport::lattice_consistent() const {
    if (flags.strong && !flags.pettis) return false;
    if (flags.strong && !flags.limited_surrogate) return false;
    if (flags.limited_surrogate && !flags.scalarly_strong) return false;
    if (flags.pettis && !flags.scalarly_strong) return false;
    if (flags.scalarly_strong && !flags.scalarly_in_measure) return false;
    return true;
}

LatticeReport lattice_report(const FunctionSequence& seq,
                             const ReportConfig& config) {
    seq.validate();
    if (!seq.limit) throw Error("lattice_report: missing limit candidate");
    if (seq.members.empty()) throw Error("lattice_report: empty prefix");

    LatticeReport rep;
    std::size_t K = seq.size();
    rep.label = seq.label;
    rep.prefix = K;
    rep.kind = seq.kind;
    rep.tol = config.tol >= 0.0 ? config.tol : default_report_tolerance(K);
    rep.seed = config.seed;
    double tol = rep.tol;

    std::size_t coord_count = config.coordinate_functionals
                                  ? config.coordinate_functionals
                                  : std::max<std::size_t>(1, K / 2);
    std::vector<Functional> functionals =
        coordinate_family(seq.kind, coord_count);
    for (const auto& f : config.extra_functionals) functionals.push_back(f);
    functionals = [&] {
        std::vector<Functional> ball;
        for (const auto& f : functionals) {
            Functional g = f;
            double dn = dual_norm(g);
            if (dn > 1.0) g.coeffs = g.coeffs * (1.0 / dn);
            if (dn > 0.0) ball.push_back(std::move(g));
        }
        return ball;
    }();

    // Tests: the scalar family induces |x*|-tests so the limited flag
    // dominates the scalar-strong flag on identical numbers.
    std::vector<TestG> tests;
    for (std::size_t i = 0; i < functionals.size(); ++i)
        tests.push_back(
            TestG::from_functional(functionals[i], "f" + std::to_string(i)));
    for (const auto& t : config.extra_tests) tests.push_back(t);

    // Weak-surrogate duals: the functionals as constant duals, plus extras.
    std::vector<StepFunction> duals;
    for (const auto& f : functionals)
        duals.push_back(
            StepFunction::constant(f.coeffs, dual(seq.kind), 0));
    for (const auto& b : config.extra_duals) duals.push_back(b);

    std::vector<DyadicSet> test_sets = default_test_sets(config.test_set_level);

    rep.strong = strong_trend(seq, tol);
    rep.pettis = pettis_trend(seq, tol, config.pettis_cap, functionals);
    rep.limited = limited_trend(seq, tests, tol);
    rep.scalar_strong = scalar_strong_trends(seq, functionals, tol);
    rep.scalar_in_measure =
        scalar_in_measure_trends(seq, functionals, config.eps_grid, tol);
    rep.scalar_weak = scalar_weak_trends(seq, functionals, test_sets, tol);
    rep.weak = weak_surrogate_trend(seq, duals, tol);
    rep.delta = delta_cauchy(seq, test_sets, tol);
    rep.in_measure = in_measure_trend(seq, config.eps_grid, tol);

    auto all_pass = [](const std::vector<TrendSeries>& xs) {
        return std::all_of(xs.begin(), xs.end(),
                           [](const TrendSeries& s) { return s.pass; });
    };
    rep.flags.strong = rep.strong.pass;
    rep.flags.pettis = rep.pettis.series.pass;
    rep.flags.limited_surrogate = all_pass(rep.limited);
    rep.flags.scalarly_strong = all_pass(rep.scalar_strong);
    rep.flags.scalarly_in_measure = all_pass(rep.scalar_in_measure);
    rep.flags.scalarly_weak = all_pass(rep.scalar_weak);
    rep.flags.weak_surrogate = all_pass(rep.weak);
    // No finite observable separates the two weak-type topologies under
    // step-function duals; the sigma flag mirrors the weak surrogate.
    rep.flags.sigma_linf_surrogate = rep.flags.weak_surrogate;
    rep.flags.in_measure = all_pass(rep.in_measure);

    CriterionOptions opt;
    opt.eps_grid = config.eps_grid;
    opt.test_sets = test_sets;
    opt.search_level = config.search_level;
    opt.pettis_cap = config.pettis_cap;
    rep.sequential_bocce = sequential_bocce_check(seq, opt);
    rep.sequential_pettis_bocce = sequential_pettis_bocce_check(seq, opt);
    rep.b0 = b0_check(seq, opt);
    rep.b1 = b1_check(seq, opt);
    rep.b2 = b2_check(seq, opt);
    rep.set_bocce = set_bocce_check(seq.members, opt);
    rep.small_bocce = small_bocce_set_check(seq.members, opt);

    std::vector<double> cs = config.ui_thresholds;
    if (cs.empty())
        for (std::size_t i = 0; i <= K; ++i)
            cs.push_back(std::ldexp(1.0, static_cast<int>(i)));
    std::vector<double> ds = config.equi_deltas;
    if (ds.empty())
        for (std::size_t i = 1; i <= K; ++i)
            ds.push_back(std::ldexp(1.0, -static_cast<int>(i)));
    rep.ui = ui_modulus(seq, cs);
    rep.equi = equi_modulus(seq, ds);
    rep.pettis_ui = pettis_ui_modulus(seq, functionals, cs);
    rep.flags.uniformly_integrable = rep.ui.last_value() < tol;

    TightnessGrids grids = config.tightness;
    if (grids.eps_grid.empty()) grids = default_tightness_grids(K);
    rep.tightness = tightness_search(seq, grids);
    bool tight_all =
        std::all_of(rep.tightness.begin(), rep.tightness.end(),
                    [](const TightnessWitness& w) { return w.found; });

    rep.biting = biting_decompose(seq, config.biting);

    rep.theorem45 = theorem45_check(rep.flags.weak_surrogate,
                                    rep.sequential_bocce.status, tight_all,
                                    rep.flags.strong);
    rep.theorem48 = theorem48_check(seq, rep.sequential_bocce.status,
                                    tight_all, rep.biting, tol);

    if (!rep.lattice_consistent())
        throw Error("lattice_report: implication chain violated (internal)");
    return rep;
}

} // namespace bocce
