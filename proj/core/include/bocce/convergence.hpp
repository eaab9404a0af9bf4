#pragma once

#include <string>
#include <vector>

#include "bocce/functionals.hpp"
#include "bocce/oscillation.hpp"
#include "bocce/step_function.hpp"
#include "bocce/tight_biting.hpp"

namespace bocce {

/// Test integrand g(omega, x) = sum_i |x*_i(x)| 1_{A_i}(omega)
///                            + sum_j <x, b_j(omega)> [+ ||x||],
/// the computable slice of the test class for limited convergence:
/// vanishes at 0, weakly continuous in x by construction, and bounded by
/// bound_constant() * ||x||.
class TestG {
public:
    struct AbsTerm {
        Functional functional;
        DyadicSet where;
    };

    TestG() = default;

    static TestG from_functional(const Functional& xs, std::string label = {});
    static TestG from_dual(const StepFunction& b, std::string label = {});
    /// The norm integrand is admitted only with a declared finite ambient
    /// dimension.
    static TestG norm_test(int declared_dim, std::string label = {});

    void add_abs_term(Functional xs, DyadicSet where);
    void add_linear_term(StepFunction dual_valued);

    const std::vector<AbsTerm>& abs_terms() const { return abs_terms_; }
    const std::vector<StepFunction>& linear_terms() const {
        return linear_terms_;
    }
    bool has_norm_term() const { return norm_term_; }
    int declared_dim() const { return declared_dim_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    /// The constant C with |g(omega, x)| <= C ||x||.
    double bound_constant() const;

    /// Integral of g(omega, x(omega)) over the whole space.
    double evaluate(const StepFunction& x) const;

private:
    std::vector<AbsTerm> abs_terms_;
    std::vector<StepFunction> linear_terms_;
    bool norm_term_ = false;
    int declared_dim_ = 0;
    std::string label_;
};

/// One metric series over the prefix with its pass threshold; pass means
/// the maximum over the tail window (last third) stays below the threshold.
struct TrendSeries {
    std::string name;
    std::vector<double> values;
    double threshold = 0.0;
    bool pass = false;
};

bool tail_window_pass(const std::vector<double>& values, double threshold);
double default_report_tolerance(std::size_t prefix); // 10 * 2^(-prefix/2)

std::vector<Functional> coordinate_family(SpaceKind kind, std::size_t count);

TrendSeries strong_trend(const FunctionSequence& seq, double tol);

struct PettisTrend {
    TrendSeries series;
    std::vector<PettisMethod> methods; // per member
};
/// Pettis norms of the deviations; falls back to sampled bounds (with the
/// supplied functional family as lower-bound witnesses) past the exact cap.
PettisTrend pettis_trend(const FunctionSequence& seq, double tol, int cap,
                         const std::vector<Functional>& fallback);

/// One series per test; each test's threshold is tol * max(1, C_test).
std::vector<TrendSeries> limited_trend(const FunctionSequence& seq,
                                       const std::vector<TestG>& tests,
                                       double tol);

std::vector<TrendSeries>
scalar_strong_trends(const FunctionSequence& seq,
                     const std::vector<Functional>& functionals, double tol);

/// Per (functional, eps): measure of {|x*(f_k - f_0)| > eps}; the threshold
/// tol/eps mirrors the Chebyshev bound so scalar-strong passing forces
/// these to pass.
std::vector<TrendSeries>
scalar_in_measure_trends(const FunctionSequence& seq,
                         const std::vector<Functional>& functionals,
                         const std::vector<double>& eps_grid, double tol);

std::vector<TrendSeries>
scalar_weak_trends(const FunctionSequence& seq,
                   const std::vector<Functional>& functionals,
                   const std::vector<DyadicSet>& test_sets, double tol);

/// Signed pairings against dual-valued step functions b.
std::vector<TrendSeries>
weak_surrogate_trend(const FunctionSequence& seq,
                     const std::vector<StepFunction>& duals, double tol);

std::vector<TrendSeries> delta_cauchy(const FunctionSequence& seq,
                                      const std::vector<DyadicSet>& test_sets,
                                      double tol);

std::vector<TrendSeries> in_measure_trend(const FunctionSequence& seq,
                                          const std::vector<double>& eps_grid,
                                          double tol);

struct LatticeFlags {
    bool strong = false;
    bool pettis = false;
    bool limited_surrogate = false;
    bool scalarly_strong = false;
    bool scalarly_in_measure = false;
    bool scalarly_weak = false;
    bool weak_surrogate = false;
    bool sigma_linf_surrogate = false;
    bool in_measure = false;
    bool uniformly_integrable = false;
};

struct ReportConfig {
    std::size_t prefix = 8;
    /// Negative means the default 10 * 2^(-prefix/2).
    double tol = -1.0;
    std::vector<double> eps_grid = default_eps_grid();
    int search_level = 3;
    int test_set_level = 2;
    int pettis_cap = 20;
    /// 0 means max(1, prefix / 2) coordinate functionals.
    std::size_t coordinate_functionals = 0;
    std::vector<Functional> extra_functionals;
    std::vector<TestG> extra_tests;
    std::vector<StepFunction> extra_duals;
    std::vector<double> ui_thresholds;  // default 2^0 .. 2^prefix
    std::vector<double> equi_deltas;    // default 2^-prefix .. 2^-1
    TightnessGrids tightness;           // empty grids mean defaults
    BitingSchedule biting;
    unsigned seed = 0; // echoed into the report; reserved for sampling
};

struct LatticeReport {
    std::string label;
    std::size_t prefix = 0;
    SpaceKind kind = SpaceKind::L2;
    double tol = 0.0;
    unsigned seed = 0;

    TrendSeries strong;
    PettisTrend pettis;
    std::vector<TrendSeries> limited;
    std::vector<TrendSeries> scalar_strong;
    std::vector<TrendSeries> scalar_in_measure;
    std::vector<TrendSeries> scalar_weak;
    std::vector<TrendSeries> weak;
    std::vector<TrendSeries> delta;
    std::vector<TrendSeries> in_measure;

    LatticeFlags flags;

    CriterionVerdict sequential_bocce;
    CriterionVerdict sequential_pettis_bocce;
    CriterionVerdict b0;
    CriterionVerdict b1;
    CriterionVerdict b2;
    CriterionVerdict set_bocce;
    CriterionVerdict small_bocce;

    ModulusCurve ui;
    ModulusCurve equi;
    ModulusCurve pettis_ui;

    std::vector<TightnessWitness> tightness;
    BitingDecomposition biting;
    Theorem45Report theorem45;
    Theorem48Report theorem48;

    /// The implication chains restricted to the computed flags:
    /// strong => pettis, limited; limited => scalarly strong;
    /// pettis => scalarly strong; scalarly strong => scalarly in measure.
    bool lattice_consistent() const;
};

/// Runs every trend, criterion, modulus and tightness/biting diagnostic on
/// the sequence. Requires a limit candidate.
LatticeReport lattice_report(const FunctionSequence& seq,
                             const ReportConfig& config = {});

} // namespace bocce
