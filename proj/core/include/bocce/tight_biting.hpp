#pragma once

#include <string>
#include <vector>

#include "bocce/functionals.hpp"
#include "bocce/oscillation.hpp"
#include "bocce/step_function.hpp"

namespace bocce {

/// Constant compact witness set K_{R,d} = {x : ||x|| <= R, support within
/// the first d coordinates}, or an explicit finite value set. The
/// multifunction of the tightness definition is deliberately restricted to
/// omega-independent sets; graph-measurable multifunctions have no finite
/// representation here.
struct TightnessWitness {
    enum class Mode { ConstantBall, FiniteSet };

    double eps = 0.0;
    Mode mode = Mode::ConstantBall;
    bool found = false;
    double radius = 0.0;
    int dim = 0;
    std::vector<SeqVec> finite_set;
    std::vector<DyadicRational> escapes; // per member
    DyadicRational max_escape;
};

struct TightnessGrids {
    std::vector<double> eps_grid;
    std::vector<double> radius_grid;
    std::vector<int> dim_grid;
};

/// eps grid 2^-1..2^-6; radii {0, 1, 2, ..., 2^prefix}; dims 0..prefix-1.
TightnessGrids default_tightness_grids(std::size_t prefix);

/// Exact measure of {omega : f(omega) outside K_{R,d}}.
DyadicRational ball_escape(const StepFunction& f, double radius, int dim);
/// Exact measure of {omega : f(omega) not among the listed values}.
DyadicRational finite_set_escape(const StepFunction& f,
                                 const std::vector<SeqVec>& values);
/// Zeroes the atoms escaping K_{R,d}.
StepFunction restrict_to_ball(const StepFunction& f, double radius, int dim);

/// For each eps in the grid, the smallest (dim, then radius) constant-ball
/// witness with max escape <= eps; when none exists in the grids the
/// witness reports found = false with the minimal achieved escape.
std::vector<TightnessWitness> tightness_search(const FunctionSequence& seq,
                                               const TightnessGrids& grids);

/// Finite-set witness built from the limit's values plus per-member
/// corrections (values of members whose escape still exceeds eps).
TightnessWitness finite_set_witness(const FunctionSequence& seq, double eps);

struct BitingSchedule {
    /// Truncation levels grow as c_n = n * max l1 norm / target.
    double target = 1.0;
    /// When the prefix's UI modulus at the last truncation level vanishes,
    /// nothing needs biting and every A_n is the whole space.
    double ui_tolerance = 1e-12;
};

/// Constructive biting decomposition: increasing sets A_n on which the
/// truncated members stay bounded, with diagnostics for the bitten parts
/// (f_n 1_{A_n}) and the removed parts.
struct BitingDecomposition {
    std::vector<std::size_t> indices; // surrogate subsequence (identity)
    std::vector<DyadicSet> sets;      // increasing A_n
    std::vector<DyadicRational> removed_measure; // mu(complement of A_n)
    std::vector<double> truncation_levels;
    std::vector<double> bitten_l1; // l1 norms of f_n 1_{A_n}
    ModulusCurve bitten_ui;        // UI modulus of the bitten family
    bool all_omega = false;
};

BitingDecomposition biting_decompose(const FunctionSequence& seq,
                                     const BitingSchedule& schedule = {});

/// Empirical cross-check of the strong-convergence characterization:
/// weak surrogate + sequential Bocce + tightness against the strong trend.
/// Inputs are precomputed by the caller (the lattice report wires them up);
/// the check only reports agreement at resolution, never proof.
struct Theorem45Report {
    bool weak_surrogate = false;
    CriterionStatus bocce = CriterionStatus::Inconclusive;
    bool tight = false;
    bool strong = false;
    bool conditions_met = false;
    bool decided = false;
    bool agrees = false;
    std::string note;
};

Theorem45Report theorem45_check(bool weak_surrogate, CriterionStatus bocce,
                                bool tight_at_every_eps, bool strong);

/// Biting-lemma composite: bounded + tight + sequential Bocce against the
/// strong Cauchy behaviour of the bitten parts and the vanishing of the
/// removed measures.
struct Theorem48Report {
    double l1_bound = 0.0;
    bool tight = false;
    CriterionStatus bocce = CriterionStatus::Inconclusive;
    bool bitten_strongly_cauchy = false;
    double bitten_cauchy_tail = 0.0;
    DyadicRational removed_last;
    bool removed_vanishing = false;
    bool conditions_met = false;
    bool decided = false;
    bool agrees = false;
    std::string note;
};

Theorem48Report theorem48_check(const FunctionSequence& seq,
                                CriterionStatus bocce,
                                bool tight_at_every_eps,
                                const BitingDecomposition& bite, double tol);

} // namespace bocce
