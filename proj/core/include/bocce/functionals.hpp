#pragma once

#include <vector>

#include "bocce/step_function.hpp"

namespace bocce {

enum class PettisMethod { Exact, Bounds };

/// Result of a Pettis norm computation.
///
/// For Exact results the witness holds one sign per distinct nonzero-value
/// block of f (first-occurrence order) and
/// `pettis_witness_value(f, witness) == value`.
struct PettisResult {
    double value = 0.0;
    std::vector<int> witness;
    PettisMethod method = PettisMethod::Exact;
    double lower = 0.0;
    double upper = 0.0;
};

/// Exact Pettis norm sup_{x* in the dual unit ball} of the integral of
/// |x*(f)|.
///
/// Writing f = sum_i v_i 1_{B_i} over blocks of distinct values, the
/// supremum equals max over sign patterns s of || sum_i s_i mu(B_i) v_i ||:
/// pushing the sup over the ball inside turns each |x*(v_i)| into a sign
/// choice, and the sup of a linear functional over the ball is the primal
/// norm. Sign patterns are enumerated per coupled component (blocks whose
/// supports intersect); support-disjoint components maximize independently.
/// For l1 (dual ball = hypercube) the enumeration runs over extreme dual
/// coordinates instead, and for linf over single dual coordinates, which
/// keeps the paper-sized instances exact and fast.
///
/// `cap` bounds the per-component enumeration size; exceeding it raises
/// EnumerationOverflow advising pettis_norm_bounds.
PettisResult pettis_norm_exact(const StepFunction& f, int cap = 20);

/// Recomputes || sum_i s_i mu(B_i) v_i || from a sign witness.
double pettis_witness_value(const StepFunction& f,
                            const std::vector<int>& signs);

/// Sandwich bounds: lower = best sampled functional (renormalized into the
/// dual unit ball), upper = the l1 norm.
PettisResult pettis_norm_bounds(const StepFunction& f,
                                const std::vector<Functional>& functionals);

/// Sampled monotone map threshold -> modulus value.
struct ModulusCurve {
    enum class Direction { NonIncreasing, NonDecreasing };
    std::vector<double> thresholds;
    std::vector<double> values;
    Direction direction = Direction::NonIncreasing;

    double last_value() const { return values.empty() ? 0.0 : values.back(); }
};

/// Uniform-integrability modulus: c -> sup over members of the mass of
/// ||f|| on [||f|| >= c]. Non-increasing.
ModulusCurve ui_modulus(const FunctionSequence& seq,
                        std::vector<double> thresholds);

/// Equi-integrability modulus: delta -> sup over members of the largest
/// mass of ||f|| on a set of measure <= delta. The worst set is found
/// exactly per member by filling atoms in decreasing order of ||value||,
/// taking a fractional piece of the last atom. Non-decreasing.
ModulusCurve equi_modulus(const FunctionSequence& seq,
                          std::vector<double> deltas);

/// UI modulus of the scalarized family {x*(f) : member f, supplied x*}.
/// A lower bound for the Pettis uniform integrability modulus, whose true
/// sup runs over the whole dual ball.
ModulusCurve pettis_ui_modulus(const FunctionSequence& seq,
                               const std::vector<Functional>& functionals,
                               std::vector<double> thresholds);

/// Exact measure of {omega : ||f - g|| > eps}.
DyadicRational measure_deviation(const StepFunction& f, const StepFunction& g,
                                 double eps);

} // namespace bocce
