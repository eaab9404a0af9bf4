#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bocce/dyadic.hpp"
#include "bocce/seq_space.hpp"

namespace bocce {

/// Vector-valued simple function on the dyadic space: one SeqVec per atom
/// at a fixed level, all living in the same ambient space kind.
class StepFunction {
public:
    StepFunction(int level, SpaceKind kind);
    StepFunction(int level, SpaceKind kind, std::vector<SeqVec> values);

    static StepFunction zero(SpaceKind kind) { return StepFunction(0, kind); }
    static StepFunction constant(const SeqVec& value, SpaceKind kind,
                                 int level = 0);
    /// Real-valued functions are represented on coordinate 1 in kind L1.
    static StepFunction real_valued(int level, std::vector<double> values);

    int level() const { return level_; }
    SpaceKind kind() const { return kind_; }
    std::uint64_t atom_count() const { return std::uint64_t{1} << level_; }

    const SeqVec& value(std::uint64_t atom_index) const;
    void set_value(std::uint64_t atom_index, SeqVec v);
    const std::vector<SeqVec>& values() const { return values_; }

    StepFunction refined(int new_level,
                         int max_level = DyadicSet::kDefaultMaxLevel) const;

    StepFunction operator+(const StepFunction& o) const;
    StepFunction operator-(const StepFunction& o) const;
    StepFunction operator*(double scale) const;

    bool operator==(const StepFunction& o) const;

private:
    int level_;
    SpaceKind kind_;
    std::vector<SeqVec> values_;
};

inline StepFunction operator*(double scale, const StepFunction& f) {
    return f * scale;
}

/// Bochner integral over A (A and f auto-refined to a common level).
SeqVec integral(const StepFunction& f, const DyadicSet& A);

/// Average value m_A(f) = integral / measure, with the 0/0 = 0 convention.
SeqVec average(const StepFunction& f, const DyadicSet& A);

double l1_norm(const StepFunction& f);
double l1_norm(const StepFunction& f, const DyadicSet& A);

/// omega -> ||f(omega)||, as a real-valued step function.
StepFunction pointwise_norm(const StepFunction& f);

/// Keeps atom values with ||value|| <= bound, zeroes the rest.
StepFunction truncate(const StepFunction& f, double bound);

/// Conditional expectation relative to the finite algebra generated by pi.
StepFunction cond_expectation(const StepFunction& f, const DyadicPartition& pi);

/// omega -> x*(f(omega)), as a real-valued step function.
StepFunction scalarize(const StepFunction& f, const Functional& xs);

/// Decomposition of f into blocks of constant value (first-occurrence order).
struct ValueBlock {
    SeqVec value;
    DyadicSet set;
};
std::vector<ValueBlock> distinct_value_blocks(const StepFunction& f,
                                              bool include_zero = true);

/// Partition of [0,1) into the constancy blocks of f.
DyadicPartition constancy_partition(const StepFunction& f);

/// Indexed finite prefix (f_1, ..., f_K) plus an optional limit candidate.
struct FunctionSequence {
    SpaceKind kind = SpaceKind::L2;
    std::vector<StepFunction> members;
    std::optional<StepFunction> limit;
    std::string label;

    std::size_t size() const { return members.size(); }
    const StepFunction& member(std::size_t k_one_based) const;
    /// f_k - f_0 at a common level; requires a limit.
    StepFunction deviation(std::size_t k_one_based) const;
    void validate() const;
};

} // namespace bocce
