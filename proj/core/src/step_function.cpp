#include "bocce/step_function.hpp"

#include <algorithm>
#include <map>

namespace bocce {

StepFunction::StepFunction(int level, SpaceKind kind)
    : level_(level), kind_(kind) {
    if (level < 0 || level > 30) throw ResolutionOverflow("StepFunction: bad level");
    values_.assign(std::size_t{1} << level, SeqVec());
}

StepFunction::StepFunction(int level, SpaceKind kind, std::vector<SeqVec> values)
    : level_(level), kind_(kind), values_(std::move(values)) {
    if (level < 0 || level > 30) throw ResolutionOverflow("StepFunction: bad level");
    if (values_.size() != (std::size_t{1} << level))
        throw Error("StepFunction: value array length must be 2^level");
}

StepFunction StepFunction::constant(const SeqVec& value, SpaceKind kind,
                                    int level) {
    StepFunction f(level, kind);
    for (std::uint64_t i = 0; i < f.atom_count(); ++i) f.values_[i] = value;
    return f;
}

StepFunction StepFunction::real_valued(int level, std::vector<double> values) {
    if (values.size() != (std::size_t{1} << level))
        throw Error("StepFunction::real_valued: bad value count");
    StepFunction f(level, SpaceKind::L1);
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] != 0.0) f.values_[i] = SeqVec({{1, values[i]}});
    return f;
}

const SeqVec& StepFunction::value(std::uint64_t i) const {
    if (i >= values_.size()) throw Error("StepFunction: atom index out of range");
    return values_[i];
}

void StepFunction::set_value(std::uint64_t i, SeqVec v) {
    if (i >= values_.size()) throw Error("StepFunction: atom index out of range");
    values_[i] = std::move(v);
}

StepFunction StepFunction::refined(int new_level, int max_level) const {
    if (new_level < level_) throw Error("StepFunction::refined: cannot coarsen");
    if (new_level > max_level)
        throw ResolutionOverflow("StepFunction::refined: level " +
                                 std::to_string(new_level) + " exceeds max " +
                                 std::to_string(max_level));
    if (new_level == level_) return *this;
    StepFunction out(new_level, kind_);
    int shift = new_level - level_;
    for (std::uint64_t i = 0; i < atom_count(); ++i)
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << shift); ++j)
            out.values_[(i << shift) + j] = values_[i];
    return out;
}

StepFunction StepFunction::operator+(const StepFunction& o) const {
    if (kind_ != o.kind_)
        throw KindMismatch("StepFunction: cannot add " + to_string(kind_) +
                           " and " + to_string(o.kind_));
    int L = std::max(level_, o.level_);
    StepFunction a = refined(L, 30);
    StepFunction b = o.refined(L, 30);
    for (std::uint64_t i = 0; i < a.atom_count(); ++i)
        a.values_[i] = a.values_[i] + b.values_[i];
    return a;
}

StepFunction StepFunction::operator-(const StepFunction& o) const {
    return *this + o * -1.0;
}

StepFunction StepFunction::operator*(double scale) const {
    StepFunction out = *this;
    for (auto& v : out.values_) v = v * scale;
    return out;
}

bool StepFunction::operator==(const StepFunction& o) const {
    if (kind_ != o.kind_) return false;
    int L = std::max(level_, o.level_);
    return refined(L, 30).values_ == o.refined(L, 30).values_;
}

SeqVec integral(const StepFunction& f, const DyadicSet& A) {
    int L = std::max(f.level(), A.level());
    StepFunction g = f.refined(L, 30);
    DyadicSet S = A.refined(L, 30);
    SeqVec sum;
    for (std::uint64_t i = 0; i < g.atom_count(); ++i)
        if (S.contains(i)) sum = sum + g.value(i);
    return sum * DyadicRational(1, L).to_double();
}

SeqVec average(const StepFunction& f, const DyadicSet& A) {
    DyadicRational m = A.measure();
    if (m.num() == 0) return SeqVec(); // 0/0 convention
    return integral(f, A) * (1.0 / m.to_double());
}

double l1_norm(const StepFunction& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s += norm(v, f.kind());
    return s * DyadicRational(1, f.level()).to_double();
}

double l1_norm(const StepFunction& f, const DyadicSet& A) {
    int L = std::max(f.level(), A.level());
    StepFunction g = f.refined(L, 30);
    DyadicSet S = A.refined(L, 30);
    double s = 0.0;
    for (std::uint64_t i = 0; i < g.atom_count(); ++i)
        if (S.contains(i)) s += norm(g.value(i), g.kind());
    return s * DyadicRational(1, L).to_double();
}

StepFunction pointwise_norm(const StepFunction& f) {
    std::vector<double> vals(f.atom_count());
    for (std::uint64_t i = 0; i < f.atom_count(); ++i)
        vals[i] = norm(f.value(i), f.kind());
    return StepFunction::real_valued(f.level(), std::move(vals));
}

StepFunction truncate(const StepFunction& f, double bound) {
    if (bound < 0.0) throw Error("truncate: bound must be non-negative");
    StepFunction out = f;
    for (std::uint64_t i = 0; i < f.atom_count(); ++i)
        if (norm(f.value(i), f.kind()) > bound) out.set_value(i, SeqVec());
    return out;
}

StepFunction cond_expectation(const StepFunction& f, const DyadicPartition& pi) {
    int L = std::max(f.level(), pi.level());
    StepFunction out(L, f.kind());
    for (const auto& block : pi.blocks()) {
        SeqVec m = average(f, block);
        DyadicSet b = block.refined(L, 30);
        for (std::uint64_t i = 0; i < out.atom_count(); ++i)
            if (b.contains(i)) out.set_value(i, m);
    }
    return out;
}

StepFunction scalarize(const StepFunction& f, const Functional& xs) {
    if (xs.primal != f.kind())
        throw KindMismatch("scalarize: functional acts on " +
                           to_string(xs.primal) + " but function maps into " +
                           to_string(f.kind()));
    std::vector<double> vals(f.atom_count());
    for (std::uint64_t i = 0; i < f.atom_count(); ++i)
        vals[i] = pair(xs, f.value(i));
    return StepFunction::real_valued(f.level(), std::move(vals));
}

std::vector<ValueBlock> distinct_value_blocks(const StepFunction& f,
                                              bool include_zero) {
    std::vector<ValueBlock> blocks;
    std::map<SeqVec, std::size_t> index;
    for (std::uint64_t i = 0; i < f.atom_count(); ++i) {
        const SeqVec& v = f.value(i);
        if (!include_zero && v.is_zero()) continue;
        auto it = index.find(v);
        if (it == index.end()) {
            index.emplace(v, blocks.size());
            blocks.push_back({v, DyadicSet::atom(f.level(), i)});
        } else {
            blocks[it->second].set.set_atom(i, true);
        }
    }
    return blocks;
}

DyadicPartition constancy_partition(const StepFunction& f) {
    auto blocks = distinct_value_blocks(f, true);
    std::vector<DyadicSet> sets;
    sets.reserve(blocks.size());
    for (auto& b : blocks) sets.push_back(std::move(b.set));
    return DyadicPartition::of_blocks(std::move(sets));
}

const StepFunction& FunctionSequence::member(std::size_t k) const {
    if (k == 0 || k > members.size())
        throw Error("FunctionSequence: member index is 1-based and in range");
    return members[k - 1];
}

StepFunction FunctionSequence::deviation(std::size_t k) const {
    if (!limit) throw Error("FunctionSequence: no limit candidate present");
    return member(k) - *limit;
}

void FunctionSequence::validate() const {
    for (const auto& f : members)
        if (f.kind() != kind)
            throw KindMismatch("FunctionSequence: member kind differs");
    if (limit && limit->kind() != kind)
        throw KindMismatch("FunctionSequence: limit kind differs");
}

} // namespace bocce
