#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bocce/errors.hpp"

namespace bocce {

/// Exact dyadic rational num / 2^log2_den, kept normalized (num odd or zero).
///
/// All set measures on the dyadic probability space are values of this type,
/// so measure arithmetic is exact; rounding enters only through value-space
/// doubles.
class DyadicRational {
public:
    DyadicRational() = default;
    DyadicRational(std::int64_t num, int log2_den);

    static DyadicRational zero() { return {}; }
    static DyadicRational one() { return {1, 0}; }

    std::int64_t num() const { return num_; }
    int log2_den() const { return log2_den_; }

    double to_double() const;
    std::string to_text() const; // "3/2^4", integers as "3"
    static DyadicRational from_text(const std::string& text);

    DyadicRational operator+(const DyadicRational& o) const;
    DyadicRational operator-(const DyadicRational& o) const;
    DyadicRational operator*(const DyadicRational& o) const;

    bool operator==(const DyadicRational& o) const {
        return num_ == o.num_ && log2_den_ == o.log2_den_;
    }
    bool operator!=(const DyadicRational& o) const { return !(*this == o); }
    bool operator<(const DyadicRational& o) const;
    bool operator<=(const DyadicRational& o) const { return *this < o || *this == o; }
    bool operator>(const DyadicRational& o) const { return o < *this; }
    bool operator>=(const DyadicRational& o) const { return o <= *this; }

private:
    std::int64_t num_ = 0;
    int log2_den_ = 0;
};

/// Finite union of dyadic atoms I^n_i = [(i-1)2^-n, i*2^-n) of [0,1) at a
/// fixed resolution level n. Immutable in spirit: operations return new sets.
class DyadicSet {
public:
    static constexpr int kDefaultMaxLevel = 20;

    explicit DyadicSet(int level); // empty set at the given level

    static DyadicSet empty(int level) { return DyadicSet(level); }
    static DyadicSet full(int level);
    /// Single atom by 0-based index (atom i covers [i*2^-n, (i+1)*2^-n)).
    static DyadicSet atom(int level, std::uint64_t index);
    /// The dyadic interval I^j_i in the 1-based indexing convention.
    static DyadicSet interval(int level, std::uint64_t i_one_based);

    int level() const { return level_; }
    std::uint64_t atom_count() const { return std::uint64_t{1} << level_; }

    bool contains(std::uint64_t atom_index) const;
    void set_atom(std::uint64_t atom_index, bool member);

    bool empty_set() const { return popcount() == 0; }
    std::uint64_t popcount() const;
    DyadicRational measure() const;

    /// Same set expressed at a finer resolution; measure is preserved.
    DyadicSet refined(int new_level, int max_level = kDefaultMaxLevel) const;

    std::vector<std::uint64_t> atom_indices() const;

    bool operator==(const DyadicSet& o) const;
    bool operator!=(const DyadicSet& o) const { return !(*this == o); }

    bool is_subset_of(const DyadicSet& o) const;
    bool disjoint_from(const DyadicSet& o) const;

    /// Text form "level:hexmask" used for JSON serialization; the mask is
    /// written most-significant digit first with atom 0 at bit 0.
    std::string to_text() const;
    static DyadicSet from_text(const std::string& text,
                               int max_level = kDefaultMaxLevel);

private:
    int level_;
    std::vector<std::uint64_t> words_;

    friend DyadicSet intersect(const DyadicSet&, const DyadicSet&);
    friend DyadicSet unite(const DyadicSet&, const DyadicSet&);
    friend DyadicSet complement(const DyadicSet&);
    friend DyadicSet set_difference(const DyadicSet&, const DyadicSet&);
};

DyadicSet intersect(const DyadicSet& a, const DyadicSet& b);
DyadicSet unite(const DyadicSet& a, const DyadicSet& b);
DyadicSet complement(const DyadicSet& s);
DyadicSet set_difference(const DyadicSet& a, const DyadicSet& b);

inline DyadicRational measure(const DyadicSet& s) { return s.measure(); }

/// All nonempty dyadic subsets of `base` at resolution `level`.
/// There are 2^t - 1 of them for t atoms; callers must bound t via
/// `max_atoms` (enumeration overflows otherwise).
std::vector<DyadicSet> subsets_of(const DyadicSet& base, int level,
                                  int max_atoms = 20);

/// Visits the same enumeration lazily, in increasing-mask order.
/// Returning false from the callback stops early.
void for_each_subset(const DyadicSet& base, int level, int max_atoms,
                     const std::function<bool(const DyadicSet&)>& fn);

/// Finite measurable partition of [0,1) into disjoint dyadic blocks at a
/// common level, optionally with one distinguished exceptional block A_0.
class DyadicPartition {
public:
    static DyadicPartition atoms(int level);
    static DyadicPartition of_blocks(std::vector<DyadicSet> blocks,
                                     std::optional<std::size_t> exceptional = {});

    const std::vector<DyadicSet>& blocks() const { return blocks_; }
    std::optional<std::size_t> exceptional_index() const { return exceptional_; }
    int level() const;

    bool is_exceptional(std::size_t i) const {
        return exceptional_ && *exceptional_ == i;
    }

private:
    std::vector<DyadicSet> blocks_;
    std::optional<std::size_t> exceptional_;
};

} // namespace bocce
