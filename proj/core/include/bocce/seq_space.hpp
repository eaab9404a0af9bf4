#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "bocce/errors.hpp"

namespace bocce {

/// Norm selector for the value space: finite-support slices of l1, l2, linf.
enum class SpaceKind { L1, L2, LInf };

SpaceKind dual(SpaceKind kind);
std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& s);

/// Finite-support real sequence, stored as sorted (index, value) pairs with
/// all stored values nonzero. Coordinate indices are 1-based (e_1, e_2, ...).
class SeqVec {
public:
    SeqVec() = default;

    static SeqVec unit(int index) { return SeqVec({{index, 1.0}}); }
    explicit SeqVec(std::vector<std::pair<int, double>> entries);

    const std::vector<std::pair<int, double>>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }
    int max_index() const; // 0 for the zero vector

    double operator[](int index) const;
    void set(int index, double value);

    SeqVec operator+(const SeqVec& o) const;
    SeqVec operator-(const SeqVec& o) const;
    SeqVec operator*(double scale) const;
    SeqVec operator-() const { return *this * -1.0; }

    bool operator==(const SeqVec& o) const { return entries_ == o.entries_; }
    bool operator!=(const SeqVec& o) const { return !(*this == o); }
    /// Lexicographic order on the entry list; used for deterministic grouping.
    bool operator<(const SeqVec& o) const { return entries_ < o.entries_; }

    /// True if every support index is <= dim.
    bool support_within(int dim) const;

    /// Coordinatewise product-sum; the raw bilinear pairing.
    double dot(const SeqVec& o) const;

private:
    std::vector<std::pair<int, double>> entries_;
};

inline SeqVec operator*(double scale, const SeqVec& v) { return v * scale; }

double norm(const SeqVec& v, SpaceKind kind);

/// A dual-space element: coefficient sequence plus the primal space it acts on.
struct Functional {
    SeqVec coeffs;
    SpaceKind primal = SpaceKind::L2;

    static Functional coordinate(int index, SpaceKind primal) {
        return {SeqVec::unit(index), primal};
    }
};

double dual_norm(const Functional& f);

/// Duality pairing <x*, v>; `ambient` must match the functional's primal kind.
double pair(const Functional& f, const SeqVec& v, SpaceKind ambient);
/// Unchecked variant for contexts where the ambient kind is structural.
double pair(const Functional& f, const SeqVec& v);

} // namespace bocce
