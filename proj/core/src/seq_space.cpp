#include "bocce/seq_space.hpp"

#include <algorithm>
#include <cmath>

namespace bocce {

SpaceKind dual(SpaceKind kind) {
    switch (kind) {
    case SpaceKind::L1: return SpaceKind::LInf;
    case SpaceKind::L2: return SpaceKind::L2;
    case SpaceKind::LInf: return SpaceKind::L1;
    }
    throw Error("dual: bad kind");
}

std::string to_string(SpaceKind kind) {
    switch (kind) {
    case SpaceKind::L1: return "l1";
    case SpaceKind::L2: return "l2";
    case SpaceKind::LInf: return "linf";
    }
    throw Error("to_string: bad kind");
}

SpaceKind space_kind_from_string(const std::string& s) {
    if (s == "l1") return SpaceKind::L1;
    if (s == "l2") return SpaceKind::L2;
    if (s == "linf") return SpaceKind::LInf;
    throw ParseError("unknown space kind: " + s);
}

SeqVec::SeqVec(std::vector<std::pair<int, double>> entries)
    : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, double>> merged;
    for (const auto& [k, v] : entries_) {
        if (!merged.empty() && merged.back().first == k)
            merged.back().second += v;
        else
            merged.emplace_back(k, v);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return e.second == 0.0; }),
                 merged.end());
    entries_ = std::move(merged);
}

int SeqVec::max_index() const {
    return entries_.empty() ? 0 : entries_.back().first;
}

double SeqVec::operator[](int index) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), index,
        [](const auto& e, int k) { return e.first < k; });
    return (it != entries_.end() && it->first == index) ? it->second : 0.0;
}

void SeqVec::set(int index, double value) {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), index,
        [](const auto& e, int k) { return e.first < k; });
    if (it != entries_.end() && it->first == index) {
        if (value == 0.0)
            entries_.erase(it);
        else
            it->second = value;
    } else if (value != 0.0) {
        entries_.insert(it, {index, value});
    }
}

SeqVec SeqVec::operator+(const SeqVec& o) const {
    std::vector<std::pair<int, double>> out;
    out.reserve(entries_.size() + o.entries_.size());
    auto a = entries_.begin();
    auto b = o.entries_.begin();
    while (a != entries_.end() || b != o.entries_.end()) {
        if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == entries_.end() || b->first < a->first) {
            out.push_back(*b++);
        } else {
            double v = a->second + b->second;
            if (v != 0.0) out.emplace_back(a->first, v);
            ++a;
            ++b;
        }
    }
    SeqVec r;
    r.entries_ = std::move(out);
    return r;
}

SeqVec SeqVec::operator-(const SeqVec& o) const { return *this + o * -1.0; }

SeqVec SeqVec::operator*(double scale) const {
    if (scale == 0.0) return SeqVec();
    SeqVec r;
    r.entries_ = entries_;
    for (auto& e : r.entries_) e.second *= scale;
    return r;
}

bool SeqVec::support_within(int dim) const { return max_index() <= dim; }

double SeqVec::dot(const SeqVec& o) const {
    double s = 0.0;
    auto a = entries_.begin();
    auto b = o.entries_.begin();
    while (a != entries_.end() && b != o.entries_.end()) {
        if (a->first < b->first)
            ++a;
        else if (b->first < a->first)
            ++b;
        else
            s += (a++)->second * (b++)->second;
    }
    return s;
}

double norm(const SeqVec& v, SpaceKind kind) {
    double s = 0.0;
    switch (kind) {
    case SpaceKind::L1:
        for (const auto& [k, x] : v.entries()) s += std::abs(x);
        return s;
    case SpaceKind::L2:
        for (const auto& [k, x] : v.entries()) s += x * x;
        return std::sqrt(s);
    case SpaceKind::LInf:
        for (const auto& [k, x] : v.entries()) s = std::max(s, std::abs(x));
        return s;
    }
    throw Error("norm: bad kind");
}

double dual_norm(const Functional& f) { return norm(f.coeffs, dual(f.primal)); }

double pair(const Functional& f, const SeqVec& v, SpaceKind ambient) {
    if (ambient != f.primal)
        throw KindMismatch("pair: functional acts on " + to_string(f.primal) +
                           " but vector lives in " + to_string(ambient));
    return f.coeffs.dot(v);
}

double pair(const Functional& f, const SeqVec& v) { return f.coeffs.dot(v); }

} // namespace bocce
