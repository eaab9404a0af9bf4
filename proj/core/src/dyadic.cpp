#include "bocce/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace bocce {

namespace {

std::uint64_t word_count(int level) {
    std::uint64_t atoms = std::uint64_t{1} << level;
    return (atoms + 63) / 64;
}

// Clears bits beyond the atom count in the last word.
void mask_tail(int level, std::vector<std::uint64_t>& words) {
    std::uint64_t atoms = std::uint64_t{1} << level;
    std::uint64_t rem = atoms % 64;
    if (rem != 0) words.back() &= (std::uint64_t{1} << rem) - 1;
}

} // namespace

DyadicRational::DyadicRational(std::int64_t num, int log2_den) {
    if (log2_den < 0 || log2_den > 62)
        throw Error("DyadicRational: log2 denominator out of range");
    while (num != 0 && num % 2 == 0 && log2_den > 0) {
        num /= 2;
        --log2_den;
    }
    if (num == 0) log2_den = 0;
    num_ = num;
    log2_den_ = log2_den;
}

double DyadicRational::to_double() const {
    return std::ldexp(static_cast<double>(num_), -log2_den_);
}

std::string DyadicRational::to_text() const {
    if (log2_den_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/2^" + std::to_string(log2_den_);
}

DyadicRational DyadicRational::from_text(const std::string& text) {
    auto slash = text.find("/2^");
    try {
        if (slash == std::string::npos)
            return DyadicRational(std::stoll(text), 0);
        return DyadicRational(std::stoll(text.substr(0, slash)),
                              std::stoi(text.substr(slash + 3)));
    } catch (const std::exception&) {
        throw ParseError("bad dyadic rational: " + text);
    }
}

DyadicRational DyadicRational::operator+(const DyadicRational& o) const {
    int d = std::max(log2_den_, o.log2_den_);
    std::int64_t a = num_ << (d - log2_den_);
    std::int64_t b = o.num_ << (d - o.log2_den_);
    return DyadicRational(a + b, d);
}

DyadicRational DyadicRational::operator-(const DyadicRational& o) const {
    int d = std::max(log2_den_, o.log2_den_);
    std::int64_t a = num_ << (d - log2_den_);
    std::int64_t b = o.num_ << (d - o.log2_den_);
    return DyadicRational(a - b, d);
}

DyadicRational DyadicRational::operator*(const DyadicRational& o) const {
    return DyadicRational(num_ * o.num_, log2_den_ + o.log2_den_);
}

bool DyadicRational::operator<(const DyadicRational& o) const {
    int d = std::max(log2_den_, o.log2_den_);
    return (num_ << (d - log2_den_)) < (o.num_ << (d - o.log2_den_));
}

DyadicSet::DyadicSet(int level) : level_(level) {
    if (level < 0) throw Error("DyadicSet: negative level");
    if (level > 30) throw ResolutionOverflow("DyadicSet: level too large");
    words_.assign(word_count(level), 0);
}

DyadicSet DyadicSet::full(int level) {
    DyadicSet s(level);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    mask_tail(level, s.words_);
    return s;
}

DyadicSet DyadicSet::atom(int level, std::uint64_t index) {
    DyadicSet s(level);
    s.set_atom(index, true);
    return s;
}

DyadicSet DyadicSet::interval(int level, std::uint64_t i_one_based) {
    if (i_one_based == 0) throw Error("DyadicSet::interval: index is 1-based");
    return atom(level, i_one_based - 1);
}

bool DyadicSet::contains(std::uint64_t i) const {
    return (words_[i / 64] >> (i % 64)) & 1;
}

void DyadicSet::set_atom(std::uint64_t i, bool member) {
    if (i >= atom_count()) throw Error("DyadicSet: atom index out of range");
    if (member)
        words_[i / 64] |= std::uint64_t{1} << (i % 64);
    else
        words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

std::uint64_t DyadicSet::popcount() const {
    std::uint64_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

DyadicRational DyadicSet::measure() const {
    return DyadicRational(static_cast<std::int64_t>(popcount()), level_);
}

DyadicSet DyadicSet::refined(int new_level, int max_level) const {
    if (new_level < level_)
        throw Error("DyadicSet::refined: cannot coarsen");
    if (new_level > max_level)
        throw ResolutionOverflow("DyadicSet::refined: level " +
                                 std::to_string(new_level) + " exceeds max " +
                                 std::to_string(max_level));
    if (new_level == level_) return *this;
    DyadicSet out(new_level);
    int shift = new_level - level_;
    for (std::uint64_t i = 0; i < atom_count(); ++i) {
        if (!contains(i)) continue;
        std::uint64_t first = i << shift;
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << shift); ++j)
            out.set_atom(first + j, true);
    }
    return out;
}

std::vector<std::uint64_t> DyadicSet::atom_indices() const {
    std::vector<std::uint64_t> out;
    out.reserve(popcount());
    for (std::uint64_t i = 0; i < atom_count(); ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

bool DyadicSet::operator==(const DyadicSet& o) const {
    int L = std::max(level_, o.level_);
    return refined(L, 30).words_ == o.refined(L, 30).words_;
}

bool DyadicSet::is_subset_of(const DyadicSet& o) const {
    return intersect(*this, o) == *this;
}

bool DyadicSet::disjoint_from(const DyadicSet& o) const {
    return intersect(*this, o).empty_set();
}

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

std::string DyadicSet::to_text() const {
    std::uint64_t atoms = atom_count();
    std::uint64_t digits = (atoms + 3) / 4;
    std::string mask(digits, '0');
    for (std::uint64_t d = 0; d < digits; ++d) {
        int v = 0;
        for (int b = 0; b < 4; ++b) {
            std::uint64_t i = d * 4 + b;
            if (i < atoms && contains(i)) v |= 1 << b;
        }
        // most significant digit first
        mask[digits - 1 - d] = kHexDigits[v];
    }
    return std::to_string(level_) + ":" + mask;
}

DyadicSet DyadicSet::from_text(const std::string& text, int max_level) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("bad dyadic set (expected level:hexmask): " + text);
    int level = 0;
    try {
        level = std::stoi(text.substr(0, colon));
    } catch (const std::exception&) {
        throw ParseError("bad dyadic set level: " + text);
    }
    if (level < 0 || level > max_level)
        throw ResolutionOverflow("dyadic set level " + std::to_string(level) +
                                 " exceeds max " + std::to_string(max_level));
    std::string mask = text.substr(colon + 1);
    DyadicSet s(level);
    std::uint64_t atoms = s.atom_count();
    std::uint64_t digits = (atoms + 3) / 4;
    if (mask.empty() || mask.size() > digits)
        throw ParseError("bad dyadic set mask width: " + text);
    for (std::uint64_t d = 0; d < mask.size(); ++d) {
        int v = hex_value(mask[mask.size() - 1 - d]);
        if (v < 0) throw ParseError("bad hex digit in dyadic set: " + text);
        for (int b = 0; b < 4; ++b) {
            std::uint64_t i = d * 4 + b;
            if (v & (1 << b)) {
                if (i >= atoms)
                    throw ParseError("mask bit beyond atom count: " + text);
                s.set_atom(i, true);
            }
        }
    }
    return s;
}

DyadicSet intersect(const DyadicSet& a, const DyadicSet& b) {
    int L = std::max(a.level(), b.level());
    DyadicSet x = a.refined(L, 30);
    DyadicSet y = b.refined(L, 30);
    for (std::size_t i = 0; i < x.words_.size(); ++i) x.words_[i] &= y.words_[i];
    return x;
}

DyadicSet unite(const DyadicSet& a, const DyadicSet& b) {
    int L = std::max(a.level(), b.level());
    DyadicSet x = a.refined(L, 30);
    DyadicSet y = b.refined(L, 30);
    for (std::size_t i = 0; i < x.words_.size(); ++i) x.words_[i] |= y.words_[i];
    return x;
}

DyadicSet complement(const DyadicSet& s) {
    DyadicSet x = s;
    for (auto& w : x.words_) w = ~w;
    mask_tail(x.level(), x.words_);
    return x;
}

DyadicSet set_difference(const DyadicSet& a, const DyadicSet& b) {
    return intersect(a, complement(b.refined(std::max(a.level(), b.level()), 30)));
}

void for_each_subset(const DyadicSet& base, int level, int max_atoms,
                     const std::function<bool(const DyadicSet&)>& fn) {
    DyadicSet b = base.refined(std::max(level, base.level()), 30);
    if (b.level() != level && base.level() > level)
        throw Error("for_each_subset: base finer than requested level");
    auto atoms = b.atom_indices();
    if (atoms.size() > static_cast<std::size_t>(max_atoms))
        throw EnumerationOverflow(
            "subset enumeration over " + std::to_string(atoms.size()) +
            " atoms exceeds cap " + std::to_string(max_atoms));
    std::uint64_t total = (std::uint64_t{1} << atoms.size()) - 1;
    for (std::uint64_t mask = 1; mask <= total; ++mask) {
        DyadicSet s(level);
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) s.set_atom(atoms[i], true);
        if (!fn(s)) return;
    }
}

std::vector<DyadicSet> subsets_of(const DyadicSet& base, int level,
                                  int max_atoms) {
    std::vector<DyadicSet> out;
    for_each_subset(base, level, max_atoms, [&](const DyadicSet& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

DyadicPartition DyadicPartition::atoms(int level) {
    std::vector<DyadicSet> blocks;
    blocks.reserve(std::size_t{1} << level);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << level); ++i)
        blocks.push_back(DyadicSet::atom(level, i));
    return of_blocks(std::move(blocks));
}

DyadicPartition DyadicPartition::of_blocks(std::vector<DyadicSet> blocks,
                                           std::optional<std::size_t> exceptional) {
    if (blocks.empty()) throw Error("DyadicPartition: no blocks");
    int L = 0;
    for (const auto& b : blocks) L = std::max(L, b.level());
    DyadicSet seen = DyadicSet::empty(L);
    DyadicRational total = DyadicRational::zero();
    for (auto& b : blocks) {
        b = b.refined(L, 30);
        if (!seen.disjoint_from(b)) throw Error("DyadicPartition: blocks overlap");
        seen = unite(seen, b);
        total = total + b.measure();
    }
    if (total != DyadicRational::one())
        throw Error("DyadicPartition: blocks do not cover [0,1)");
    if (exceptional && *exceptional >= blocks.size())
        throw Error("DyadicPartition: exceptional index out of range");
    DyadicPartition p;
    p.blocks_ = std::move(blocks);
    p.exceptional_ = exceptional;
    return p;
}

int DyadicPartition::level() const { return blocks_.front().level(); }

} // namespace bocce
