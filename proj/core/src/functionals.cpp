#include "bocce/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace bocce {

namespace {

struct WeightedBlock {
    SeqVec value;
    double weight; // exact dyadic measure of the block
};

std::vector<WeightedBlock> weighted_blocks(const StepFunction& f) {
    std::vector<WeightedBlock> out;
    for (const auto& b : distinct_value_blocks(f, /*include_zero=*/false))
        out.push_back({b.value, b.set.measure().to_double()});
    return out;
}

// Groups block indices into components whose value supports intersect.
std::vector<std::vector<std::size_t>>
support_components(const std::vector<WeightedBlock>& blocks) {
    std::vector<std::size_t> parent(blocks.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    std::map<int, std::size_t> coord_owner;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (const auto& [c, v] : blocks[i].value.entries()) {
            auto it = coord_owner.find(c);
            if (it == coord_owner.end())
                coord_owner.emplace(c, i);
            else
                parent[find(i)] = find(it->second);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

// Lexicographic key for sign tie-breaking: sign j maps to bit (len-1-j),
// so the smallest key is the lexicographically smallest pattern with
// +1 ordered before -1.
std::uint64_t lex_key(std::uint64_t mask, std::size_t len) {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < len; ++j)
        if (mask & (std::uint64_t{1} << j)) key |= std::uint64_t{1} << (len - 1 - j);
    return key;
}

// Exact max over sign patterns of || sum s_i w_i || within one coupled
// component, for the given norm kind. The first block's sign is pinned to
// +1 (global flips preserve the norm).
double maximize_component_signs(const std::vector<WeightedBlock>& blocks,
                                const std::vector<std::size_t>& comp,
                                SpaceKind kind, int cap,
                                std::vector<int>& signs_out) {
    std::size_t m = comp.size();
    if (static_cast<int>(m) > cap)
        throw EnumerationOverflow(
            "pettis_norm_exact: coupled block component of size " +
            std::to_string(m) + " exceeds cap " + std::to_string(cap) +
            "; use pettis_norm_bounds");
    double best = -1.0;
    std::uint64_t best_mask = 0, best_key = 0;
    std::uint64_t total = std::uint64_t{1} << (m - 1);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        SeqVec u = blocks[comp[0]].value * blocks[comp[0]].weight;
        for (std::size_t j = 1; j < m; ++j) {
            double s = (mask & (std::uint64_t{1} << (j - 1))) ? -1.0 : 1.0;
            u = u + blocks[comp[j]].value * (s * blocks[comp[j]].weight);
        }
        double val = norm(u, kind);
        std::uint64_t key = lex_key(mask << 1, m);
        if (val > best || (val == best && key < best_key)) {
            best = val;
            best_mask = mask;
            best_key = key;
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        bool neg = j > 0 && (best_mask & (std::uint64_t{1} << (j - 1)));
        signs_out[comp[j]] = neg ? -1 : 1;
    }
    return best;
}

// Exact sup over the linf unit ball (dual of l1) via its extreme points:
// sign vectors over the union support of one coupled component.
double maximize_component_dual_cube(const std::vector<WeightedBlock>& blocks,
                                    const std::vector<std::size_t>& comp,
                                    int cap, std::vector<int>& signs_out) {
    std::vector<int> coords;
    for (auto i : comp)
        for (const auto& [c, v] : blocks[i].value.entries()) coords.push_back(c);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    std::size_t d = coords.size();
    if (static_cast<int>(d) > cap)
        throw EnumerationOverflow(
            "pettis_norm_exact: coupled dual-coordinate component of size " +
            std::to_string(d) + " exceeds cap " + std::to_string(cap) +
            "; use pettis_norm_bounds");
    double best = -1.0;
    std::uint64_t best_mask = 0, best_key = 0;
    std::uint64_t total = std::uint64_t{1} << (d == 0 ? 0 : d - 1);
    std::vector<double> xi(d);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t j = 0; j < d; ++j)
            xi[j] = (j > 0 && (mask & (std::uint64_t{1} << (j - 1)))) ? -1.0 : 1.0;
        double val = 0.0;
        for (auto i : comp) {
            double p = 0.0;
            for (const auto& [c, v] : blocks[i].value.entries()) {
                std::size_t j = std::lower_bound(coords.begin(), coords.end(), c) -
                                coords.begin();
                p += xi[j] * v;
            }
            val += blocks[i].weight * std::abs(p);
        }
        std::uint64_t key = lex_key(mask << 1, d == 0 ? 1 : d);
        if (val > best || (val == best && key < best_key)) {
            best = val;
            best_mask = mask;
            best_key = key;
        }
    }
    for (std::size_t j = 0; j < d; ++j)
        xi[j] = (j > 0 && (best_mask & (std::uint64_t{1} << (j - 1)))) ? -1.0 : 1.0;
    for (auto i : comp) {
        double p = 0.0;
        for (const auto& [c, v] : blocks[i].value.entries()) {
            std::size_t j =
                std::lower_bound(coords.begin(), coords.end(), c) - coords.begin();
            p += xi[j] * v;
        }
        signs_out[i] = p < 0.0 ? -1 : 1;
    }
    return best;
}

} // namespace

PettisResult pettis_norm_exact(const StepFunction& f, int cap) {
    auto blocks = weighted_blocks(f);
    PettisResult r;
    r.method = PettisMethod::Exact;
    r.witness.assign(blocks.size(), 1);
    if (blocks.empty()) return r;

    if (f.kind() == SpaceKind::LInf) {
        // Dual ball is the l1 ball; its extreme points are +-e_c.
        std::map<int, double> per_coord;
        for (const auto& b : blocks)
            for (const auto& [c, v] : b.value.entries())
                per_coord[c] += b.weight * std::abs(v);
        int best_coord = 0;
        double best = 0.0;
        for (const auto& [c, mass] : per_coord)
            if (mass > best) {
                best = mass;
                best_coord = c;
            }
        r.value = best;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            r.witness[i] = blocks[i].value[best_coord] < 0.0 ? -1 : 1;
        r.lower = r.upper = r.value;
        return r;
    }

    auto comps = support_components(blocks);
    double value = 0.0;
    for (const auto& comp : comps) {
        if (f.kind() == SpaceKind::L2) {
            double v = maximize_component_signs(blocks, comp, SpaceKind::L2,
                                                cap, r.witness);
            value += v * v;
        } else {
            value += maximize_component_dual_cube(blocks, comp, cap, r.witness);
        }
    }
    r.value = f.kind() == SpaceKind::L2 ? std::sqrt(value) : value;
    r.lower = r.upper = r.value;
    return r;
}

double pettis_witness_value(const StepFunction& f,
                            const std::vector<int>& signs) {
    auto blocks = weighted_blocks(f);
    if (signs.size() != blocks.size())
        throw Error("pettis_witness_value: sign count does not match blocks");
    SeqVec u;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        u = u + blocks[i].value * (blocks[i].weight * signs[i]);
    return norm(u, f.kind());
}

PettisResult pettis_norm_bounds(const StepFunction& f,
                                const std::vector<Functional>& functionals) {
    PettisResult r;
    r.method = PettisMethod::Bounds;
    r.upper = l1_norm(f);
    r.lower = 0.0;
    for (const auto& xs : functionals) {
        Functional g = xs;
        double dn = dual_norm(g);
        if (dn > 1.0) g.coeffs = g.coeffs * (1.0 / dn);
        if (dn == 0.0) continue;
        r.lower = std::max(r.lower, l1_norm(scalarize(f, g)));
    }
    r.value = r.lower;
    return r;
}

namespace {

std::vector<double> sorted_unique(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

double tail_mass(const StepFunction& f, double c) {
    double w = DyadicRational(1, f.level()).to_double();
    double s = 0.0;
    for (const auto& v : f.values()) {
        double n = norm(v, f.kind());
        if (n >= c) s += n * w;
    }
    return s;
}

} // namespace

ModulusCurve ui_modulus(const FunctionSequence& seq,
                        std::vector<double> thresholds) {
    ModulusCurve curve;
    curve.direction = ModulusCurve::Direction::NonIncreasing;
    curve.thresholds = sorted_unique(std::move(thresholds));
    for (double c : curve.thresholds) {
        double sup = 0.0;
        for (const auto& f : seq.members) sup = std::max(sup, tail_mass(f, c));
        curve.values.push_back(sup);
    }
    return curve;
}

ModulusCurve equi_modulus(const FunctionSequence& seq,
                          std::vector<double> deltas) {
    ModulusCurve curve;
    curve.direction = ModulusCurve::Direction::NonDecreasing;
    curve.thresholds = sorted_unique(std::move(deltas));

    struct MemberProfile {
        double atom_measure;
        std::vector<double> norms;    // descending
        std::vector<double> mass_pfx; // mass_pfx[i] = sum of first i masses
    };
    std::vector<MemberProfile> profiles;
    for (const auto& f : seq.members) {
        MemberProfile p;
        p.atom_measure = DyadicRational(1, f.level()).to_double();
        for (const auto& v : f.values()) p.norms.push_back(norm(v, f.kind()));
        std::sort(p.norms.begin(), p.norms.end(), std::greater<>());
        p.mass_pfx.assign(p.norms.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.norms.size(); ++i)
            p.mass_pfx[i + 1] = p.mass_pfx[i] + p.norms[i] * p.atom_measure;
        profiles.push_back(std::move(p));
    }

    for (double delta : curve.thresholds) {
        double sup = 0.0;
        for (const auto& p : profiles) {
            double d = std::max(0.0, delta);
            auto full = static_cast<std::size_t>(d / p.atom_measure);
            full = std::min(full, p.norms.size());
            double v = p.mass_pfx[full];
            if (full < p.norms.size())
                v += (d - static_cast<double>(full) * p.atom_measure) *
                     p.norms[full];
            sup = std::max(sup, v);
        }
        curve.values.push_back(sup);
    }
    return curve;
}

ModulusCurve pettis_ui_modulus(const FunctionSequence& seq,
                               const std::vector<Functional>& functionals,
                               std::vector<double> thresholds) {
    FunctionSequence family;
    family.kind = SpaceKind::L1;
    family.label = "scalarized";
    for (const auto& f : seq.members) {
        for (const auto& xs : functionals) {
            Functional g = xs;
            double dn = dual_norm(g);
            if (dn > 1.0) g.coeffs = g.coeffs * (1.0 / dn);
            family.members.push_back(scalarize(f, g));
        }
    }
    return ui_modulus(family, std::move(thresholds));
}

DyadicRational measure_deviation(const StepFunction& f, const StepFunction& g,
                                 double eps) {
    if (eps <= 0.0) throw Error("measure_deviation: eps must be positive");
    if (f.kind() != g.kind())
        throw KindMismatch("measure_deviation: kinds differ");
    StepFunction d = f - g;
    std::int64_t count = 0;
    for (const auto& v : d.values())
        if (norm(v, d.kind()) > eps) ++count;
    return DyadicRational(count, d.level());
}

} // namespace bocce
