#include "bocce/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"

namespace bocce {

using json = nlohmann::ordered_json;

double round12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string format12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {

json seqvec_json(const SeqVec& v) {
    json out = json::object();
    for (const auto& [k, x] : v.entries())
        out[std::to_string(k)] = round12(x);
    return out;
}

SeqVec seqvec_from(const json& j) {
    if (!j.is_object()) throw ParseError("SeqVec: expected an object");
    std::vector<std::pair<int, double>> entries;
    for (const auto& [key, val] : j.items()) {
        int k = 0;
        try {
            k = std::stoi(key);
        } catch (const std::exception&) {
            throw ParseError("SeqVec: bad coordinate key " + key);
        }
        if (!val.is_number()) throw ParseError("SeqVec: bad value");
        entries.emplace_back(k, val.get<double>());
    }
    return SeqVec(std::move(entries));
}

json functional_json(const Functional& f) {
    json out = json::object();
    out["primal"] = to_string(f.primal);
    out["coeffs"] = seqvec_json(f.coeffs);
    return out;
}

json step_function_json(const StepFunction& f) {
    json out = json::object();
    out["level"] = f.level();
    out["kind"] = to_string(f.kind());
    json vals = json::array();
    for (const auto& v : f.values()) vals.push_back(seqvec_json(v));
    out["values"] = std::move(vals);
    return out;
}

StepFunction step_function_from(const json& j) {
    if (!j.is_object() || !j.contains("level") || !j.contains("kind") ||
        !j.contains("values"))
        throw ParseError("StepFunction: expected {level, kind, values}");
    int level = j["level"].get<int>();
    SpaceKind kind = space_kind_from_string(j["kind"].get<std::string>());
    if (level < 0 || level > DyadicSet::kDefaultMaxLevel)
        throw ResolutionOverflow("StepFunction: level " +
                                 std::to_string(level) + " out of range");
    const auto& vals = j["values"];
    if (!vals.is_array() ||
        vals.size() != (std::size_t{1} << level))
        throw ParseError("StepFunction: value array must have 2^level entries");
    std::vector<SeqVec> values;
    values.reserve(vals.size());
    for (const auto& v : vals) values.push_back(seqvec_from(v));
    return StepFunction(level, kind, std::move(values));
}

json trend_json(const TrendSeries& s) {
    json out = json::object();
    out["name"] = s.name;
    json vals = json::array();
    for (double v : s.values) vals.push_back(round12(v));
    out["values"] = std::move(vals);
    out["threshold"] = round12(s.threshold);
    out["pass"] = s.pass;
    return out;
}

json trends_json(const std::vector<TrendSeries>& xs) {
    json out = json::array();
    for (const auto& s : xs) out.push_back(trend_json(s));
    return out;
}

json curve_json(const ModulusCurve& c) {
    json out = json::object();
    out["direction"] = c.direction == ModulusCurve::Direction::NonIncreasing
                           ? "non_increasing"
                           : "non_decreasing";
    json pts = json::array();
    for (std::size_t i = 0; i < c.thresholds.size(); ++i) {
        json p = json::object();
        p["threshold"] = round12(c.thresholds[i]);
        p["value"] = round12(c.values[i]);
        pts.push_back(std::move(p));
    }
    out["points"] = std::move(pts);
    return out;
}

json pettis_json(const PettisResult& r) {
    json out = json::object();
    out["value"] = round12(r.value);
    out["method"] = r.method == PettisMethod::Exact ? "exact" : "bounds";
    if (r.method == PettisMethod::Exact) {
        json w = json::array();
        for (int s : r.witness) w.push_back(s);
        out["witness"] = std::move(w);
    } else {
        out["lower"] = round12(r.lower);
        out["upper"] = round12(r.upper);
    }
    return out;
}

json witness_json(const SearchWitness& w) {
    json out = json::object();
    out["eps"] = round12(w.eps);
    out["subsequence"] = w.subsequence;
    if (w.base) out["base"] = w.base->to_text();
    out["found"] = w.found;
    if (std::isfinite(w.best_value)) out["best_value"] = round12(w.best_value);
    if (w.set) out["set"] = w.set->to_text();
    if (w.start_index) out["start_index"] = *w.start_index;
    if (!w.collection.empty()) {
        json c = json::array();
        for (const auto& s : w.collection) c.push_back(s.to_text());
        out["collection"] = std::move(c);
    }
    out["searched"] = w.searched;
    out["skipped"] = w.skipped;
    return out;
}

json verdict_json(const CriterionVerdict& v) {
    json out = json::object();
    out["status"] = to_string(v.status);
    out["search_level"] = v.search_level;
    json grid = json::array();
    for (double e : v.eps_grid) grid.push_back(round12(e));
    out["eps_grid"] = std::move(grid);
    out["note"] = v.note;
    json ws = json::array();
    for (const auto& w : v.witnesses) ws.push_back(witness_json(w));
    out["witnesses"] = std::move(ws);
    return out;
}

json tightness_json(const TightnessWitness& w) {
    json out = json::object();
    out["eps"] = round12(w.eps);
    out["mode"] = w.mode == TightnessWitness::Mode::ConstantBall
                      ? "constant_ball"
                      : "finite_set";
    out["found"] = w.found;
    if (w.mode == TightnessWitness::Mode::ConstantBall) {
        out["radius"] = round12(w.radius);
        out["dim"] = w.dim;
    } else {
        json vs = json::array();
        for (const auto& v : w.finite_set) vs.push_back(seqvec_json(v));
        out["finite_set"] = std::move(vs);
    }
    json es = json::array();
    for (const auto& e : w.escapes) es.push_back(e.to_text());
    out["escapes"] = std::move(es);
    out["max_escape"] = w.max_escape.to_text();
    return out;
}

json biting_json(const BitingDecomposition& b) {
    json out = json::object();
    json idx = json::array();
    for (auto i : b.indices) idx.push_back(i);
    out["indices"] = std::move(idx);
    json sets = json::array();
    for (const auto& s : b.sets) sets.push_back(s.to_text());
    out["sets"] = std::move(sets);
    json rm = json::array();
    for (const auto& m : b.removed_measure) rm.push_back(m.to_text());
    out["removed_measure"] = std::move(rm);
    json tl = json::array();
    for (double c : b.truncation_levels) tl.push_back(round12(c));
    out["truncation_levels"] = std::move(tl);
    json bl = json::array();
    for (double v : b.bitten_l1) bl.push_back(round12(v));
    out["bitten_l1"] = std::move(bl);
    out["bitten_ui"] = curve_json(b.bitten_ui);
    out["all_omega"] = b.all_omega;
    return out;
}

json theorem45_json(const Theorem45Report& r) {
    json out = json::object();
    out["weak_surrogate"] = r.weak_surrogate;
    out["bocce"] = to_string(r.bocce);
    out["tight"] = r.tight;
    out["strong"] = r.strong;
    out["conditions_met"] = r.conditions_met;
    out["decided"] = r.decided;
    out["agrees"] = r.agrees;
    out["note"] = r.note;
    return out;
}

json theorem48_json(const Theorem48Report& r) {
    json out = json::object();
    out["l1_bound"] = round12(r.l1_bound);
    out["tight"] = r.tight;
    out["bocce"] = to_string(r.bocce);
    out["bitten_strongly_cauchy"] = r.bitten_strongly_cauchy;
    out["bitten_cauchy_tail"] = round12(r.bitten_cauchy_tail);
    out["removed_last"] = r.removed_last.to_text();
    out["removed_vanishing"] = r.removed_vanishing;
    out["conditions_met"] = r.conditions_met;
    out["decided"] = r.decided;
    out["agrees"] = r.agrees;
    out["note"] = r.note;
    return out;
}

json report_json(const LatticeReport& r) {
    json out = json::object();
    out["label"] = r.label;
    out["prefix"] = r.prefix;
    out["kind"] = to_string(r.kind);
    out["tol"] = round12(r.tol);
    out["seed"] = r.seed;

    json flags = json::object();
    flags["strong"] = r.flags.strong;
    flags["pettis"] = r.flags.pettis;
    flags["limited_surrogate"] = r.flags.limited_surrogate;
    flags["scalarly_strong"] = r.flags.scalarly_strong;
    flags["scalarly_in_measure"] = r.flags.scalarly_in_measure;
    flags["scalarly_weak"] = r.flags.scalarly_weak;
    flags["weak_surrogate"] = r.flags.weak_surrogate;
    flags["sigma_linf_surrogate"] = r.flags.sigma_linf_surrogate;
    flags["in_measure"] = r.flags.in_measure;
    flags["uniformly_integrable"] = r.flags.uniformly_integrable;
    out["flags"] = std::move(flags);

    json trends = json::object();
    trends["strong"] = trend_json(r.strong);
    json pettis = trend_json(r.pettis.series);
    json methods = json::array();
    for (auto m : r.pettis.methods)
        methods.push_back(m == PettisMethod::Exact ? "exact" : "bounds");
    pettis["methods"] = std::move(methods);
    trends["pettis"] = std::move(pettis);
    trends["limited"] = trends_json(r.limited);
    trends["scalar_strong"] = trends_json(r.scalar_strong);
    trends["scalar_in_measure"] = trends_json(r.scalar_in_measure);
    trends["scalar_weak"] = trends_json(r.scalar_weak);
    trends["weak"] = trends_json(r.weak);
    trends["delta_cauchy"] = trends_json(r.delta);
    trends["in_measure"] = trends_json(r.in_measure);
    out["trends"] = std::move(trends);

    json criteria = json::object();
    criteria["sequential_bocce"] = verdict_json(r.sequential_bocce);
    criteria["sequential_pettis_bocce"] = verdict_json(r.sequential_pettis_bocce);
    criteria["b0"] = verdict_json(r.b0);
    criteria["b1"] = verdict_json(r.b1);
    criteria["b2"] = verdict_json(r.b2);
    criteria["set_bocce"] = verdict_json(r.set_bocce);
    criteria["small_bocce"] = verdict_json(r.small_bocce);
    out["criteria"] = std::move(criteria);

    json moduli = json::object();
    moduli["ui"] = curve_json(r.ui);
    moduli["equi"] = curve_json(r.equi);
    moduli["pettis_ui"] = curve_json(r.pettis_ui);
    out["moduli"] = std::move(moduli);

    json tight = json::array();
    for (const auto& w : r.tightness) tight.push_back(tightness_json(w));
    out["tightness"] = std::move(tight);
    out["biting"] = biting_json(r.biting);
    out["theorem45"] = theorem45_json(r.theorem45);
    out["theorem48"] = theorem48_json(r.theorem48);
    return out;
}

} // namespace

std::string to_json(const SeqVec& v) { return seqvec_json(v).dump(); }
std::string to_json(const Functional& f) { return functional_json(f).dump(); }
std::string to_json(const StepFunction& f) {
    return step_function_json(f).dump();
}

std::string to_json(const FunctionSequence& seq) {
    json out = json::object();
    out["label"] = seq.label;
    out["kind"] = to_string(seq.kind);
    json ms = json::array();
    for (const auto& f : seq.members) ms.push_back(step_function_json(f));
    out["members"] = std::move(ms);
    out["limit"] = seq.limit ? step_function_json(*seq.limit) : json();
    return out.dump();
}

std::string to_json(const PettisResult& r) { return pettis_json(r).dump(); }
std::string to_json(const ModulusCurve& c) { return curve_json(c).dump(); }
std::string to_json(const CriterionVerdict& v) { return verdict_json(v).dump(); }
std::string to_json(const TightnessWitness& w) {
    return tightness_json(w).dump();
}
std::string to_json(const std::vector<TightnessWitness>& ws) {
    json out = json::array();
    for (const auto& w : ws) out.push_back(tightness_json(w));
    return out.dump();
}
std::string to_json(const BitingDecomposition& b) {
    return biting_json(b).dump();
}
std::string to_json(const LatticeReport& r) { return report_json(r).dump(2); }

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ParseError("malformed JSON input");
    return j;
}

} // namespace

SeqVec seqvec_from_json(const std::string& text) {
    return seqvec_from(parse(text));
}

StepFunction step_function_from_json(const std::string& text) {
    return step_function_from(parse(text));
}

FunctionSequence sequence_from_json(const std::string& text) {
    json j = parse(text);
    FunctionSequence seq;
    if (j.is_array()) {
        if (j.empty()) throw ParseError("sequence: empty member array");
        for (const auto& m : j) seq.members.push_back(step_function_from(m));
        seq.kind = seq.members.front().kind();
        seq.limit = StepFunction::zero(seq.kind);
        seq.label = "user";
    } else if (j.is_object() && j.contains("members")) {
        for (const auto& m : j["members"])
            seq.members.push_back(step_function_from(m));
        if (seq.members.empty()) throw ParseError("sequence: no members");
        seq.kind = j.contains("kind")
                       ? space_kind_from_string(j["kind"].get<std::string>())
                       : seq.members.front().kind();
        if (j.contains("limit") && !j["limit"].is_null())
            seq.limit = step_function_from(j["limit"]);
        else
            seq.limit = StepFunction::zero(seq.kind);
        seq.label = j.contains("label") ? j["label"].get<std::string>()
                                        : std::string("user");
    } else {
        throw ParseError("sequence: expected an array or {members, limit}");
    }
    seq.validate();
    return seq;
}

std::string to_csv(const ModulusCurve& c) {
    std::string out = "threshold,value\n";
    for (std::size_t i = 0; i < c.thresholds.size(); ++i)
        out += format12(c.thresholds[i]) + "," + format12(c.values[i]) + "\n";
    return out;
}

namespace {

void csv_series(std::string& out, const TrendSeries& s) {
    for (std::size_t k = 0; k < s.values.size(); ++k)
        out += std::to_string(k + 1) + "," + s.name + "," +
               format12(s.values[k]) + "\n";
}

void csv_curve(std::string& out, const std::string& prefix,
               const ModulusCurve& c, const std::string& param) {
    for (std::size_t i = 0; i < c.thresholds.size(); ++i)
        out += "0," + prefix + "." + param + "=" + format12(c.thresholds[i]) +
               "," + format12(c.values[i]) + "\n";
}

} // namespace

std::string report_to_csv(const LatticeReport& r) {
    std::string out = "k,metric,value\n";
    csv_series(out, r.strong);
    csv_series(out, r.pettis.series);
    for (const auto& s : r.limited) csv_series(out, s);
    for (const auto& s : r.scalar_strong) csv_series(out, s);
    for (const auto& s : r.scalar_in_measure) csv_series(out, s);
    for (const auto& s : r.scalar_weak) csv_series(out, s);
    for (const auto& s : r.weak) csv_series(out, s);
    for (const auto& s : r.delta) csv_series(out, s);
    for (const auto& s : r.in_measure) csv_series(out, s);
    csv_curve(out, "modulus.ui", r.ui, "c");
    csv_curve(out, "modulus.equi", r.equi, "delta");
    csv_curve(out, "modulus.pettis_ui", r.pettis_ui, "c");
    return out;
}

} // namespace bocce
