#pragma once

#include <sstream>
#include <string>

#include "json.hpp"

#include "golomb/certify.hpp"
#include "golomb/designs.hpp"
#include "golomb/ruler.hpp"
#include "golomb/search.hpp"

namespace golomb {

// The interchange unit for all CLI commands; field order is fixed, residues
// ascend.
inline json ruler_to_json(const Ruler& r) {
    json j;
    j["v"] = r.modulus;
    j["k"] = r.order();
    j["residues"] = r.marks;
    return j;
}

inline Ruler ruler_from_json(const json& j) {
    if (!j.is_object() || !j.contains("v") || !j.contains("k") || !j.contains("residues"))
        throw std::invalid_argument("ruler record needs fields v, k, residues");
    Ruler r;
    r.modulus = j.at("v").get<i64>();
    r.marks = j.at("residues").get<std::vector<i64>>();
    if (j.at("k").get<i64>() != r.order())
        throw std::invalid_argument("ruler record: k does not match residue count");
    require_well_formed(r);
    return r;
}

inline json ooc_to_json(const OocCode& c) {
    json j;
    j["v"] = c.v;
    j["lambda_a"] = c.lambda_a;
    j["lambda_c"] = c.lambda_c;
    j["blocks"] = c.blocks;
    return j;
}

inline OocCode ooc_from_json(const json& j) {
    if (!j.is_object() || !j.contains("v") || !j.contains("blocks"))
        throw std::invalid_argument("ooc record needs fields v and blocks");
    OocCode c;
    c.v = j.at("v").get<i64>();
    c.lambda_a = j.value("lambda_a", i64(1));
    c.lambda_c = j.value("lambda_c", i64(1));
    c.blocks = j.at("blocks").get<std::vector<std::vector<i64>>>();
    require_well_formed(c);
    return c;
}

inline json certificate_to_json(const Certificate& c) {
    json j;
    j["verdict"] = c.verdict == Certificate::Verdict::Nonexistent ? "nonexistent" : "inconclusive";
    j["rule"] = c.rule;
    j["trace"] = c.trace;
    return j;
}

inline Certificate certificate_from_json(const json& j) {
    Certificate c;
    std::string v = j.at("verdict").get<std::string>();
    if (v == "nonexistent") c.verdict = Certificate::Verdict::Nonexistent;
    else if (v == "inconclusive") c.verdict = Certificate::Verdict::Inconclusive;
    else throw std::invalid_argument("certificate: unknown verdict");
    c.rule = j.at("rule").get<std::string>();
    c.trace = j.value("trace", json::object());
    return c;
}

inline const char* status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::Exhausted: return "exhausted";
        default: return "budget-exceeded";
    }
}

inline SearchStatus status_from_name(const std::string& s) {
    if (s == "found") return SearchStatus::Found;
    if (s == "exhausted") return SearchStatus::Exhausted;
    if (s == "budget-exceeded") return SearchStatus::BudgetExceeded;
    throw std::invalid_argument("unknown search status");
}

inline json outcome_to_json(const SearchOutcome& o) {
    json j;
    j["status"] = status_name(o.status);
    j["witness"] = o.witness ? ruler_to_json(*o.witness) : json(nullptr);
    j["nodes_visited"] = o.nodes_visited;
    j["min_length_found"] = o.min_length_found ? json(*o.min_length_found) : json(nullptr);
    j["num_canonical"] = o.num_canonical ? json(*o.num_canonical) : json(nullptr);
    return j;
}

inline SearchOutcome outcome_from_json(const json& j) {
    SearchOutcome o;
    o.status = status_from_name(j.at("status").get<std::string>());
    if (!j.at("witness").is_null()) o.witness = ruler_from_json(j.at("witness"));
    o.nodes_visited = j.at("nodes_visited").get<u64>();
    if (!j.at("min_length_found").is_null()) o.min_length_found = j.at("min_length_found").get<i64>();
    if (!j.at("num_canonical").is_null()) o.num_canonical = j.at("num_canonical").get<u64>();
    return o;
}

inline json spectrum_to_json(const Spectrum& s) {
    json j;
    j["k"] = s.k;
    j["sporadic"] = s.sporadic;
    j["tail_start"] = s.tail_start;
    j["complete"] = s.complete;
    j["best_length"] = s.best_length;
    j["best_ruler"] = s.best_ruler ? ruler_to_json(*s.best_ruler) : json(nullptr);
    json trail = json::array();
    for (const auto& e : s.trail) {
        json t;
        t["v"] = e.v;
        t["status"] = status_name(e.status);
        t["witness"] = e.witness ? ruler_to_json(*e.witness) : json(nullptr);
        t["nodes"] = e.nodes;
        trail.push_back(std::move(t));
    }
    j["trail"] = std::move(trail);
    return j;
}

inline Spectrum spectrum_from_json(const json& j) {
    Spectrum s;
    s.k = j.at("k").get<i64>();
    s.sporadic = j.at("sporadic").get<std::vector<i64>>();
    s.tail_start = j.at("tail_start").get<i64>();
    s.complete = j.at("complete").get<bool>();
    s.best_length = j.at("best_length").get<i64>();
    if (!j.at("best_ruler").is_null()) s.best_ruler = ruler_from_json(j.at("best_ruler"));
    for (const auto& t : j.at("trail")) {
        SpectrumEntry e;
        e.v = t.at("v").get<i64>();
        e.status = status_from_name(t.at("status").get<std::string>());
        if (!t.at("witness").is_null()) e.witness = ruler_from_json(t.at("witness"));
        e.nodes = t.at("nodes").get<u64>();
        s.trail.push_back(std::move(e));
    }
    return s;
}

inline json ooc_report_to_json(const OocReport& r) {
    json j;
    j["valid"] = r.valid;
    j["worst_autocorrelation"] = {{"value", r.worst_auto},
                                  {"shift", r.worst_auto_shift},
                                  {"block", r.worst_auto_block}};
    j["worst_crosscorrelation"] = {{"value", r.worst_cross},
                                   {"shift", r.worst_cross_shift},
                                   {"blocks", {r.worst_cross_pair.first, r.worst_cross_pair.second}}};
    j["optimal"] = r.optimal;
    return j;
}

inline std::string marks_to_string(const std::vector<i64>& marks) {
    std::ostringstream os;
    for (std::size_t i = 0; i < marks.size(); ++i) {
        if (i) os << ' ';
        os << marks[i];
    }
    return os.str();
}

/// CSV with columns v,k,status,residues,length: one row per scanned
/// modulus, closed by a lemma-double row carrying the clamp ruler.
inline std::string spectrum_to_csv(const Spectrum& s, bool header = true) {
    std::ostringstream os;
    if (header) os << "v,k,status,residues,length\n";
    for (const auto& e : s.trail) {
        os << e.v << ',' << s.k << ',';
        if (e.status == SearchStatus::Found) {
            os << "ruler," << marks_to_string(e.witness->marks) << ',' << e.witness->length();
        } else if (e.status == SearchStatus::Exhausted) {
            os << "nonexistent,,";
        } else {
            os << "budget-exceeded,,";
        }
        os << '\n';
    }
    if (s.complete && s.best_ruler) {
        os << (s.trail.empty() ? s.tail_start : s.trail.back().v + 1) << ',' << s.k
           << ",lemma-double," << marks_to_string(s.best_ruler->marks) << ',' << s.best_length
           << '\n';
    }
    return os.str();
}

} // namespace golomb
