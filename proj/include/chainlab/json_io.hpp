#pragma once

#include <json.hpp>

#include "chainlab/bounds.hpp"
#include "chainlab/chains.hpp"
#include "chainlab/extremal.hpp"
#include "chainlab/oracle.hpp"
#include "chainlab/set_family.hpp"
#include "chainlab/shift.hpp"

namespace chainlab {

// Reports serialize with decimal-string integers and exact fraction strings;
// ordered_json keeps key order fixed so identical runs are byte-identical.
using Json = nlohmann::ordered_json;

inline Json to_json(const std::vector<ElementSet>& sets) {
    Json arr = Json::array();
    for (ElementSet s : sets) arr.push_back(set_to_string(s));
    return arr;
}

inline Json to_json(const SetFamily& fam) {
    Json j;
    j["n"] = fam.n();
    j["members"] = to_json(fam.members());
    return j;
}

inline Json to_json(const ChainCountReport& rep) {
    Json j;
    j["n"] = rep.n;
    j["k"] = rep.k;
    j["total"] = rep.total.str();
    j["c1"] = rep.c1.str();
    j["c2"] = rep.c2.str();
    Json owners = Json::object();
    for (const auto& [set, count] : rep.per_owner) owners[set_to_string(set)] = count.str();
    j["per_owner"] = owners;
    return j;
}

inline Json to_json(const BoundParams& p) {
    Json j;
    j["n"] = p.n;
    if (p.k != 0) j["k"] = p.k;
    if (p.s) j["s"] = *p.s;
    if (p.t) j["t"] = *p.t;
    if (p.t1) j["t1"] = *p.t1;
    if (p.t2) j["t2"] = *p.t2;
    if (p.r) j["r"] = p.r->str();
    if (p.a) j["a"] = *p.a;
    return j;
}

inline Json to_json(const BoundReport& rep) {
    Json j;
    j["name"] = rep.name;
    j["value_fraction"] = fraction_string(rep.value);
    j["value_decimal"] = decimal_string(rep.value);
    j["params"] = to_json(rep.params);
    j["regime_ok"] = rep.regime_ok;
    return j;
}

inline Json to_json(const ExtremalCertificate& cert) {
    Json j;
    j["satisfied"] = cert.satisfied;
    j["r"] = cert.r.str();
    j["conditions"] = Json::array({cert.condition_results[0], cert.condition_results[1],
                                   cert.condition_results[2], cert.condition_results[3]});
    j["violating_sets"] = to_json(cert.violating_sets);
    return j;
}

inline Json to_json(const LymAudit& a) {
    Json j;
    j["n"] = a.n;
    j["k"] = a.k;
    j["n_factorial"] = a.n_factorial.str();
    j["sum_set_weights"] = a.sum_set_weights.str();
    j["chain_weight_total"] = a.chain_weight_total.str();
    j["chain_weight_c1"] = a.chain_weight_c1.str();
    j["chain_weight_c2"] = a.chain_weight_c2.str();
    Json ineqs = Json::array();
    for (const auto& q : a.inequalities) {
        Json e;
        e["name"] = q.name;
        e["lhs"] = q.lhs.str();
        e["rhs"] = q.rhs.str();
        e["margin"] = q.margin.str();
        e["holds"] = q.holds;
        ineqs.push_back(e);
    }
    j["inequalities"] = ineqs;
    if (a.perm_enumerated) j["perm_prefix_total"] = a.perm_prefix_total.str();
    return j;
}

inline Json to_json(const ShiftStep& step) {
    Json j;
    j["removed"] = to_json(step.removed);
    j["inserted"] = to_json(step.inserted);
    j["ell"] = step.ell;
    j["m"] = step.m.str();
    j["complemented"] = step.complemented;
    j["count_after"] = step.count_after.str();
    return j;
}

inline Json to_json(const ShiftTrace& trace) {
    Json j;
    j["initial_count"] = trace.initial_count.str();
    if (trace.stripped) {
        Json s;
        s["removed"] = to_json(trace.strip_removed);
        s["inserted"] = to_json(trace.strip_inserted);
        s["count_after"] = trace.count_after_strip.str();
        j["strip"] = s;
    } else {
        j["strip"] = nullptr;
    }
    Json steps = Json::array();
    for (const auto& st : trace.steps) steps.push_back(to_json(st));
    j["steps"] = steps;
    j["final_count"] = trace.final_count.str();
    return j;
}

inline Json to_json(const OracleResult& res) {
    Json j;
    j["n"] = res.n;
    j["s"] = res.s;
    j["k"] = res.k;
    j["minimum"] = res.minimum.str();
    j["witness_total"] = res.witness_total;
    Json wits = Json::array();
    for (const SetFamily& w : res.witnesses) wits.push_back(to_json(w.members()));
    j["witnesses"] = wits;
    j["families_examined"] = res.families_examined;
    j["complete"] = res.complete;
    return j;
}

inline Json to_json(const ConjectureReport& rep) {
    Json j;
    j["n"] = rep.n;
    j["k"] = rep.k;
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
        Json r;
        r["s"] = row.s;
        r["oracle_min"] = row.oracle_min.str();
        r["conjectured"] = row.conjectured.str();
        r["equal"] = row.equal;
        rows.push_back(r);
    }
    j["rows"] = rows;
    j["ok"] = rep.ok;
    if (rep.counterexample) {
        j["counterexample"] = to_json(rep.counterexample->members());
    }
    return j;
}

inline Json to_json(const IffReport& rep) {
    Json j;
    j["n"] = rep.n;
    j["s"] = rep.s;
    j["optima_total"] = rep.optima_total;
    j["certified_total"] = rep.certified_total;
    j["optimal_implies_certified"] = rep.optimal_implies_certified;
    j["certified_implies_optimal"] = rep.certified_implies_optimal;
    j["ok"] = rep.ok;
    Json a = Json::array();
    for (const SetFamily& f : rep.optimal_not_certified) a.push_back(to_json(f.members()));
    j["optimal_not_certified"] = a;
    Json b = Json::array();
    for (const SetFamily& f : rep.certified_not_optimal) b.push_back(to_json(f.members()));
    j["certified_not_optimal"] = b;
    return j;
}

}  // namespace chainlab
