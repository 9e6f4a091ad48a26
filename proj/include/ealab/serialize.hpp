#pragma once

#include <json.hpp>

#include "ealab/eala_checks.hpp"
#include "ealab/torus.hpp"

namespace ealab {

using Json = nlohmann::json;

inline Json to_json(Rat const& r) { return rat_str(r); }

/// {"conductor": M, "coeffs": ["p/q", ...]}
inline Json to_json(Cyc const& c) {
    Json j;
    j["conductor"] = c.conductor();
    Json coeffs = Json::array();
    for (auto const& x : c.coeffs()) coeffs.push_back(rat_str(x));
    j["coeffs"] = coeffs;
    return j;
}

inline Cyc cyc_from_json(Json const& j) {
    if (j.is_string()) return Cyc(rat_parse(j.get<std::string>()));
    if (j.is_number_integer()) return Cyc(j.get<long>());
    unsigned m = j.at("conductor").get<unsigned>();
    Cyc::Coeffs coeffs;
    for (auto const& x : j.at("coeffs")) coeffs.push_back(rat_parse(x.get<std::string>()));
    return Cyc(m, std::move(coeffs));
}

inline Json to_json(QRat const& q) {
    if (q.is_cyclotomic()) return to_json(q.cyclotomic_part());
    auto poly = [](QPoly const& p) {
        Json terms = Json::array();
        for (auto const& [e, c] : p.terms()) {
            Json t;
            t["exp"] = e;
            t["coeff"] = to_json(c);
            terms.push_back(t);
        }
        return terms;
    };
    Json j;
    j["num"] = poly(q.num());
    j["den"] = poly(q.den());
    return j;
}

inline Json to_json(IntVec const& v) {
    Json j = Json::array();
    for (auto x : v) j.push_back(x);
    return j;
}

inline IntVec intvec_from_json(Json const& j) {
    IntVec v;
    for (auto const& x : j) v.push_back(x.get<int32_t>());
    return v;
}

/// {"family": "BC", "rank": 2}
inline Json to_json(RootSystemId id) {
    Json j;
    j["family"] = family_name(id.fam);
    j["rank"] = id.rank;
    return j;
}

inline Json to_json(Lattice const& l) {
    Json rows = Json::array();
    for (auto const& r : l.basis()) {
        Json row = Json::array();
        for (auto const& x : r) row.push_back(static_cast<long>(x.get_si()));
        rows.push_back(row);
    }
    Json j;
    j["ambient"] = l.ambient();
    j["hnf_rows"] = rows;
    return j;
}

inline Json to_json(ReflectionSubspace const& s) {
    Json j;
    j["modulus"] = to_json(s.modulus());
    Json reps = Json::array();
    for (auto const& r : s.reps()) reps.push_back(to_json(r));
    j["reps"] = reps;
    j["flavor"] = flavor_name(s.flavor());
    return j;
}

inline Json to_json(ExtensionDatum const& ed) {
    Json j;
    j["system"] = to_json(ed.system);
    j["n"] = ed.n;
    j["zero"] = to_json(ed.zero);
    j["sh"] = to_json(ed.sh);
    if (ed.lg) j["lg"] = to_json(*ed.lg);
    if (ed.div) j["div"] = to_json(*ed.div);
    return j;
}

inline Json to_json(CheckReport const& c) {
    Json j;
    j["pass"] = c.pass;
    j["window"] = c.window;
    j["certification"] = c.certification;
    Json w = Json::array();
    for (auto const& x : c.witnesses) w.push_back(x);
    j["witnesses"] = w;
    Json info = Json::object();
    for (auto const& [k, v] : c.info) info[k] = v;
    j["info"] = info;
    return j;
}

inline Json to_json(SuiteReport const& s) {
    Json j;
    j["pass"] = s.pass();
    Json checks;
    for (auto const& c : s.checks) checks[c.axiom] = to_json(c);
    j["checks"] = checks;
    return j;
}

}  // namespace ealab
