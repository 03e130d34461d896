#pragma once

#include "perspace/critical.hpp"
#include "perspace/metric.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace perspace {

using Json = nlohmann::json;

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(const Grade& g) {
    Json out = Json::array();
    for (const auto& c : g) out.push_back(to_string(c));
    return out;
}

inline Json to_json(const Cornerpoint& c) {
    Json out{{"u", to_json(c.u)}, {"multiplicity", c.multiplicity}};
    if (c.v) {
        out["v"] = to_json(*c.v);
        out["persistence"] = to_string(*persistence_of(c));
    }
    return out;
}

// {"degree": k, "proper": [...], "at_infinity": [...]}
inline Json sample_to_json(int k, const std::vector<Cornerpoint>& points) {
    Json proper = Json::array(), infinity = Json::array();
    for (const auto& c : points) (c.proper() ? proper : infinity).push_back(to_json(c));
    return Json{{"degree", k}, {"proper", proper}, {"at_infinity", infinity}};
}

inline Json to_json(const RaySection& s) {
    Json out{{"degree", s.degree},
             {"u", to_json(s.base_u)},
             {"v", to_json(s.base_v)},
             {"e", to_json(s.direction)},
             {"proper", Json::array()},
             {"at_infinity", Json::array()}};
    for (const auto& c : s.proper) out["proper"].push_back(to_json(c));
    for (const auto& c : s.at_infinity) out["at_infinity"].push_back(to_json(c));
    return out;
}

inline Json to_json(const PointVerdict& v) {
    Json out = to_json(v.point);
    out["verdict"] = to_string(v.verdict);
    out["window_count"] = v.window_count;
    return out;
}

// {degree, epsilon, direction_fg, direction_gf, pass}
inline Json to_json(const StabilityReport& r) {
    Json fg = Json::array(), gf = Json::array();
    for (const auto& v : r.direction_fg) fg.push_back(to_json(v));
    for (const auto& v : r.direction_gf) gf.push_back(to_json(v));
    return Json{{"degree", r.degree},
                {"epsilon", to_string(r.epsilon)},
                {"direction_fg", fg},
                {"direction_gf", gf},
                {"pass", r.pass}};
}

// {k, u, u_prime, u_dprime, betti_prime, betti_dprime, rank}
inline Json to_json(const CriticalWitness& w) {
    return Json{{"k", w.degree},          {"u", to_json(w.u)},
                {"u_prime", to_json(w.u_prime)}, {"u_dprime", to_json(w.u_dprime)},
                {"betti_prime", w.betti_prime},  {"betti_dprime", w.betti_dprime},
                {"rank", w.rank}};
}

inline Json to_json(const CriticalReport& r) {
    Json out{{"cornerpoint", to_json(r.cornerpoint)}, {"pass", r.pass}};
    out["u_witness"] = r.u_witness ? to_json(*r.u_witness) : Json(nullptr);
    if (r.cornerpoint.proper()) out["v_witness"] = r.v_witness ? to_json(*r.v_witness) : Json(nullptr);
    return out;
}

inline std::string csv_grade(const Grade& g) {
    std::string out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) out += ';';
        out += to_string(g[i]);
    }
    return out;
}

// One row per cornerpoint; u and v coordinates are ';'-joined. Float columns are for plotting.
inline std::string cornerpoints_csv(const std::vector<Cornerpoint>& points) {
    std::ostringstream out;
    out << "degree,kind,u,v,multiplicity,persistence,u_float,v_float\n";
    auto floats = [](const Grade& g) {
        std::ostringstream s;
        for (std::size_t i = 0; i < g.size(); ++i) s << (i ? ";" : "") << to_double(g[i]);
        return s.str();
    };
    for (const auto& c : points) {
        out << c.degree << ',' << (c.proper() ? "proper" : "infinity") << ',' << csv_grade(c.u) << ','
            << (c.v ? csv_grade(*c.v) : "inf") << ',' << c.multiplicity << ','
            << (c.v ? to_string(*persistence_of(c)) : "inf") << ',' << floats(c.u) << ','
            << (c.v ? floats(*c.v) : "inf") << '\n';
    }
    return out.str();
}

} // namespace perspace
