#pragma once

#include "perspace/complex.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace perspace {

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

inline VertexId parse_vertex_id(const std::string& tok, const std::string& where) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        throw ParseError(where + ": invalid vertex id '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(where + ": invalid vertex id '" + tok + "'");
    return v;
}

inline Rational json_rational(const nlohmann::json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>()), 10));
    throw ParseError(where + ": grade entries must be integers or rational strings");
}

inline Grade json_grade(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": grade must be an array");
    std::vector<Rational> coords;
    for (const auto& c : j) coords.push_back(json_rational(c, where));
    return Grade(std::move(coords));
}

inline MultiFilteredComplex parse_complex_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("JSON syntax error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n")) throw ParseError("JSON complex needs field 'n'");
    auto n = doc["n"].get<long long>();
    if (n < 1) throw ParseError("parameter count must be at least 1");
    std::string mode = doc.value("mode", doc.contains("vertices") ? "vertex" : "explicit");

    if (mode == "vertex") {
        std::map<VertexId, Grade> vgrades;
        for (const auto& v : doc.value("vertices", nlohmann::json::array())) {
            std::string where = "vertex entry";
            auto id = v.at("id").get<VertexId>();
            if (!vgrades.emplace(id, json_grade(v.at("grade"), where)).second)
                throw InputError("vertex " + std::to_string(id) + " graded twice");
        }
        std::vector<Simplex> simplices;
        for (const auto& s : doc.value("simplices", nlohmann::json::array())) {
            if (!s.is_array()) throw ParseError("vertex mode: simplices must be id arrays (mixed modes?)");
            simplices.emplace_back(s.get<std::vector<VertexId>>());
        }
        auto lifted = lower_star_extend(vgrades, simplices, static_cast<std::size_t>(n));
        return make_complex(lifted.parameter_count(), lifted.simplices(), lifted.grades());
    }
    if (mode != "explicit") throw ParseError("unknown mode '" + mode + "'");
    if (doc.contains("vertices")) throw ParseError("explicit mode does not take 'vertices' (mixed modes)");
    std::vector<Simplex> simplices;
    std::vector<Grade> grades;
    for (const auto& s : doc.value("simplices", nlohmann::json::array())) {
        if (!s.is_object()) throw ParseError("explicit mode: simplices must be {vertices, grade} objects");
        simplices.emplace_back(s.at("vertices").get<std::vector<VertexId>>());
        grades.push_back(json_grade(s.at("grade"), "simplex entry"));
    }
    return make_complex(static_cast<std::size_t>(n), std::move(simplices), std::move(grades));
}

} // namespace detail

// Parses the line-oriented complex format (or JSON when the text starts with '{').
//
//   n 2
//   mode vertex          # optional; inferred from the first content line
//   v 0 0 0              # vertex mode: v <id> <g_1> ... <g_n>
//   s 0 1                #              s <id> ...
//   s 0 1 | 2 1          # explicit mode: s <id>... | <g_1> ... <g_n>
inline MultiFilteredComplex parse_complex(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return detail::parse_complex_json(text);

    std::istringstream in(text);
    std::optional<long long> n;
    enum class Mode { Unknown, Vertex, Explicit } mode = Mode::Unknown;
    std::map<VertexId, Grade> vgrades;
    std::vector<Simplex> simplices;
    std::vector<Grade> grades;

    auto read_grade = [&](const std::vector<std::string>& toks, std::size_t from,
                          const std::string& where) {
        if (!n) throw ParseError(where + ": grade before 'n' header");
        if (toks.size() - from != static_cast<std::size_t>(*n))
            throw ParseError(where + ": expected " + std::to_string(*n) + " grade values, got " +
                             std::to_string(toks.size() - from));
        std::vector<Rational> coords;
        for (std::size_t i = from; i < toks.size(); ++i) {
            try {
                coords.push_back(parse_rational(toks[i]));
            } catch (const ParseError& e) {
                throw ParseError(where + ": " + e.what());
            }
        }
        return Grade(std::move(coords));
    };
    auto set_mode = [&](Mode m, const std::string& where) {
        if (mode != Mode::Unknown && mode != m)
            throw ParseError(where + ": mixed vertex and explicit modes");
        mode = m;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        std::string where = "line " + std::to_string(lineno);
        const auto& key = toks[0];
        if (key == "n") {
            if (toks.size() != 2) throw ParseError(where + ": expected 'n <int>'");
            if (n) throw ParseError(where + ": duplicate 'n' header");
            try {
                n = std::stoll(toks[1]);
            } catch (const std::exception&) {
                throw ParseError(where + ": invalid parameter count '" + toks[1] + "'");
            }
            if (*n < 1) throw ParseError(where + ": parameter count must be at least 1");
        } else if (key == "mode") {
            if (toks.size() != 2 || (toks[1] != "vertex" && toks[1] != "explicit"))
                throw ParseError(where + ": expected 'mode vertex|explicit'");
            set_mode(toks[1] == "vertex" ? Mode::Vertex : Mode::Explicit, where);
        } else if (key == "v") {
            set_mode(Mode::Vertex, where);
            if (toks.size() < 2) throw ParseError(where + ": expected 'v <id> <grades>'");
            auto id = detail::parse_vertex_id(toks[1], where);
            if (!vgrades.emplace(id, read_grade(toks, 2, where)).second)
                throw InputError(where + ": vertex " + std::to_string(id) + " graded twice");
        } else if (key == "s") {
            auto bar = std::find(toks.begin(), toks.end(), "|");
            bool has_grade = bar != toks.end();
            set_mode(has_grade ? Mode::Explicit : Mode::Vertex, where);
            std::vector<VertexId> ids;
            for (auto it = toks.begin() + 1; it != bar; ++it)
                ids.push_back(detail::parse_vertex_id(*it, where));
            if (ids.empty()) throw ParseError(where + ": simplex without vertices");
            try {
                simplices.emplace_back(std::move(ids));
            } catch (const InputError& e) {
                throw ParseError(where + ": " + e.what());
            }
            if (has_grade)
                grades.push_back(read_grade(toks, static_cast<std::size_t>(bar - toks.begin()) + 1, where));
        } else {
            throw ParseError(where + ": unknown record '" + key + "'");
        }
    }
    if (!n) throw ParseError("missing 'n <int>' header");
    auto params = static_cast<std::size_t>(*n);
    if (mode == Mode::Vertex) {
        auto lifted = lower_star_extend(vgrades, simplices, params);
        return make_complex(params, lifted.simplices(), lifted.grades());
    }
    return make_complex(params, std::move(simplices), std::move(grades));
}

inline MultiFilteredComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_complex(buf.str());
}

// Explicit-mode text; parse_complex(write_complex(K)) reproduces K.
inline std::string write_complex(const MultiFilteredComplex& complex) {
    std::ostringstream out;
    out << "n " << complex.parameter_count() << "\n";
    out << "mode explicit\n";
    for (std::size_t i = 0; i < complex.size(); ++i) {
        out << "s";
        for (auto v : complex.simplex(i).vertices()) out << ' ' << v;
        out << " |";
        for (const auto& c : complex.grade(i)) out << ' ' << to_string(c);
        out << "\n";
    }
    return out.str();
}

} // namespace perspace
