#pragma once

// JSON and CSV encodings of elements, forms, candidates and verdicts.
//
// Wire formats:
//   element    {"level": L, "coeffs": ["p/q", ...]}      power basis mod Φ_L
//   form       3x3 array of elements
//   candidate  {"angles": [a1, a2, a3], "psi": "s/t", "orders": [n1, n2, n3],
//               "factor_exponents": [k1, k2, k3]}        (last field optional)
//
// An angle is "ideal" or a positive rational x: x >= 2 means π/x, and
// 0 < x <= 1/2 means xπ. Values strictly between 1/2 and 2 are rejected. ψ is
// the rational s/t standing for sπ/t. "psi_radians" (a JSON number) may be
// given instead of "psi" for an angular invariant that is not a rational
// multiple of π.

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cxta/arith.hpp"

namespace cxta {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Elements and forms

inline Json to_json(const CycElem& x) {
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(to_string(c));
    return Json{{"level", x.level()}, {"coeffs", coeffs}};
}

inline CycElem cyc_elem_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("level") || !j.contains("coeffs"))
        throw ParseError("element: expected {\"level\": L, \"coeffs\": [...]}");
    if (!j["level"].is_number_integer()) throw ParseError("element: level must be an integer");
    const auto level = j["level"].get<std::int64_t>();
    if (level < 1) throw ParseError("element: level must be positive");
    if (!j["coeffs"].is_array()) throw ParseError("element: coeffs must be an array");
    std::vector<Rational> coeffs;
    for (const auto& c : j["coeffs"]) {
        if (c.is_string()) coeffs.push_back(parse_rational(c.get<std::string>()));
        else if (c.is_number_integer()) coeffs.emplace_back(c.get<long>());
        else throw ParseError("element: coefficients must be strings \"p/q\" or integers");
    }
    if (static_cast<std::int64_t>(coeffs.size()) != euler_phi(level))
        throw ParseError("element: expected " + std::to_string(euler_phi(level)) + " coefficients for level " +
                         std::to_string(level));
    return CycElem::from_coeffs(level, std::move(coeffs));
}

inline Json to_json(const HermitianForm3& h) {
    Json rows = Json::array();
    for (const auto& row : h.entries) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Angles and candidates

inline std::string angle_to_string(const Angle& a) {
    if (a.is_ideal()) return "ideal";
    const Rational b = 1 / a.over_pi();
    return b.get_den() == 1 ? to_string(b) : to_string(a.over_pi());
}

inline Angle parse_angle(std::string_view text) {
    if (text == "ideal") return Angle::ideal();
    const auto x = parse_rational(text);
    if (x >= 2) return Angle::pi_over(x);
    if (sgn(x) > 0 && x <= frac(1, 2)) return Angle::pi_times(x);
    throw ParseError("angle '" + std::string(text) + "': expected \"ideal\", b >= 2 (π/b) or 0 < x <= 1/2 (xπ)");
}

inline Angle angle_from_json(const Json& j) {
    if (j.is_string()) return parse_angle(j.get<std::string>());
    if (j.is_number_integer()) return parse_angle(std::to_string(j.get<std::int64_t>()));
    throw ParseError("angle: expected a string or an integer");
}

inline std::string shape_psi_string(const TriangleShape& s) {
    return s.psi_over_pi ? to_string(*s.psi_over_pi) : std::string{};
}

inline Json to_json(const CandidateGroup& c) {
    Json angles = Json::array();
    for (const auto& a : c.shape.angles) angles.push_back(angle_to_string(a));
    Json j{{"angles", angles}};
    if (c.shape.psi_over_pi) j["psi"] = shape_psi_string(c.shape);
    else j["psi_radians"] = c.shape.psi_double;
    j["orders"] = c.orders;
    j["factor_exponents"] = c.factor_exponents;
    return j;
}

namespace detail {

inline std::array<std::int64_t, 3> int_triple(const Json& j, const char* field) {
    if (!j.is_array() || j.size() != 3) throw ParseError(std::string(field) + ": expected an array of three integers");
    std::array<std::int64_t, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!j[i].is_number_integer()) throw ParseError(std::string(field) + ": expected integers");
        out[i] = j[i].get<std::int64_t>();
    }
    return out;
}

}  // namespace detail

inline CandidateGroup candidate_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("candidate: expected a JSON object");
    for (const auto& [key, _] : j.items())
        if (key != "angles" && key != "psi" && key != "psi_radians" && key != "orders" && key != "factor_exponents")
            throw ParseError("candidate: unknown field '" + key + "'");
    if (!j.contains("angles") || !j["angles"].is_array() || j["angles"].size() != 3)
        throw ParseError("candidate: \"angles\" must be an array of three angles");
    const std::array<Angle, 3> angles{angle_from_json(j["angles"][0]), angle_from_json(j["angles"][1]),
                                      angle_from_json(j["angles"][2])};

    CandidateGroup c;
    if (j.contains("psi") == j.contains("psi_radians"))
        throw ParseError("candidate: exactly one of \"psi\" and \"psi_radians\" is required");
    if (j.contains("psi")) {
        if (!j["psi"].is_string() && !j["psi"].is_number_integer())
            throw ParseError("candidate: \"psi\" must be a string \"s/t\"");
        const auto text = j["psi"].is_string() ? j["psi"].get<std::string>() : std::to_string(j["psi"].get<long>());
        c.shape = make_shape(angles, parse_rational(text));
    } else {
        if (!j["psi_radians"].is_number()) throw ParseError("candidate: \"psi_radians\" must be a number");
        c.shape = make_irrational_shape(angles, j["psi_radians"].get<double>());
    }

    if (!j.contains("orders")) throw ParseError("candidate: \"orders\" is required");
    c.orders = detail::int_triple(j["orders"], "orders");
    if (j.contains("factor_exponents")) c.factor_exponents = detail::int_triple(j["factor_exponents"], "factor_exponents");
    validate(c);
    return c;
}

/// Parses candidate JSON text; syntax errors become ParseError.
inline CandidateGroup parse_candidate(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return candidate_from_json(j);
}

/// Deterministic key for a shape at a given level, used by caches.
inline std::string canonical_key(const TriangleShape& s, std::int64_t level) {
    std::string key = "angles=";
    for (int i = 0; i < 3; ++i) key += (i ? "," : "") + angle_to_string(s.angles[i]);
    return key + ";psi=" + shape_psi_string(s) + ";level=" + std::to_string(level);
}

// ---------------------------------------------------------------------------
// Verdicts and reports

inline Json to_json(const Verdict& v) {
    Json j{{"status", to_string(v.status)}, {"tag", v.tag}, {"reason", v.reason}};
    j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
    return j;
}

inline Json to_json(const CandidateReport& r) {
    Json j = to_json(r.candidate);
    j["level"] = r.level;
    j["det_sign"] = r.det_sign;
    j["degree_E_lower"] = r.lower_degree;
    j["degree_E_upper"] = r.upper_degree;
    j["degree_E_triangle"] = r.triangle_degree;
    j["negative_pairs"] = r.negative_pairs;
    const auto verdict = to_json(r.verdict);
    for (const auto& [k, v] : verdict.items()) j[k] = v;
    return j;
}

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
    return out;
}

inline const std::vector<std::string>& report_csv_header() {
    static const std::vector<std::string> header{
        "angle1", "angle2", "angle3", "psi", "order1", "order2", "order3", "exponent1", "exponent2", "exponent3",
        "level", "det_sign", "degree_E_lower", "degree_E_upper", "degree_E_triangle", "negative_pairs",
        "status", "tag", "reason", "witness"};
    return header;
}

inline std::vector<std::string> report_csv_fields(const CandidateReport& r) {
    const auto& c = r.candidate;
    std::vector<std::string> f;
    for (const auto& a : c.shape.angles) f.push_back(angle_to_string(a));
    f.push_back(shape_psi_string(c.shape));
    for (auto n : c.orders) f.push_back(std::to_string(n));
    for (auto k : c.factor_exponents) f.push_back(std::to_string(k));
    for (auto x : {r.level, std::int64_t{r.det_sign}, r.lower_degree, r.upper_degree, r.triangle_degree,
                   r.negative_pairs})
        f.push_back(std::to_string(x));
    f.push_back(to_string(r.verdict.status));
    f.push_back(r.verdict.tag);
    f.push_back(r.verdict.reason);
    f.push_back(r.verdict.witness ? std::to_string(*r.verdict.witness) : "");
    return f;
}

// ---------------------------------------------------------------------------
// Sign profiles

/// "+" / "-" / "0" per unit m modulo the level, in increasing m.
inline std::string encode_signs(const SignProfile& p) {
    std::string out;
    out.reserve(p.entries.size());
    for (const auto& [m, s] : p.entries) out += s > 0 ? '+' : s < 0 ? '-' : '0';
    return out;
}

inline SignProfile decode_signs(std::int64_t level, std::string_view signs) {
    const auto units = units_mod(level);
    if (units.size() != signs.size()) throw ParseError("sign profile: wrong number of entries for the level");
    SignProfile p{level, {}};
    for (std::size_t i = 0; i < units.size(); ++i) {
        const char ch = signs[i];
        if (ch != '+' && ch != '-' && ch != '0') throw ParseError("sign profile: unexpected character");
        p.entries.emplace(units[i], ch == '+' ? 1 : ch == '-' ? -1 : 0);
    }
    return p;
}

}  // namespace cxta
