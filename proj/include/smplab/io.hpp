#pragma once

/// \file io.hpp
/// JSON encoding of pairs, tuples and reports. Numbers are rounded to 15
/// significant digits so output is reproducible across runs; non-finite
/// values are written as the strings "inf", "-inf" and "nan".

#include "smplab/constructions.hpp"
#include "smplab/error.hpp"
#include "smplab/jsr.hpp"
#include "smplab/linalg.hpp"
#include "smplab/regions.hpp"
#include "smplab/sturmian.hpp"
#include "smplab/words.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace smplab::io {

using Json = nlohmann::ordered_json;

inline Json number(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0.0 ? "inf" : "-inf";
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.15g", value);
    const double rounded = std::strtod(buffer, nullptr);
    return rounded == 0.0 ? 0.0 : rounded; // no negative zero
}

inline double to_double(const Json& j, const std::string& what)
{
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") {
            return INFINITY;
        }
        if (s == "-inf") {
            return -INFINITY;
        }
    }
    throw precondition_error(what + " must be a number");
}

inline Json to_json(const Mat2& m) { return Json::array({Json::array({number(m.a11), number(m.a12)}), Json::array({number(m.a21), number(m.a22)})}); }

inline Mat2 mat_from_json(const Json& j, const std::string& what)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2) {
        throw precondition_error(what + " must be a 2x2 array [[a, b], [c, d]]");
    }
    const Mat2 m{to_double(j[0][0], what), to_double(j[0][1], what), to_double(j[1][0], what),
                 to_double(j[1][1], what)};
    detail::require(m.finite(), what + " must have finite entries");
    return m;
}

inline Json to_json(const MatrixPair& p) { return Json{{"A", to_json(p.a)}, {"B", to_json(p.b)}}; }

/// {"A": [[..],[..]], "B": [[..],[..]]}; extra keys are ignored, so the
/// output of commands that embed a "pair" object can be fed back through it.
inline MatrixPair pair_from_json(const Json& j)
{
    if (j.is_object() && j.contains("pair")) {
        return pair_from_json(j["pair"]);
    }
    if (!j.is_object() || !j.contains("A") || !j.contains("B")) {
        throw precondition_error("a pair must be an object with keys \"A\" and \"B\"");
    }
    return {mat_from_json(j["A"], "A"), mat_from_json(j["B"], "B")};
}

inline Json to_json(const FiveTuple& t)
{
    return Json{{"x", number(t.x)}, {"y", number(t.y)}, {"z", number(t.z)}, {"u", number(t.u)}, {"v", number(t.v)}};
}

/// Accepts {"x":..,"y":..,"z":..,"u":..,"v":..}, [x, y, z, u, v], or an
/// object embedding one of these under "tuple".
inline FiveTuple tuple_from_json(const Json& j)
{
    if (j.is_object() && j.contains("tuple")) {
        return tuple_from_json(j["tuple"]);
    }
    if (j.is_array() && j.size() == 5) {
        return {to_double(j[0], "x"), to_double(j[1], "y"), to_double(j[2], "z"), to_double(j[3], "u"),
                to_double(j[4], "v")};
    }
    if (j.is_object()) {
        for (const char* key : {"x", "y", "z", "u", "v"}) {
            if (!j.contains(key)) {
                throw precondition_error(std::string("tuple is missing \"") + key + "\"");
            }
        }
        return {to_double(j["x"], "x"), to_double(j["y"], "y"), to_double(j["z"], "z"), to_double(j["u"], "u"),
                to_double(j["v"], "v")};
    }
    throw precondition_error("a tuple must be [x, y, z, u, v] or an object with keys x, y, z, u, v");
}

/// "x,y,z,u,v".
inline FiveTuple parse_tuple(const std::string& text)
{
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error&) {
            throw precondition_error("malformed tuple entry '" + item + "'");
        }
    }
    detail::require(values.size() == 5, "a tuple needs exactly five comma-separated numbers");
    return {values[0], values[1], values[2], values[3], values[4]};
}

inline Json to_json(const std::vector<Word>& words)
{
    Json out = Json::array();
    for (const Word& w : words) {
        out.push_back(w.str());
    }
    return out;
}

/// true, false, or the string "indeterminate".
inline Json to_json(Tri t)
{
    if (t == Tri::Indeterminate) {
        return "indeterminate";
    }
    return t == Tri::True;
}

inline Json to_json(const RegionFlags& f)
{
    Json margins = Json::object();
    for (const auto& [name, value] : f.margins) {
        margins[name] = number(value);
    }
    return Json{{"cross", to_json(f.in_cross)},  {"mix", to_json(f.in_mix)},
                {"neg", to_json(f.in_neg)},      {"copar", to_json(f.in_copar)},
                {"anti", to_json(f.in_anti)},    {"complex", to_json(f.in_complex)},
                {"reducible", to_json(f.reducible)}, {"margins", margins}};
}

inline Json to_json(const AxisConfig& a)
{
    Json points = Json::array();
    for (double v : a.fixed_points) {
        points.push_back(number(v));
    }
    return Json{{"kind", to_string(a.kind)}, {"fixed_points", points}, {"cross_ratio", number(a.cross_ratio)}};
}

inline Json to_json(const BoundsReport& r)
{
    Json rows = Json::array();
    for (const LengthRow& row : r.per_length) {
        rows.push_back(Json{{"length", row.length},
                            {"best_word", row.best_root > 0.0 || row.length == 1 ? Json(row.best_word.str()) : Json()},
                            {"best_root", number(row.best_root)},
                            {"max_norm_root", number(row.max_norm_root)}});
    }
    Json out{{"lower", number(r.lower)}, {"upper", number(r.upper)}, {"best_word", r.best_word.str()},
             {"ties", to_json(r.ties)}};
    if (r.runner_up >= 0.0) {
        out["runner_up"] = Json{{"word", r.runner_up_word.str()}, {"value", number(r.runner_up)}};
    } else {
        out["runner_up"] = nullptr;
    }
    out["per_length"] = rows;
    return out;
}

inline Json to_json(const GelfandScan& s)
{
    return Json{{"direction", to_string(s.direction)},
                {"best_n", s.best_n},
                {"word", s.word().str()},
                {"value", number(s.value)},
                {"terminated", s.terminated},
                {"scanned", s.scanned}};
}

inline Json to_json(const SmpCandidate& c)
{
    Json scans = Json::array();
    for (const GelfandScan& s : c.scans) {
        scans.push_back(to_json(s));
    }
    Json out{{"word", c.word.str()},     {"value", number(c.value)},   {"certified", c.certified},
             {"certificate", c.certificate}, {"jsr", c.jsr ? number(*c.jsr) : Json()},
             {"lower", number(c.lower)}, {"upper", number(c.upper)}, {"ties", to_json(c.ties)},
             {"scans", scans}};
    if (!c.note.empty()) {
        out["note"] = c.note;
    }
    return out;
}

inline Json to_json(const LyapunovSample& s)
{
    return Json{{"gamma", s.gamma.str()}, {"value", number(s.value)}, {"nilpotent", s.nilpotent}};
}

inline Json to_json(const ConcavityReport& r)
{
    Json grid = Json::array();
    for (const LyapunovSample& s : r.grid) {
        grid.push_back(to_json(s));
    }
    Json violations = Json::array();
    for (const ConcavityViolation& v : r.midpoint_violations) {
        violations.push_back(Json{{"left", v.left.str()},
                                  {"middle", v.middle.str()},
                                  {"right", v.right.str()},
                                  {"deficit", number(v.deficit)}});
    }
    return Json{{"argmax_gamma", r.argmax_gamma.str()},
                {"max_value", number(r.max_value)},
                {"word", christoffel(r.argmax_gamma.num, r.argmax_gamma.den).str()},
                {"bracket", Json::array({r.bracket_low.str(), r.bracket_high.str()})},
                {"midpoint_violations", violations},
                {"grid", grid}};
}

inline Json to_json(const Realization& r)
{
    return Json{{"pair", to_json(r.pair)},
                {"tuple", to_json(five_tuple(r.pair))},
                {"branch", r.branch},
                {"reducible", r.reducible}};
}

inline Json to_json(const Polygon& s)
{
    Json vertices = Json::array();
    for (const Vec2& w : s.vertices()) {
        vertices.push_back(Json::array({number(w.x), number(w.y)}));
    }
    return vertices;
}

inline Json to_json(const ExampleFamily& f)
{
    return Json{{"n", f.n}, {"c", number(f.c)}, {"pair", to_json(MatrixPair{f.a, f.b})}, {"polygon", to_json(f.polygon)}};
}

inline Json to_json(const ExampleVerification& v)
{
    return Json{{"n", v.n},
                {"max_len", v.max_len},
                {"norm_a", number(v.norm_a)},
                {"norm_b", number(v.norm_b)},
                {"rho_power_product", number(v.rho_product)},
                {"expected_word", v.expected.str()},
                {"unique", v.unique},
                {"gap", number(v.gap)},
                {"passes", v.passes},
                {"bounds", to_json(v.bounds)}};
}

inline std::string monte_carlo_csv_header()
{
    return "samples,cross,mix,neg,copar,anti,complex,reducible,indeterminate,union_of_four,cross_and_mix,"
           "cross_and_neg,copar_and_cross,unclassified,union_fraction";
}

inline std::string monte_carlo_csv_row(const MonteCarloCounts& c)
{
    std::ostringstream out;
    out << c.samples << ',' << c.cross << ',' << c.mix << ',' << c.neg << ',' << c.copar << ',' << c.anti << ','
        << c.complex << ',' << c.reducible << ',' << c.indeterminate << ',' << c.union_of_four << ','
        << c.cross_and_mix << ',' << c.cross_and_neg << ',' << c.copar_and_cross << ',' << c.unclassified << ','
        << number(c.samples == 0 ? 0.0 : static_cast<double>(c.union_of_four) / static_cast<double>(c.samples))
               .dump();
    return out.str();
}

} // namespace smplab::io
