#pragma once

/**
 * @file report.hpp
 * @brief JSON documents for certificates and reports, plus recurrence and bound files.
 *
 * Witness polynomials and exact values are embedded as text in the same
 * syntax the parsers accept, so a report can be re-checked without this tool.
 * Object keys are emitted in sorted order, which makes the output
 * deterministic apart from the "timing" fields.
 */

#include "logcert/bounds.hpp"
#include "logcert/criteria.hpp"
#include "logcert/seqcheck.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace logcert {

using Json = nlohmann::json;

namespace detail {

inline Json optional_index(const std::optional<std::int64_t>& n) { return n ? Json(*n) : Json(nullptr); }

}  // namespace detail

inline Json to_json(const BoundSpec& b) {
    return {{"name", b.name}, {"side", to_string(b.side)}, {"f", to_string(b.f)},
            {"valid_from", b.valid_from}, {"strict", b.strict}};
}

inline Json to_json(const PolyWitness& w) {
    Json checks = Json::array();
    for (const auto& c : w.prefix_checks) checks.push_back({c.point, to_string(c.value)});
    Json j{{"role", w.role},
           {"polynomial", to_string(w.subject)},
           {"coefficients", coefficient_strings(w.subject)},
           {"relation", to_string(w.relation)},
           {"from", w.from},
           {"shift", w.shift_used},
           {"prefix_checks", std::move(checks)},
           {"verdict", to_string(w.verdict)},
           {"refuted_at", detail::optional_index(w.refuted_at)}};
    if (w.refuted_value) j["refuted_value"] = to_string(*w.refuted_value);
    return j;
}

inline Json to_json(const PositivityCertificate& c) {
    Json parts = Json::array();
    for (const auto& p : c.parts) parts.push_back(to_json(p));
    Json j{{"subject", to_string(c.subject)},
           {"from", c.from},
           {"relation", to_string(c.relation)},
           {"shift", c.shift_used},
           {"prefix_points", static_cast<std::int64_t>(c.prefix_checks.size())},
           {"verdict", to_string(c.verdict)},
           {"refuted_at", detail::optional_index(c.refuted_at)},
           {"parts", std::move(parts)}};
    if (c.refuted_value) j["refuted_value"] = to_string(*c.refuted_value);
    if (!c.diagnostics.empty()) j["diagnostics"] = c.diagnostics;
    return j;
}

inline Json to_json(const BoundCertificate& c) {
    Json base = Json::array();
    for (const auto& b : c.base_cases)
        base.push_back({{"n", b.index}, {"ratio", to_string(b.ratio)}, {"bound", to_string(b.bound_value)},
                        {"holds", b.holds}});
    Json j{{"kind", "ratio-bound"},
           {"bound", to_json(c.bound)},
           {"recurrence", c.recurrence},
           {"verdict", to_string(c.verdict)},
           {"base_cases", std::move(base)},
           {"induction_from", c.induction_from},
           {"initial_terms_positive", c.initial_terms_positive},
           {"step_function", to_string(c.step_function)},
           {"refuted_at", detail::optional_index(c.refuted_at)}};
    if (c.step) j["step"] = to_json(*c.step);
    if (c.bound_positive) j["bound_positive"] = to_json(*c.bound_positive);
    if (c.companion) j["companion"] = to_json(*c.companion);
    if (c.b_sign) j["b_negative"] = to_json(*c.b_sign);
    if (!c.diagnostics.empty()) j["diagnostics"] = c.diagnostics;
    return j;
}

inline Json to_json(const CriterionCertificate& c) {
    Json bounds = Json::array();
    for (const auto& b : c.bound_inputs) bounds.push_back(to_json(b));
    Json conds = Json::array();
    for (const auto& nc : c.conditions) {
        Json x = to_json(nc.cert);
        x["name"] = nc.name;
        conds.push_back(std::move(x));
    }
    Json small = Json::array();
    for (const auto& s : c.small_cases)
        small.push_back({{"n", s.n}, {"lhs", to_string(s.lhs)}, {"relation", s.relation},
                         {"rhs", to_string(s.rhs)}, {"holds", s.holds}});
    Json j{{"kind", "criterion"},
           {"schema", to_string(c.schema)},
           {"recurrence", c.recurrence},
           {"verdict", to_string(c.verdict)},
           {"conclusion_from", c.conclusion_from},
           {"certified_from", c.certified_from},
           {"bounds", std::move(bounds)},
           {"conditions", std::move(conds)},
           {"small_cases", std::move(small)},
           {"refuted_at", detail::optional_index(c.refuted_at)}};
    if (!c.variant.empty()) j["variant"] = c.variant;
    if (!c.diagnostics.empty()) j["diagnostics"] = c.diagnostics;
    return j;
}

inline Json to_json(const EmpiricalBoundCheck& e) {
    return {{"kind", "empirical-bound"}, {"bound", e.bound}, {"from", e.from}, {"to", e.to},
            {"verdict", e.holds ? "holds" : "fails"}, {"fails_at", detail::optional_index(e.fails_at)},
            {"label", "empirical"}};
}

inline Json to_json(const PropertyReport& r) {
    Json params = Json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    Json j{{"property", r.property},
           {"sequence", r.sequence},
           {"parameters", std::move(params)},
           {"from", r.from},
           {"to", r.to},
           {"verdict", r.holds ? "holds" : "fails"},
           {"fails_at", detail::optional_index(r.fails_at)},
           {"label", r.label},
           {"timing", {{"ms", r.elapsed_ms}}}};
    if (r.counterexample) {
        const auto& c = *r.counterexample;
        Json cx{{"n", c.n}, {"relation", c.relation}};
        if (c.lhs) cx["lhs"] = to_string(*c.lhs);
        if (c.rhs) cx["rhs"] = to_string(*c.rhs);
        if (!c.detail.empty()) cx["detail"] = c.detail;
        j["counterexample"] = std::move(cx);
    }
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.levels.empty()) {
        Json lv = Json::array();
        for (const auto& l : r.levels) lv.push_back(to_json(l));
        j["levels"] = std::move(lv);
    }
    return j;
}

/// Removes every "timing" member, recursively; what remains is deterministic.
inline Json without_timing(Json j) {
    if (j.is_object()) {
        j.erase("timing");
        for (auto& [k, v] : j.items()) v = without_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = without_timing(v);
    }
    return j;
}

/// Margins CSV: one row per checked n with the exact lhs - rhs.
inline std::string margins_csv(const PropertyReport& r) {
    std::ostringstream out;
    out << "n,margin\n";
    for (const auto& [n, m] : r.margins) out << n << ',' << to_string(m) << '\n';
    return out.str();
}

// Recurrence and bound definition files.

inline Json recurrence_to_json(const Recurrence2& rec) {
    Json init = Json::array();
    for (const auto& v : rec.init()) init.push_back(to_string(v));
    return {{"name", rec.name()},
            {"a_num", coefficient_strings(rec.a().num())},
            {"a_den", coefficient_strings(rec.a().den())},
            {"b_num", coefficient_strings(rec.b().num())},
            {"b_den", coefficient_strings(rec.b().den())},
            {"init", std::move(init)},
            {"valid_from", rec.valid_from()}};
}

inline Recurrence2 recurrence_from_json(const Json& j) {
    try {
        auto poly = [&](const char* key) { return poly_from_coefficients(j.at(key).get<std::vector<std::string>>()); };
        std::vector<BigRational> init;
        for (const auto& v : j.at("init")) init.push_back(parse_rational(v.get<std::string>()));
        RatFunc a(poly("a_num"), poly("a_den"));
        RatFunc b(poly("b_num"), poly("b_den"));
        return Recurrence2(j.at("name").get<std::string>(), std::move(a), std::move(b), std::move(init),
                           j.at("valid_from").get<std::int64_t>());
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad recurrence definition: ") + e.what());
    } catch (const DivisionByZero& e) {
        throw ParseError(std::string("bad recurrence definition: ") + e.what());
    }
}

inline BoundSpec bound_from_json(const Json& j) {
    try {
        BoundSpec b;
        b.name = j.at("name").get<std::string>();
        const auto side = j.at("side").get<std::string>();
        if (side != "lower" && side != "upper") throw ParseError("bound side must be 'lower' or 'upper'");
        b.side = side == "lower" ? Side::Lower : Side::Upper;
        b.f = parse_ratfunc(j.at("f").get<std::string>());
        b.valid_from = j.at("valid_from").get<std::int64_t>();
        b.strict = j.value("strict", true);
        return b;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad bound definition: ") + e.what());
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

}  // namespace logcert
