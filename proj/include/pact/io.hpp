#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pact/error.hpp"
#include "pact/instance.hpp"
#include "pact/rational.hpp"
#include "pact/robust.hpp"

/* JSON documents for instances and ambiguous instances. All numeric values
 * travel as exact rational strings ("3/4", "12", "0.25"); plain JSON
 * integers are accepted on input for convenience, but floating-point JSON
 * numbers are rejected so no binary rounding ever sneaks in. Emission uses
 * insertion-ordered objects and canonical fraction strings, so documents are
 * byte-stable and parse(emit(x)) reproduces x exactly.
 */

namespace pact {

using OrderedJson = nlohmann::ordered_json;

namespace detail {

inline Rational json_rational(const OrderedJson& value, const std::string& where) {
    if (value.is_string()) {
        try {
            return parse_rational(value.get<std::string>());
        } catch (const ParseError& err) {
            throw ParseError(where + ": " + err.what());
        }
    }
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_number())
        throw ParseError(where + ": write non-integer numbers as strings to keep them exact");
    throw ParseError(where + ": expected a rational string or integer");
}

inline const OrderedJson& json_array_field(const OrderedJson& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(std::string("missing '") + key + "' array");
    const OrderedJson& field = doc.at(key);
    if (!field.is_array()) throw ParseError(std::string("'") + key + "' must be an array");
    return field;
}

inline OrderedJson parse_json(const std::string& text) {
    try {
        return OrderedJson::parse(text);
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("invalid JSON: ") + err.what());
    }
}

} // namespace detail

inline Instance parse_instance_document(const std::string& text) {
    OrderedJson doc = detail::parse_json(text);
    if (!doc.is_object()) throw ParseError("instance document must be a JSON object");

    std::vector<Rational> outcomes;
    for (const OrderedJson& v : detail::json_array_field(doc, "outcomes"))
        outcomes.push_back(detail::json_rational(v, "outcomes"));

    std::vector<Action> actions;
    for (const OrderedJson& entry : detail::json_array_field(doc, "actions")) {
        if (!entry.is_object() || !entry.contains("probs") || !entry.contains("cost"))
            throw ParseError("each action needs 'probs' and 'cost'");
        Action act;
        const OrderedJson& probs = entry.at("probs");
        if (!probs.is_array()) throw ParseError("'probs' must be an array");
        for (const OrderedJson& p : probs) act.probs.push_back(detail::json_rational(p, "probs"));
        act.cost = detail::json_rational(entry.at("cost"), "cost");
        actions.push_back(std::move(act));
    }

    std::map<std::string, std::string> metadata;
    if (doc.contains("metadata")) {
        const OrderedJson& meta = doc.at("metadata");
        if (!meta.is_object()) throw ParseError("'metadata' must be an object");
        for (const auto& [key, value] : meta.items()) {
            if (!value.is_string()) throw ParseError("metadata values must be strings");
            metadata.emplace(key, value.get<std::string>());
        }
    }

    return build_instance(outcomes, actions, std::move(metadata));
}

inline std::string emit_instance_document(const Instance& inst) {
    OrderedJson doc = OrderedJson::object();
    OrderedJson outcomes = OrderedJson::array();
    for (const Rational& x : inst.outcomes) outcomes.push_back(to_string(x));
    doc["outcomes"] = std::move(outcomes);

    OrderedJson actions = OrderedJson::array();
    for (const Action& act : inst.actions) {
        OrderedJson probs = OrderedJson::array();
        for (const Rational& p : act.probs) probs.push_back(to_string(p));
        actions.push_back(OrderedJson{{"probs", std::move(probs)}, {"cost", to_string(act.cost)}});
    }
    doc["actions"] = std::move(actions);

    if (!inst.metadata.empty()) {
        OrderedJson meta = OrderedJson::object();
        for (const auto& [key, value] : inst.metadata) meta[key] = value;
        doc["metadata"] = std::move(meta);
    }
    return doc.dump(2) + "\n";
}

inline AmbiguousInstance parse_ambiguous_document(const std::string& text) {
    OrderedJson doc = detail::parse_json(text);
    if (!doc.is_object()) throw ParseError("ambiguous document must be a JSON object");

    std::vector<Rational> outcomes;
    for (const OrderedJson& v : detail::json_array_field(doc, "outcomes"))
        outcomes.push_back(detail::json_rational(v, "outcomes"));

    std::vector<AmbiguousAction> actions;
    for (const OrderedJson& entry : detail::json_array_field(doc, "ambiguous_actions")) {
        if (!entry.is_object() || !entry.contains("reward") || !entry.contains("cost"))
            throw ParseError("each ambiguous action needs 'reward' and 'cost'");
        actions.push_back(AmbiguousAction{detail::json_rational(entry.at("reward"), "reward"),
                                          detail::json_rational(entry.at("cost"), "cost")});
    }
    return check_ambiguous(std::move(outcomes), std::move(actions));
}

/// Value cell carrying both the exact fraction and a decimal rendering.
/// The decimal is display-only and never parsed back.
inline OrderedJson rational_cell(const Rational& value, unsigned precision = 6) {
    return OrderedJson{{"exact", to_string(value)}, {"decimal", to_decimal(value, precision)}};
}

} // namespace pact
