#pragma once

// Validator for the subset of JSON Schema (draft-07) used by the published
// graph schema: type, const, enum, properties, required,
// additionalProperties (boolean), items, minItems, maxItems, minLength,
// pattern, minimum, maximum, exclusiveMinimum, exclusiveMaximum.
// Unsupported keywords are reported as errors so the subset cannot drift
// silently.

#include <cmath>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace schema {

using nlohmann::json;

inline bool has_type(const json& value, const std::string& type)
{
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    if (type == "integer") {
        return value.is_number_integer()
            || (value.is_number_float() && value.get<double>() == std::floor(value.get<double>()));
    }
    if (type == "number") return value.is_number();
    return false;
}

inline void validate(const json& schema, const json& value, const std::string& path,
                     std::vector<std::string>& errors)
{
    static const std::set<std::string> known{
        "$schema", "$id", "title", "description", "type", "const", "enum", "properties",
        "required", "additionalProperties", "items", "minItems", "maxItems", "minLength",
        "pattern", "minimum", "maximum", "exclusiveMinimum", "exclusiveMaximum",
    };
    const auto fail = [&](const std::string& msg) { errors.push_back(path + ": " + msg); };

    for (const auto& [key, unused] : schema.items()) {
        if (!known.contains(key)) fail("unsupported schema keyword " + key);
    }
    if (const auto t = schema.find("type"); t != schema.end()) {
        bool ok = false;
        if (t->is_array()) {
            for (const auto& each : *t) ok = ok || has_type(value, each.get<std::string>());
        } else {
            ok = has_type(value, t->get<std::string>());
        }
        if (!ok) {
            fail("expected type " + t->dump());
            return;
        }
    }
    if (const auto c = schema.find("const"); c != schema.end() && *c != value) fail("expected " + c->dump());
    if (const auto e = schema.find("enum"); e != schema.end()) {
        bool found = false;
        for (const auto& each : *e) found = found || each == value;
        if (!found) fail("value not in enum");
    }
    if (value.is_number()) {
        const double v = value.get<double>();
        if (auto it = schema.find("minimum"); it != schema.end() && v < it->get<double>()) fail("below minimum");
        if (auto it = schema.find("maximum"); it != schema.end() && v > it->get<double>()) fail("above maximum");
        if (auto it = schema.find("exclusiveMinimum"); it != schema.end() && v <= it->get<double>()) {
            fail("not above exclusiveMinimum");
        }
        if (auto it = schema.find("exclusiveMaximum"); it != schema.end() && v >= it->get<double>()) {
            fail("not below exclusiveMaximum");
        }
    }
    if (value.is_string()) {
        const auto s = value.get<std::string>();
        if (auto it = schema.find("minLength"); it != schema.end() && s.size() < it->get<std::size_t>()) {
            fail("shorter than minLength");
        }
        if (auto it = schema.find("pattern"); it != schema.end()) {
            if (!std::regex_search(s, std::regex(it->get<std::string>()))) fail("does not match pattern");
        }
    }
    if (value.is_array()) {
        if (auto it = schema.find("minItems"); it != schema.end() && value.size() < it->get<std::size_t>()) {
            fail("fewer than minItems");
        }
        if (auto it = schema.find("maxItems"); it != schema.end() && value.size() > it->get<std::size_t>()) {
            fail("more than maxItems");
        }
        if (auto it = schema.find("items"); it != schema.end()) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                validate(*it, value[i], path + "/" + std::to_string(i), errors);
            }
        }
    }
    if (value.is_object()) {
        const auto props = schema.find("properties");
        if (auto it = schema.find("required"); it != schema.end()) {
            for (const auto& name : *it) {
                if (!value.contains(name.get<std::string>())) fail("missing required " + name.dump());
            }
        }
        for (const auto& [key, child] : value.items()) {
            if (props != schema.end() && props->contains(key)) {
                validate((*props)[key], child, path + "/" + key, errors);
            } else if (auto ap = schema.find("additionalProperties"); ap != schema.end() && *ap == false) {
                fail("unexpected property " + key);
            }
        }
    }
}

inline std::vector<std::string> validate(const json& schema, const json& value)
{
    std::vector<std::string> errors;
    validate(schema, value, "", errors);
    return errors;
}

}  // namespace schema
