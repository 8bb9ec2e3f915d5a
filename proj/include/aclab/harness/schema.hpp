#pragma once

// Parameter schemas: every key an operation accepts, its type and its default.

#include <string>
#include <vector>

#include "aclab/core/error.hpp"
#include "json.hpp"

namespace aclab::harness {

using json = nlohmann::json;

enum class ParamType { number, integer, boolean, string, number_list, string_list, number_or_auto, structure, any };

inline const char* to_string(ParamType t) {
    switch (t) {
        case ParamType::number: return "number";
        case ParamType::integer: return "integer";
        case ParamType::boolean: return "boolean";
        case ParamType::string: return "string";
        case ParamType::number_list: return "list of numbers";
        case ParamType::string_list: return "list of strings";
        case ParamType::number_or_auto: return "number or \"auto\"";
        case ParamType::structure: return "structure (name, \"builtin: name\" or object)";
        case ParamType::any: return "any";
    }
    return "?";
}

struct ParamDef {
    std::string key;
    ParamType type;
    json fallback;
    std::string help;
};

using Schema = std::vector<ParamDef>;

inline bool matches(ParamType t, const json& v) {
    switch (t) {
        case ParamType::number: return v.is_number();
        case ParamType::integer: return v.is_number_integer();
        case ParamType::boolean: return v.is_boolean();
        case ParamType::string: return v.is_string();
        case ParamType::number_list:
            if (!v.is_array()) return false;
            for (const auto& x : v)
                if (!x.is_number()) return false;
            return true;
        case ParamType::string_list:
            if (!v.is_array()) return false;
            for (const auto& x : v)
                if (!x.is_string()) return false;
            return true;
        case ParamType::number_or_auto: return v.is_number() || v == "auto";
        case ParamType::structure: return v.is_string() || v.is_object();
        case ParamType::any: return true;
    }
    return false;
}

/// Checks `params` against the schema and fills in defaults; errors name the offending key.
inline json validate_params(const Schema& schema, const json& params) {
    if (!params.is_null() && !params.is_object()) fail(ErrorCode::schema_error, "params: expected an object");
    json out = json::object();
    if (params.is_object()) {
        for (const auto& [key, value] : params.items()) {
            const ParamDef* def = nullptr;
            for (const ParamDef& d : schema)
                if (d.key == key) def = &d;
            if (!def) fail(ErrorCode::schema_error, "params." + key + ": unknown parameter");
            if (!matches(def->type, value)) {
                fail(ErrorCode::schema_error, "params." + key + ": expected " + to_string(def->type) + ", got " + value.dump());
            }
            out[key] = value;
        }
    }
    for (const ParamDef& d : schema)
        if (!out.contains(d.key)) out[d.key] = d.fallback;
    return out;
}

}  // namespace aclab::harness
