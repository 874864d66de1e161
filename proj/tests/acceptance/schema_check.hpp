// Minimal structural validator for the subset of JSON Schema the checked-in
// schema documents use: type, enum, required, properties,
// additionalProperties (boolean) and items.
#ifndef DISTCOV_TESTS_SCHEMA_CHECK_HPP
#define DISTCOV_TESTS_SCHEMA_CHECK_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace schema_check {

using nlohmann::json;

inline bool type_matches(const json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number") return value.is_number();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

inline void validate(const json& value, const json& schema, const std::string& path,
                     std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const json& type = schema["type"];
        bool ok = false;
        if (type.is_string()) {
            ok = type_matches(value, type.get<std::string>());
        } else {
            for (const auto& t : type)
                if (type_matches(value, t.get<std::string>())) ok = true;
        }
        if (!ok) {
            errors.push_back(path + ": type mismatch, got " + value.dump());
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& candidate : schema["enum"])
            if (candidate == value) ok = true;
        if (!ok) errors.push_back(path + ": value " + value.dump() + " not in enum");
    }
    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const auto& name : schema["required"])
                if (!value.contains(name.get<std::string>()))
                    errors.push_back(path + ": missing required key '" +
                                     name.get<std::string>() + "'");
        }
        const json props =
            schema.contains("properties") ? schema["properties"] : json::object();
        const bool allow_extra = !schema.contains("additionalProperties") ||
                                 schema["additionalProperties"].get<bool>();
        for (const auto& [key, member] : value.items()) {
            if (props.contains(key)) {
                validate(member, props[key], path + "." + key, errors);
            } else if (!allow_extra) {
                errors.push_back(path + ": unexpected key '" + key + "'");
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i)
            validate(value[i], schema["items"], path + "[" + std::to_string(i) + "]", errors);
    }
}

inline std::vector<std::string> violations(const json& value, const json& schema) {
    std::vector<std::string> errors;
    validate(value, schema, "$", errors);
    return errors;
}

} // namespace schema_check

#endif
