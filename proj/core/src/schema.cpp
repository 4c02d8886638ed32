#include "rmtkit/schema.hpp"

#include <json.hpp>

#include "rmtkit/error.hpp"

namespace rmtkit {

namespace {

using nlohmann::json;

bool type_matches(const json& instance, const std::string& type) {
    if (type == "object") return instance.is_object();
    if (type == "array") return instance.is_array();
    if (type == "string") return instance.is_string();
    if (type == "integer") return instance.is_number_integer() || instance.is_number_unsigned();
    if (type == "number") return instance.is_number();
    if (type == "boolean") return instance.is_boolean();
    if (type == "null") return instance.is_null();
    return false;
}

void check(const json& schema, const json& instance, const std::string& path,
           std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const std::string type = schema["type"].get<std::string>();
        if (!type_matches(instance, type)) {
            errors.push_back(path + ": expected " + type + ", got " +
                             std::string(instance.type_name()));
            return;
        }
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& v : schema["enum"])
            if (v == instance) found = true;
        if (!found) errors.push_back(path + ": value not in enum");
    }
    if (instance.is_number()) {
        if (schema.contains("minimum") && instance.get<double>() < schema["minimum"].get<double>())
            errors.push_back(path + ": below minimum " + schema["minimum"].dump());
        if (schema.contains("maximum") && instance.get<double>() > schema["maximum"].get<double>())
            errors.push_back(path + ": above maximum " + schema["maximum"].dump());
    }
    if (instance.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!instance.contains(key.get<std::string>()))
                    errors.push_back(path + ": missing required property '" +
                                     key.get<std::string>() + "'");
        const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        if (props)
            for (auto it = props->begin(); it != props->end(); ++it)
                if (instance.contains(it.key()))
                    check(it.value(), instance[it.key()], path + "/" + it.key(), errors);
        if (schema.contains("additionalProperties") &&
            schema["additionalProperties"].is_boolean() &&
            !schema["additionalProperties"].get<bool>()) {
            for (auto it = instance.begin(); it != instance.end(); ++it)
                if (!props || !props->contains(it.key()))
                    errors.push_back(path + ": unexpected property '" + it.key() + "'");
        }
    }
    if (instance.is_array()) {
        if (schema.contains("minItems") &&
            instance.size() < schema["minItems"].get<size_t>())
            errors.push_back(path + ": fewer than " + schema["minItems"].dump() + " items");
        if (schema.contains("items")) {
            size_t idx = 0;
            for (const auto& element : instance) {
                check(schema["items"], element, path + "/" + std::to_string(idx), errors);
                ++idx;
            }
        }
    }
}

} // namespace

std::vector<std::string> validate_json_schema(const std::string& schema_json,
                                              const std::string& instance_json) {
    json schema, instance;
    try {
        schema = json::parse(schema_json);
    } catch (const json::exception& e) {
        throw DataError(std::string("schema is not valid JSON: ") + e.what());
    }
    try {
        instance = json::parse(instance_json);
    } catch (const json::exception& e) {
        throw DataError(std::string("instance is not valid JSON: ") + e.what());
    }
    std::vector<std::string> errors;
    check(schema, instance, "$", errors);
    return errors;
}

} // namespace rmtkit
