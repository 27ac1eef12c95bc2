#pragma once

// Validator for the JSON Schema keywords used in schemas/: type, required,
// properties, items, minItems, maxItems, minLength, enum, minimum.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace schema {

using nlohmann::json;

inline json load(const std::string& name) {
  std::ifstream in(std::string(EMOAUG_SOURCE_DIR) + "/schemas/" + name);
  return json::parse(in);
}

inline bool type_matches(const std::string& type, const json& v) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  return false;
}

// Appends one message per violation.
inline void check(const json& s, const json& v, const std::string& where, std::vector<std::string>& errors) {
  if (auto t = s.find("type"); t != s.end() && !type_matches(t->get<std::string>(), v)) {
    errors.push_back(where + ": expected " + t->get<std::string>());
    return;
  }
  if (auto e = s.find("enum"); e != s.end()) {
    if (std::find(e->begin(), e->end(), v) == e->end()) errors.push_back(where + ": not in enum");
  }
  if (v.is_string()) {
    if (auto m = s.find("minLength"); m != s.end() && v.get<std::string>().size() < m->get<std::size_t>()) {
      errors.push_back(where + ": shorter than minLength");
    }
  }
  if (v.is_number()) {
    if (auto m = s.find("minimum"); m != s.end() && v.get<double>() < m->get<double>()) {
      errors.push_back(where + ": below minimum");
    }
  }
  if (v.is_array()) {
    if (auto m = s.find("minItems"); m != s.end() && v.size() < m->get<std::size_t>()) {
      errors.push_back(where + ": fewer than minItems");
    }
    if (auto m = s.find("maxItems"); m != s.end() && v.size() > m->get<std::size_t>()) {
      errors.push_back(where + ": more than maxItems");
    }
    if (auto items = s.find("items"); items != s.end()) {
      for (std::size_t i = 0; i < v.size(); ++i) check(*items, v[i], where + "[" + std::to_string(i) + "]", errors);
    }
  }
  if (v.is_object()) {
    if (auto req = s.find("required"); req != s.end()) {
      for (const auto& k : *req) {
        if (!v.contains(k.get<std::string>())) errors.push_back(where + ": missing " + k.get<std::string>());
      }
    }
    if (auto props = s.find("properties"); props != s.end()) {
      for (const auto& [k, sub] : props->items()) {
        if (v.contains(k)) check(sub, v.at(k), where + "." + k, errors);
      }
    }
  }
}

inline std::vector<std::string> validate(const json& s, const json& v) {
  std::vector<std::string> errors;
  check(s, v, "$", errors);
  return errors;
}

}  // namespace schema
