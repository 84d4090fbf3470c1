#pragma once

#include <initializer_list>
#include <string>

#include "json.hpp"
#include "pshglue/errors.hpp"

namespace pshglue {

// Strict-key helper: every key of j must appear in `allowed`, and every key of
// `required` must be present. Violations name the offending key and path.
inline void check_keys(const nlohmann::json& j, const std::string& path,
                       std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw ValidationError(path + ": expected an object");
  for (const char* k : required) {
    if (!j.contains(k)) throw ValidationError(path + ": missing required key '" + k + "'");
  }
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : required)
      if (key == k) ok = true;
    for (const char* k : optional)
      if (key == k) ok = true;
    if (!ok) throw ValidationError(path + ": unknown key '" + key + "'");
  }
}

}  // namespace pshglue
