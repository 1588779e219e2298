#pragma once

#include <json.hpp>
#include <string>

#include "oddwaring/core.hpp"

namespace oddw::io {

using Json = nlohmann::ordered_json;

Json to_json(const core::GramMatrix& g);
Json to_json(const core::CosetSpec& c);

// {"n": int, "m": [[...]]}; "n" must agree with the row count. Throws std::invalid_argument.
core::GramMatrix gram_from_json(const Json& j);
// Gram fields plus "w": [1-based indices].
core::CosetSpec coset_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace oddw::io
