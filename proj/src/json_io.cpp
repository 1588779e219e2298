#include "oddwaring/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace oddw::io {

using core::Int;

Json to_json(const core::GramMatrix& g) {
  Json j;
  j["n"] = g.dim();
  j["m"] = g.rows();
  return j;
}

Json to_json(const core::CosetSpec& c) {
  Json j = to_json(c.gram);
  j["w"] = c.w.one_based();
  return j;
}

core::GramMatrix gram_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("m")) throw std::invalid_argument("expected object with field \"m\"");
    auto rows = j.at("m").get<std::vector<std::vector<Int>>>();
    if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(rows.size()))
      throw std::invalid_argument("field \"n\" disagrees with the number of rows");
    return core::GramMatrix::from_rows(rows);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed matrix: ") + e.what());
  }
}

core::CosetSpec coset_from_json(const Json& j) {
  auto g = gram_from_json(j);
  if (!j.contains("w")) throw std::invalid_argument("coset needs field \"w\"");
  std::vector<int> idx;
  try {
    for (int i : j.at("w").get<std::vector<int>>()) {
      if (i < 1 || i > g.dim()) throw std::invalid_argument("w index out of range 1..n");
      idx.push_back(i - 1);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed w: ") + e.what());
  }
  return core::CosetSpec(g, core::WSet::from_indices(idx));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace oddw::io
