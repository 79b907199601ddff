#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "votelp/types.hpp"

namespace votelp {

/// Raised for unreadable or malformed input files; the message carries the
/// parser's position information.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline nlohmann::json instance_to_json(const ProblemInstance& instance) {
  nlohmann::json j;
  j["alpha"] = instance.alpha().entries();
  j["sigma"] = instance.sigma();
  if (instance.sigma_p()) {
    j["sigma_p"] = *instance.sigma_p();
  } else {
    j["sigma_p"] = nullptr;
  }
  j["weights"] = instance.weights();
  return j;
}

inline ProblemInstance instance_from_json(const nlohmann::json& j) {
  try {
    std::optional<Score> sigma_p;
    if (j.contains("sigma_p") && !j.at("sigma_p").is_null()) {
      sigma_p = j.at("sigma_p").get<Score>();
    }
    return ProblemInstance(ScoringVector(j.at("alpha").get<std::vector<Score>>()),
                           j.at("sigma").get<std::vector<Score>>(),
                           j.at("weights").get<std::vector<Score>>(), sigma_p);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("instance JSON is malformed: ") + e.what());
  }
}

inline nlohmann::json matrix_to_json(const ManipulationMatrix& mat) {
  nlohmann::json j;
  j["rows"] = mat.rows;
  j["cols"] = mat.cols;
  j["entries"] = mat.entries;
  j["validity"] = mat.validity == Validity::valid ? "valid" : "relaxed";
  return j;
}

inline ManipulationMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    ManipulationMatrix mat;
    mat.rows = j.at("rows").get<int>();
    mat.cols = j.at("cols").get<int>();
    mat.entries = j.at("entries").get<std::vector<int>>();
    const std::string validity = j.at("validity").get<std::string>();
    if (validity == "valid") {
      mat.validity = Validity::valid;
    } else if (validity == "relaxed") {
      mat.validity = Validity::relaxed;
    } else {
      throw io_error("matrix JSON: validity must be \"valid\" or \"relaxed\"");
    }
    if (mat.rows < 1 || mat.cols < 1 ||
        mat.entries.size() != static_cast<std::size_t>(mat.rows) * mat.cols) {
      throw io_error("matrix JSON: entries do not match rows x cols");
    }
    return mat;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("matrix JSON is malformed: ") + e.what());
  }
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw io_error(path + ": " + e.what());
  }
}

inline void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw io_error("failed while writing " + path);
}

}  // namespace votelp
