#include "forge/profile.hpp"

#include <algorithm>

#include "forge/csv.hpp"
#include "forge/error.hpp"

namespace forge {

void ComplexityProfile::validate() const {
  const auto n = computation_table.size();
  if (n == 0) throw Error(ErrorKind::SchemaMismatch, "profile has no levels");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = computation_table[i];
    if (row.level != static_cast<int>(i) + 1)
      throw Error(ErrorKind::SchemaMismatch, "profile table levels must be 1..L in order");
    if (row.complexity < 0.0) throw Error(ErrorKind::SchemaMismatch, "negative computation complexity");
  }
  if (communication_matrix.size() != n) throw Error(ErrorKind::SchemaMismatch, "matrix size does not match table");
  for (std::size_t i = 0; i < n; ++i) {
    if (communication_matrix[i].size() != n) throw Error(ErrorKind::SchemaMismatch, "matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (communication_matrix[i][j] < 0.0) throw Error(ErrorKind::SchemaMismatch, "negative matrix entry");
    }
    if (communication_matrix[i][i] != 0.0) throw Error(ErrorKind::SchemaMismatch, "matrix diagonal must be zero");
  }
  for (const auto& [id, s] : unit_stats) {
    if (s.mean < 0.0 || s.variance < 0.0) throw Error(ErrorKind::SchemaMismatch, "negative unit statistics for " + id);
  }
}

nlohmann::json to_json(const ComplexityProfile& p) {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& r : p.computation_table)
    table.push_back({{"level", r.level}, {"complexity", r.complexity}, {"alfus", r.alfus}});
  nlohmann::json stats = nlohmann::json::object();
  for (const auto& [id, s] : p.unit_stats) stats[id] = {{"mean", s.mean}, {"variance", s.variance}};
  return {{"num_levels", p.num_levels()},
          {"computation_table", table},
          {"communication_matrix", p.communication_matrix},
          {"unit_stats", stats}};
}

ComplexityProfile profile_from_json(const nlohmann::json& doc) {
  ComplexityProfile p;
  try {
    for (const auto& r : doc.at("computation_table")) {
      auto alfus = r.at("alfus").get<std::vector<std::string>>();
      std::sort(alfus.begin(), alfus.end());
      alfus.erase(std::unique(alfus.begin(), alfus.end()), alfus.end());
      p.computation_table.push_back({r.at("level").get<int>(), r.at("complexity").get<double>(), std::move(alfus)});
    }
    p.communication_matrix = doc.at("communication_matrix").get<std::vector<std::vector<double>>>();
    const auto stats = doc.value("unit_stats", nlohmann::json::object());
    for (const auto& [id, s] : stats.items())
      p.unit_stats[id] = {s.at("mean").get<double>(), s.at("variance").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("profile document: ") + e.what());
  }
  p.validate();
  return p;
}

std::string table_csv(const ComplexityProfile& p) {
  std::string out = csv::record({"level", "complexity", "alfus"});
  for (const auto& r : p.computation_table) {
    std::string alfus;
    for (std::size_t i = 0; i < r.alfus.size(); ++i) alfus += (i ? ";" : "") + r.alfus[i];
    out += csv::record({std::to_string(r.level), csv::number(r.complexity), csv::field(alfus)});
  }
  return out;
}

std::string matrix_csv(const ComplexityProfile& p) {
  std::vector<std::string> labels;
  for (const auto& r : p.computation_table) labels.push_back(std::to_string(r.level));
  return csv::grid(p.communication_matrix, labels, "level");
}

}  // namespace forge
