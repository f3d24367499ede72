#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace forge {

struct TableRow {
  int level = 1;
  double complexity = 0.0;
  std::vector<std::string> alfus;  // sorted, distinct

  bool operator==(const TableRow&) const = default;
};

struct UnitStats {
  double mean = 0.0;
  double variance = 0.0;

  bool operator==(const UnitStats&) const = default;
};

// Level-aggregate view of a workload. It deliberately carries no vertex
// identities or intra-level topology.
struct ComplexityProfile {
  std::vector<TableRow> computation_table;
  // communication_matrix[i][j]: summed edge weight from level i+1 to level j+1.
  std::vector<std::vector<double>> communication_matrix;
  std::map<std::string, UnitStats> unit_stats;

  int num_levels() const { return static_cast<int>(computation_table.size()); }
  double cell(int from_level, int to_level) const {
    return communication_matrix[static_cast<std::size_t>(from_level - 1)][static_cast<std::size_t>(to_level - 1)];
  }

  // Square matrix matching the table, zero diagonal, contiguous levels,
  // non-negative values. Throws SchemaMismatch.
  void validate() const;

  bool operator==(const ComplexityProfile&) const = default;
};

nlohmann::json to_json(const ComplexityProfile& p);
ComplexityProfile profile_from_json(const nlohmann::json& doc);

// RFC-4180 exports: "level,complexity,alfus" rows and a level x level grid
// with a header row and a leading level column.
std::string table_csv(const ComplexityProfile& p);
std::string matrix_csv(const ComplexityProfile& p);

}  // namespace forge
