#pragma once

#include <sgens/constrain.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace sgens::cli {

inline constexpr int kSchemaVersion = 1;

/// A parsed CSV file: `# sgens <kind> schema <n>`, then `# col,col,...`,
/// then rows. Cells are kept as text; `number()` converts on demand.
struct CsvTable {
  std::string kind;
  int schema = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  std::vector<double> numbers(const std::string& name) const;
};

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Mass label used in file names: 0.2 -> "0.2", 1 -> "1".
std::string mass_label(double mass);

class CsvWriter {
public:
  CsvWriter(std::string kind, std::vector<std::string> columns);

  CsvWriter& row(const std::vector<double>& values);
  /// Mixed text and numeric cells.
  CsvWriter& row(const std::vector<std::string>& cells);

  std::string str() const;
  void save(const std::filesystem::path& path) const;

private:
  std::string kind_;
  std::vector<std::string> columns_;
  std::vector<std::string> lines_;
};

CsvTable read_csv(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// V_eff table as CSV (q, v_eff, lambda) plus a JSON sidecar with the
/// metadata; `read_table` reverses both.
void write_table(const std::filesystem::path& csv_path, const EffectivePotentialTable& table);
EffectivePotentialTable read_table(const std::filesystem::path& csv_path);

}  // namespace sgens::cli
