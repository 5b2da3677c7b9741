#include "io.hpp"

#include "config.hpp"

#include <sgens/errors.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sgens::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s;
}

std::filesystem::path sidecar_path(std::filesystem::path p) { return p.replace_extension(".json"); }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string mass_label(double mass) {
  std::ostringstream os;
  os << mass;
  return os.str();
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw UsageError("csv: no column '" + name + "'");
}

double CsvTable::number(std::size_t r, const std::string& name) const {
  const std::string& s = rows.at(r).at(column(name));
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw UsageError("csv: '" + s + "' in column '" + name + "' is not a number");
  }
  return v;
}

std::vector<double> CsvTable::numbers(const std::string& name) const {
  std::vector<double> out(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) out[r] = number(r, name);
  return out;
}

CsvWriter::CsvWriter(std::string kind, std::vector<std::string> columns)
    : kind_(std::move(kind)), columns_(std::move(columns)) {}

CsvWriter& CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  return row(cells);
}

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw UsageError("csv: row width does not match header");
  lines_.push_back(join(cells));
  return *this;
}

std::string CsvWriter::str() const {
  std::string s = "# sgens " + kind_ + " schema " + std::to_string(kSchemaVersion) + "\n";
  s += "# " + join(columns_) + "\n";
  for (const auto& l : lines_) {
    s += l;
    s += '\n';
  }
  return s;
}

void CsvWriter::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << str();
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path.string() + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# sgens ", 0) != 0) {
    throw UsageError(path.string() + ": missing sgens header line");
  }
  {
    std::istringstream is(line.substr(8));
    std::string word;
    is >> t.kind >> word >> t.schema;
    if (word != "schema" || !is) throw UsageError(path.string() + ": malformed header line");
  }
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw UsageError(path.string() + ": missing column line");
  }
  t.columns = split(line.substr(2));
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (cells.size() != t.columns.size()) throw UsageError(path.string() + ": ragged row");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path.string() + "'");
  return json::parse(in);
}

void write_table(const std::filesystem::path& csv_path, const EffectivePotentialTable& table) {
  CsvWriter w("veff_table", {"q", "v_eff", "lambda"});
  for (std::size_t i = 0; i < table.size(); ++i) w.row({table.q[i], table.v_eff[i], table.lambda[i]});
  w.save(csv_path);

  json failures = json::array();
  for (const auto& f : table.failures) failures.push_back({{"q", f.q}, {"message", f.message}});
  const auto& m = table.meta;
  write_json(sidecar_path(csv_path),
             {{"schema", kSchemaVersion},
              {"e1", m.e1},
              {"e2", m.e2},
              {"d", m.d},
              {"model", model_to_json(m.model)},
              {"grid", grid_to_json(m.grid)},
              {"root_tol", m.root_tol},
              {"eigen_tol", m.eigen_tol},
              {"bounded_support", table.bounded_support},
              {"failures", failures}});
}

EffectivePotentialTable read_table(const std::filesystem::path& csv_path) {
  const CsvTable csv = read_csv(csv_path);
  if (csv.kind != "veff_table") throw UsageError(csv_path.string() + ": not a V_eff table");
  EffectivePotentialTable t;
  t.q = csv.numbers("q");
  t.v_eff = csv.numbers("v_eff");
  t.lambda = csv.numbers("lambda");

  const json j = read_json(sidecar_path(csv_path));
  t.meta.e1 = j.at("e1").get<double>();
  t.meta.e2 = j.at("e2").get<double>();
  t.meta.d = j.at("d").get<double>();
  json cfg = {{"model", j.at("model")}, {"grid", j.at("grid")}};
  const RunConfig rc = config_from_json(cfg);
  t.meta.model = rc.model;
  t.meta.grid = rc.grid;
  t.meta.root_tol = j.at("root_tol").get<double>();
  t.meta.eigen_tol = j.at("eigen_tol").get<double>();
  t.bounded_support = j.at("bounded_support").get<bool>();
  for (const auto& f : j.at("failures")) {
    t.failures.push_back({f.at("q").get<double>(), f.at("message").get<std::string>()});
  }
  return t;
}

}  // namespace sgens::cli
