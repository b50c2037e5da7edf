#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "airy/harness.hpp"

namespace airy::harness {

namespace fs = std::filesystem;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string time_label(double t) {
  std::ostringstream os;
  os << std::setprecision(6) << t;
  return os.str();
}

fs::path write_table(const fs::path& stem, const Table& t, Format f) {
  fs::create_directories(stem.parent_path().empty() ? fs::path(".") : stem.parent_path());
  fs::path path = stem;
  path += f == Format::csv ? ".csv" : ".json";
  if (f == Format::csv) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
      os << '\n';
    }
  } else {
    json j;
    j["columns"] = t.columns;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      json col = json::array();
      for (const auto& row : t.rows) {
        if (std::isfinite(row[c]))
          col.push_back(row[c]);
        else
          col.push_back(nullptr);
      }
      j["data"][t.columns[c]] = col;
    }
    write_json(path, j);
  }
  return path;
}

Table read_csv(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty table " + path.string());
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(cell == "nan" ? NAN : std::stod(cell));
    if (row.size() != t.columns.size()) throw std::runtime_error("ragged row in " + path.string());
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_json(const fs::path& path, const json& j) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << std::setw(2) << j << '\n';
}

}  // namespace airy::harness
