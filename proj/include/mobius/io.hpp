#pragma once

// Tabular output: CSV with a commented config header, or one JSON object
// {config, columns, rows, summaries}. Number formatting never touches the
// locale.

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mobius/config.hpp"

namespace mobius {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// `digits` significant digits, shortest form that keeps them ("%.{digits}g"
/// without the locale). Non-finite values print as nan, inf, -inf.
std::string format_double(double v, int digits);

/// v rounded to `digits` significant digits.
double round_significant(double v, int digits);

std::string render_csv(const RunConfig& c, const Table& t);
nlohmann::json render_json(const RunConfig& c, const Table& t, const nlohmann::json& summaries);

/// Writes the artifact to c.path ("-" is stdout). For CSV the summaries go to
/// "<path>.summary.json" next to the file. Throws IoError naming the path.
void write_artifact(const RunConfig& c, const Table& t, const nlohmann::json& summaries);

void write_text(const std::string& path, const std::string& text);

/// Summary statistics {min, max, mean} of every numeric column.
nlohmann::json column_summary(const Table& t, int digits);

}  // namespace mobius
