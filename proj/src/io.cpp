#include "mobius/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include "mobius/errors.hpp"

namespace mobius {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw InvariantError("table row has " + std::to_string(row.size()) + " cells for " +
                         std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

std::string format_double(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

double round_significant(double v, int digits) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_double(v, digits);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

namespace {

std::string cell_text(const Cell& c, int digits) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d, digits);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c, int digits) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_double(*d, digits);
    return round_significant(*d, digits);
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

std::string render_csv(const RunConfig& c, const Table& t) {
  std::string out;
  for (const auto& [k, v] : config_entries(c)) out += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i], c.precision);
    out += "\n";
  }
  return out;
}

nlohmann::json render_json(const RunConfig& c, const Table& t, const nlohmann::json& summaries) {
  nlohmann::json j;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : config_entries(c)) cfg[k] = v;
  j["config"] = cfg;
  j["columns"] = t.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& cell : row) r.push_back(cell_json(cell, c.precision));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["summaries"] = summaries;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

void write_artifact(const RunConfig& c, const Table& t, const nlohmann::json& summaries) {
  if (c.format == OutputFormat::json) {
    write_text(c.path, render_json(c, t, summaries).dump(2) + "\n");
    return;
  }
  write_text(c.path, render_csv(c, t));
  if (c.path != "-") write_text(c.path + ".summary.json", summaries.dump(2) + "\n");
}

nlohmann::json column_summary(const Table& t, int digits) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    std::size_t n = 0;
    for (const auto& row : t.rows) {
      const auto* d = std::get_if<double>(&row[k]);
      if (!d || !std::isfinite(*d)) continue;
      lo = std::min(lo, *d);
      hi = std::max(hi, *d);
      sum += *d;
      ++n;
    }
    if (n == 0) continue;
    out[t.columns[k]] = {{"min", round_significant(lo, digits)},
                         {"max", round_significant(hi, digits)},
                         {"mean", round_significant(sum / double(n), digits)}};
  }
  return out;
}

}  // namespace mobius
