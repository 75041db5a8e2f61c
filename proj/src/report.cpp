#include "calabi/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace calabi::report {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("report: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_real(*d) : "null";
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return "\"" + json_escape(std::get<std::string>(c)) + "\"";
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  os << "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n  {" : "\n  {");
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      os << (i ? ", " : "") << "\"" << json_escape(t.columns[i]) << "\": " << json_cell(t.rows[r][i]);
    os << "}";
  }
  os << (t.rows.empty() ? "]\n" : "\n]\n");
}

Table records_table(const std::vector<VerificationRecord>& records) {
  Table t;
  t.columns = {"name", "anchor", "residual", "threshold", "pass", "hard", "applicable"};
  for (const auto& r : records) t.add({r.name, r.anchor, r.residual, r.threshold, r.pass, r.hard, r.applicable});
  return t;
}

}  // namespace calabi::report
