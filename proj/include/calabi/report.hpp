#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "calabi/record.hpp"

// Locale-independent table output. Reals are written with 17 significant digits.
namespace calabi::report {

using Cell = std::variant<double, long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

std::string format_real(double v);
std::string json_escape(const std::string& s);

void write_csv(std::ostream& os, const Table& t);
// Array of objects keyed by column name.
void write_json(std::ostream& os, const Table& t);

Table records_table(const std::vector<VerificationRecord>& records);

}  // namespace calabi::report
