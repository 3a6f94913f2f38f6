#include "gittins/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "gittins/errors.hpp"

namespace gittins {

void write_data(std::ostream& out, const DataTable& table, int precision) {
  for (const std::string& c : table.comments) out << "% " << c << '\n';
  out << "% columns:";
  for (const std::string& name : table.columns) out << ' ' << name;
  out << '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.*g", precision, row[i]);
      if (i) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

DataTable read_data(std::istream& in) {
  DataTable table;
  std::string line;
  std::size_t lineno = 0;
  bool have_columns = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[0] == '%') {
      std::string body = line.substr(1);
      const auto start = body.find_first_not_of(' ');
      body = start == std::string::npos ? "" : body.substr(start);
      if (body.rfind("columns:", 0) == 0) {
        std::istringstream names(body.substr(8));
        std::string name;
        table.columns.clear();
        while (names >> name) table.columns.push_back(name);
        have_columns = true;
      } else {
        table.comments.push_back(body);
      }
      continue;
    }
    if (!have_columns) throw FormatError("data row before the columns header", lineno);
    std::istringstream fields(line);
    std::vector<double> row;
    std::string field;
    while (fields >> field) {
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (end == field.c_str() || *end != '\0')
        throw FormatError("non-numeric field '" + field + "' on line " + std::to_string(lineno),
                          lineno);
      row.push_back(v);
    }
    if (row.size() != table.columns.size())
      throw FormatError("line " + std::to_string(lineno) + " has " + std::to_string(row.size()) +
                            " fields, header names " + std::to_string(table.columns.size()),
                        lineno);
    table.rows.push_back(std::move(row));
  }
  if (!have_columns) throw FormatError("missing '% columns:' header", lineno);
  return table;
}

}  // namespace gittins
