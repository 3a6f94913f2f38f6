#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

namespace gittins {

// Neumaier-compensated running sum.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Whitespace-separated numeric table in the '%'-commented data-file format:
//   % <comment>
//   % columns: <name> <name> ...
//   <value> <value> ...
struct DataTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Values are written with 10 significant digits unless `precision` says otherwise.
void write_data(std::ostream& out, const DataTable& table, int precision = 10);

// Throws FormatError (with line number) on rows whose width differs from the header or
// on non-numeric fields, and when no "columns:" header is present.
DataTable read_data(std::istream& in);

}  // namespace gittins
