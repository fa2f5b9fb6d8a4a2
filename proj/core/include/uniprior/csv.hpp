#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uniprior {

/* shortest round-trippable decimal for a double */
std::string format_double17(double v);

/*
 * Minimal comma-separated writer: fixed header, one row() call per line.
 * Numeric cells go through format_double17 so reruns are byte-identical.
 */
class CsvWriter {
public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  void row_numeric(const std::vector<double>& cells);
  std::size_t rows_written() const { return rows_; }

private:
  std::ostream& out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

struct SummaryLine {
  std::string check;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
};

/* tab-separated: check, pass|fail, value, bound */
void write_summary(std::ostream& out, const std::vector<SummaryLine>& lines);

}  // namespace uniprior
