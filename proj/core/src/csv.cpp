#include "uniprior/csv.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace uniprior {

std::string format_double17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), columns_(header.size()) {
  if (header.empty()) throw std::invalid_argument("csv header must be nonempty");
  row(header);
  rows_ = 0;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::invalid_argument("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  ++rows_;
}

void CsvWriter::row_numeric(const std::vector<double>& cells) {
  std::vector<std::string> formatted;
  formatted.reserve(cells.size());
  for (double c : cells) formatted.push_back(format_double17(c));
  row(formatted);
}

void write_summary(std::ostream& out, const std::vector<SummaryLine>& lines) {
  out << "check\tstatus\tvalue\tbound\n";
  for (const auto& l : lines) {
    out << l.check << '\t' << (l.passed ? "pass" : "fail") << '\t' << format_double17(l.value)
        << '\t' << format_double17(l.bound) << '\n';
  }
}

}  // namespace uniprior
