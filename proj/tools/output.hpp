#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thetaforms::cli {

enum class Format { table, csv };

// Rows of text cells, printed either aligned or as RFC 4180 CSV.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& out, Format format) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_escape(const std::string& cell);

}  // namespace thetaforms::cli
