#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kbonacci/enclosure.hpp"

namespace kstep::cli {

enum class Format { table, csv, json };

using Fields = std::vector<std::pair<std::string, std::string>>;

// One command's result. Column and key order is fixed at construction so
// rendering is byte-for-byte reproducible.
struct OutputRecord {
  std::string command;
  Fields parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Fields certification;

  void add_row(std::vector<std::string> row);
};

// table: aligned columns, then "# key: value" lines for the certification map.
// csv:   header plus rows only; comma separated, LF endings, RFC 4180 quoting.
// json:  one object per line; a header line with command/parameters/
//        certification, then one object per row. All values are strings.
void render(const OutputRecord& record, Format format, std::ostream& out);

// "<midpoint> ± <radius>", midpoint with `decimals` places, radius rounded up
// to two significant digits.
std::string render_enclosure(const RealEnclosure& value, int decimals);

std::string render_rational(const mpq_class& value, int decimals);

}  // namespace kstep::cli
