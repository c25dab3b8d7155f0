#include "cli/output.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace kstep::cli {

void OutputRecord::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match the column count");
  rows.push_back(std::move(row));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// Display width in code points; ± is the only non-ASCII character we emit.
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

void render_table(const OutputRecord& record, std::ostream& out) {
  std::vector<std::size_t> widths;
  for (const auto& c : record.columns) widths.push_back(display_width(c));
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], display_width(row[i]));
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) text += "  ";
      text += cells[i];
      text.append(widths[i] - display_width(cells[i]), ' ');
    }
    text.erase(text.find_last_not_of(' ') + 1);
    out << text << '\n';
  };
  line(record.columns);
  std::vector<std::string> rule;
  for (std::size_t w : widths) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& row : record.rows) line(row);
  for (const auto& [key, value] : record.certification) out << "# " << key << ": " << value << '\n';
}

void render_csv(const OutputRecord& record, std::ostream& out) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << csv_field(cells[i]);
    }
    out << '\n';
  };
  line(record.columns);
  for (const auto& row : record.rows) line(row);
}

void render_json(const OutputRecord& record, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json header;
  header["command"] = record.command;
  header["parameters"] = ordered_json::object();
  for (const auto& [key, value] : record.parameters) header["parameters"][key] = value;
  header["certification"] = ordered_json::object();
  for (const auto& [key, value] : record.certification) header["certification"][key] = value;
  out << header.dump() << '\n';
  for (const auto& row : record.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[record.columns[i]] = row[i];
    out << obj.dump() << '\n';
  }
}

}  // namespace

void render(const OutputRecord& record, Format format, std::ostream& out) {
  switch (format) {
    case Format::table:
      render_table(record, out);
      break;
    case Format::csv:
      render_csv(record, out);
      break;
    case Format::json:
      render_json(record, out);
      break;
  }
}

std::string render_enclosure(const RealEnclosure& value, int decimals) {
  return value.midpoint().to_fixed(decimals) + " ± " + value.radius().to_scientific(2);
}

std::string render_rational(const mpq_class& value, int decimals) {
  return BigFloat(value, 256, MPFR_RNDN).to_fixed(decimals);
}

}  // namespace kstep::cli
