#include "tradestudy/table.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "tradestudy/errors.hpp"

namespace tradestudy {

namespace {

std::size_t columns(const Table& t) {
  std::size_t n = t.header.size();
  for (const auto& r : t.rows) n = std::max(n, r.size());
  return n;
}

const std::string& cell(const std::vector<std::string>& row, std::size_t i) {
  static const std::string empty;
  return i < row.size() ? row[i] : empty;
}

bool is_numeric(const Table& t, std::size_t i) { return i < t.numeric.size() && t.numeric[i]; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

TableFormat parse_table_format(std::string_view text) {
  if (text == "table" || text == "text") return TableFormat::text;
  if (text == "csv") return TableFormat::csv;
  if (text == "md" || text == "markdown") return TableFormat::markdown;
  throw ParseError(fmt::format("unknown format '{}' (expected table, csv or md)", text));
}

std::string render(const Table& table, TableFormat format) {
  switch (format) {
    case TableFormat::text: return render_text(table);
    case TableFormat::csv: return render_csv(table);
    case TableFormat::markdown: return render_markdown(table);
  }
  return {};
}

std::string render_text(const Table& t) {
  const std::size_t n = columns(t);
  std::vector<std::size_t> width(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    width[i] = cell(t.header, i).size();
    for (const auto& r : t.rows) width[i] = std::max(width[i], cell(r, i).size());
  }
  auto line = [&](const std::vector<std::string>& row) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) out += "  ";
      out += is_numeric(t, i) ? fmt::format("{:>{}}", cell(row, i), width[i])
                              : fmt::format("{:<{}}", cell(row, i), width[i]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };

  std::string out;
  if (!t.title.empty()) out += t.title + "\n";
  if (!t.header.empty()) {
    out += line(t.header);
    std::string rule;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) rule += "  ";
      rule += std::string(width[i], '-');
    }
    out += rule + "\n";
  }
  for (const auto& r : t.rows) out += line(r);
  for (const auto& n : t.notes) out += n + "\n";
  return out;
}

std::string render_csv(const Table& t) {
  const std::size_t n = columns(t);
  std::string out;
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i) out += ',';
      out += csv_field(cell(row, i));
    }
    out += '\n';
  };
  if (!t.title.empty()) out += "# " + t.title + "\n";
  if (!t.header.empty()) line(t.header);
  for (const auto& r : t.rows) line(r);
  for (const auto& n : t.notes) out += "# " + n + "\n";
  return out;
}

std::string render_markdown(const Table& t) {
  const std::size_t n = columns(t);
  std::string out;
  if (!t.title.empty()) out += "### " + t.title + "\n\n";
  auto line = [&](const std::vector<std::string>& row) {
    out += "|";
    for (std::size_t i = 0; i < n; ++i) out += " " + md_cell(cell(row, i)) + " |";
    out += "\n";
  };
  line(t.header);
  out += "|";
  for (std::size_t i = 0; i < n; ++i) out += is_numeric(t, i) ? " ---: |" : " --- |";
  out += "\n";
  for (const auto& r : t.rows) line(r);
  if (!t.notes.empty()) {
    out += "\n";
    for (const auto& n : t.notes) out += "- " + n + "\n";
  }
  return out;
}

}  // namespace tradestudy
