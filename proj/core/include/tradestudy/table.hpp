#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tradestudy {

enum class TableFormat { text, csv, markdown };
TableFormat parse_table_format(std::string_view text);  // "table", "csv", "md"

/// Preformatted cells. Emitters only lay cells out; every number is turned
/// into text once, by whoever builds the table.
struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Columns right-aligned in text output (numbers).
  std::vector<bool> numeric;
  /// Free-text lines rendered after the rows.
  std::vector<std::string> notes;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string render(const Table& table, TableFormat format);
std::string render_text(const Table& table);
std::string render_csv(const Table& table);
std::string render_markdown(const Table& table);

}  // namespace tradestudy
