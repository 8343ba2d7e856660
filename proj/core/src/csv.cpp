#include "validus/csv.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "validus/error.hpp"

namespace validus {

std::vector<CsvRow> read_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF"))
    text.remove_prefix(3);
  std::vector<CsvRow> rows;
  CsvRow row{1, {}};
  std::string field;
  std::size_t line = 1;
  bool quoted = false, field_started = false;
  std::size_t quote_line = 0;

  auto end_field = [&] {
    row.cells.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    // A blank line is not a record.
    if (!(row.cells.size() == 1 && row.cells.front().empty()))
      rows.push_back(std::move(row));
    row = CsvRow{line, {}};
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n')
          ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
    case '"':
      if (!field_started && field.empty()) {
        quoted = true;
        field_started = true;
        quote_line = line;
      } else {
        field += c;
      }
      break;
    case ',':
      end_field();
      break;
    case '\r':
      if (i + 1 < text.size() && text[i + 1] == '\n')
        break;
      ++line;
      end_row();
      break;
    case '\n':
      ++line;
      end_row();
      break;
    default:
      field += c;
      field_started = true;
    }
  }
  if (quoted)
    throw CsvError(quote_line, "unterminated quoted field");
  if (field_started || !field.empty() || !row.cells.empty())
    end_row();
  return rows;
}

std::string write_csv_row(const std::vector<std::string> &cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0)
      out += ',';
    const auto &cell = cells[i];
    if (cell.find_first_of(",\"\r\n") == std::string::npos) {
      out += cell;
      continue;
    }
    out += '"';
    for (char c : cell) {
      if (c == '"')
        out += '"';
      out += c;
    }
    out += '"';
  }
  out += '\n';
  return out;
}

std::vector<DataPoint> ingest_table(const std::string &table, std::string_view text,
                                    const std::string &unit_column,
                                    const std::optional<std::string> &time_column) {
  const auto rows = read_csv(text);
  if (rows.empty())
    throw CsvError(1, "missing header");
  const auto &header = rows.front().cells;
  auto column = [&](const std::string &name) -> std::optional<std::size_t> {
    const auto it = std::ranges::find(header, name);
    if (it == header.end())
      return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto unit_at = column(unit_column);
  if (!unit_at)
    throw CsvError(rows.front().line, "no unit column '" + unit_column + "'");
  const auto time_found = time_column ? column(*time_column) : std::nullopt;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  const std::size_t time_at = time_found.value_or(kNone);
  std::set<std::string> seen;
  for (const auto &name : header) {
    if (name.empty())
      throw CsvError(rows.front().line, "empty column name");
    if (!seen.insert(name).second)
      throw CsvError(rows.front().line, "column '" + name + "' appears twice");
  }

  std::vector<DataPoint> points;
  std::set<std::pair<std::string, std::optional<std::string>>> records;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto &row = rows[r];
    if (row.cells.size() != header.size())
      throw CsvError(row.line, "expected " + std::to_string(header.size()) + " fields, found " +
                                   std::to_string(row.cells.size()));
    const std::string &unit = row.cells[*unit_at];
    if (unit.empty())
      throw CsvError(row.line, "empty unit identifier");
    std::optional<std::string> time;
    if (time_at != kNone) {
      time = row.cells[time_at];
      if (time->empty())
        throw CsvError(row.line, "empty time identifier");
    }
    if (!records.emplace(unit, time).second)
      throw DuplicateKey("(" + table + ", " + (time ? *time + ", " : "") + unit + ")");
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == *unit_at || c == time_at)
        continue;
      points.push_back({Key{table, time, unit, header[c]}, parse_cell(row.cells[c])});
    }
  }
  return points;
}

std::string export_table(const Dataset &dataset, const std::string &table,
                         const std::string &unit_column,
                         const std::optional<std::string> &time_column) {
  std::set<std::string> variables;
  bool timed = false;
  std::map<std::pair<std::string, std::optional<std::string>>,
           std::map<std::string, const Value *>>
      records;
  for (const auto &[key, value] : dataset.points()) {
    if (key.table != table)
      continue;
    variables.insert(key.variable);
    timed = timed || key.time.has_value();
    records[{key.unit, key.time}][key.variable] = &value;
  }
  std::vector<std::pair<std::string, std::optional<std::string>>> order;
  for (const auto &[record, cells] : records)
    order.push_back(record);
  std::ranges::sort(order, [](const auto &a, const auto &b) {
    if (a.first != b.first)
      return id_less(a.first, b.first);
    if (!a.second || !b.second)
      return !a.second && b.second;
    return id_less(*a.second, *b.second);
  });

  timed = timed && time_column.has_value();
  std::vector<std::string> header{unit_column};
  if (timed)
    header.push_back(*time_column);
  header.insert(header.end(), variables.begin(), variables.end());
  std::string out = write_csv_row(header);
  for (const auto &record : order) {
    std::vector<std::string> row{record.first};
    if (timed)
      row.push_back(record.second.value_or(""));
    const auto &cells = records.at(record);
    for (const auto &variable : variables) {
      const auto it = cells.find(variable);
      row.push_back(it == cells.end() ? "" : to_string(*it->second));
    }
    out += write_csv_row(row);
  }
  return out;
}

} // namespace validus
