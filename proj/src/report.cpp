// Copyright 2026 The awarebid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "awarebid/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace awarebid {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void Report::add(std::string field, const Estimate& e, Backend b) {
  ReportRow row;
  row.field = std::move(field);
  row.value = e.exact ? e.exact->get_d() : e.value;
  row.std_error = e.exact ? 0.0 : e.std_error;
  row.exact = e.exact;
  row.backend = std::string(backend_name(b));
  rows_.push_back(std::move(row));
}

void Report::add_number(std::string field, double value, std::string backend) {
  ReportRow row;
  row.field = std::move(field);
  row.value = value;
  row.backend = std::move(backend);
  rows_.push_back(std::move(row));
}

void Report::add_exact(std::string field, const Rational& q, std::string backend) {
  ReportRow row;
  row.field = std::move(field);
  row.value = q.get_d();
  row.exact = q;
  row.backend = std::move(backend);
  rows_.push_back(std::move(row));
}

void Report::add_text(std::string field, std::string text, std::string backend) {
  ReportRow row;
  row.field = std::move(field);
  row.text = std::move(text);
  row.backend = std::move(backend);
  rows_.push_back(std::move(row));
}

const ReportRow* Report::find(std::string_view field) const {
  for (const auto& r : rows_) {
    if (r.field == field) return &r;
  }
  return nullptr;
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "text") return Format::kText;
  return std::nullopt;
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 12);
  return std::string(buf.data(), res.ptr);
}

std::string format_value(const ReportRow& row) {
  if (row.text) return *row.text;
  std::string out = format_number(row.value);
  if (row.exact) {
    const std::string q = to_string(*row.exact);
    if (q != out) out += " [" + q + "]";
  }
  return out;
}

std::string emit(const Report& report, Format format) {
  std::vector<std::array<std::string, 4>> table;
  table.push_back({"field", "value", "stderr", "backend"});
  for (const auto& r : report.rows()) {
    table.push_back({r.field, format_value(r), r.std_error ? format_number(*r.std_error) : "", r.backend});
  }
  std::string out;
  if (format == Format::kCsv) {
    for (const auto& line : table) {
      out += csv_field(line[0]) + "," + csv_field(line[1]) + "," + csv_field(line[2]) + "," + csv_field(line[3]) + "\n";
    }
    return out;
  }
  std::array<std::size_t, 4> width{};
  for (const auto& line : table) {
    for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], line[c].size());
  }
  for (const auto& line : table) {
    std::string row;
    for (std::size_t c = 0; c < 4; ++c) {
      row += line[c];
      if (c + 1 < 4) row += std::string(width[c] - line[c].size() + 2, ' ');
    }
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row + "\n";
  }
  return out;
}

}  // namespace awarebid
