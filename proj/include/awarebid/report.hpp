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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "awarebid/engine.hpp"

namespace awarebid {

/// One output line. Numeric rows carry a value and, for estimates, a
/// standard error; text rows carry only `text`.
struct ReportRow {
  std::string field;
  double value = 0.0;
  std::optional<double> std_error;
  std::optional<Rational> exact;
  std::optional<std::string> text;
  std::string backend;
};

class Report {
 public:
  void add(std::string field, const Estimate& e, Backend b);
  void add_number(std::string field, double value, std::string backend = "-");
  void add_exact(std::string field, const Rational& q, std::string backend = "exact");
  void add_text(std::string field, std::string text, std::string backend = "-");

  const std::vector<ReportRow>& rows() const { return rows_; }
  const ReportRow* find(std::string_view field) const;

 private:
  std::vector<ReportRow> rows_;
};

enum class Format { kCsv, kText };

std::optional<Format> parse_format(std::string_view name);

/// 12 significant digits, shortest form, "C" conventions, no negative zero.
std::string format_number(double x);
/// The value column: text, number, or number followed by [p/q].
std::string format_value(const ReportRow& row);

/// CSV has the header `field,value,stderr,backend`; text is space aligned.
/// Both end every line with LF.
std::string emit(const Report& report, Format format);

}  // namespace awarebid
