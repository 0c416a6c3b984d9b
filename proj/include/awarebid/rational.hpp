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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace awarebid {

/// Exact rational number. Always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal with optional exponent
/// ("0.125", "-3e-2") into an exact rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// The exact rational value of the shortest decimal that round-trips to `x`,
/// so 0.1 becomes 1/10 rather than the binary expansion of the double.
Rational rational_from_double(double x);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational make_rational(long num, unsigned long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace awarebid
