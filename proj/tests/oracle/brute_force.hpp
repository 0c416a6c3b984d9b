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

#include <vector>

#include "awarebid/scenario.hpp"

// Reference implementation for tests: sweeps the full product space of every
// (bidder, characteristic) atom, hidden ones included, and computes bids,
// winners and surpluses from first principles in rational arithmetic.
namespace oracle {

struct Slot {
  std::vector<mpq_class> values;
  std::vector<mpq_class> probs;
  std::vector<int> cell;  // information cell label per atom
};

struct Case {
  int n = 0, m = 0;
  std::vector<std::vector<Slot>> slots;  // slots[i][j]
  std::vector<unsigned> aware;           // bit j: characteristic j + 1
};

struct Result {
  mpq_class first, second;
  std::vector<mpq_class> perceived, actual, rent, actual_win, perceived_win, hidden_gain;
  mpq_class revenue_fees, revenue_rents;
};

Case from_scenario(const awarebid::Scenario& s, const awarebid::DisclosurePolicy& p);
Result solve(const Case& c);

}  // namespace oracle
