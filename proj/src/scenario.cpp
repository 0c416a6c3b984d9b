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

#include "awarebid/scenario.hpp"

#include <algorithm>

namespace awarebid {

AwarenessSet AwarenessSet::of(std::initializer_list<int> ids) { return of(std::vector<int>(ids)); }

AwarenessSet AwarenessSet::of(const std::vector<int>& ids) {
  std::uint32_t bits = 0;
  for (int id : ids) {
    if (id < 1 || id > kMaxCharacteristics) {
      throw ScenarioError("characteristic id " + std::to_string(id) + " out of range");
    }
    bits |= 1u << (id - 1);
  }
  return AwarenessSet(bits);
}

AwarenessSet AwarenessSet::all(int m) {
  return AwarenessSet(m >= 32 ? 0xFFFFFFFFu : ((1u << m) - 1u));
}

std::vector<int> AwarenessSet::ids() const {
  std::vector<int> out;
  for (int j = 0; j < kMaxCharacteristics; ++j) {
    if (contains(j)) out.push_back(j + 1);
  }
  return out;
}

std::string AwarenessSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int id : ids()) {
    s += (first ? "" : ",") + std::to_string(id);
    first = false;
  }
  return s + "}";
}

bool lattice_less(const AwarenessSet& a, const AwarenessSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.ids() < b.ids();
}

std::vector<AwarenessSet> lattice(int m) {
  if (m < 1 || m > AwarenessSet::kMaxCharacteristics) throw ScenarioError("lattice needs 1 <= m <= 32");
  if (m > 24) throw ScenarioError("lattice too large to enumerate");
  std::vector<AwarenessSet> out;
  const std::uint32_t extra = 1u << (m - 1);
  out.reserve(extra);
  for (std::uint32_t r = 0; r < extra; ++r) out.push_back(AwarenessSet::from_bits(1u | (r << 1)));
  std::sort(out.begin(), out.end(), lattice_less);
  return out;
}

int DisclosurePolicy::aware_pairs() const {
  int total = 0;
  for (const auto& a : awareness) total += a.size() - (a.has_default() ? 1 : 0);
  return total;
}

InfoPlan uniform_plan(int n, int m, const InfoLevel& level) {
  return InfoPlan(static_cast<std::size_t>(n), std::vector<InfoLevel>(static_cast<std::size_t>(m), level));
}

DisclosurePolicy policy_from_plan(const std::vector<AwarenessSet>& awareness, const InfoPlan& plan) {
  DisclosurePolicy p;
  p.awareness = awareness;
  p.info.resize(awareness.size());
  for (std::size_t i = 0; i < awareness.size(); ++i) {
    p.info[i].resize(plan[i].size());
    for (std::size_t j = 0; j < plan[i].size(); ++j) {
      if (awareness[i].contains(static_cast<int>(j))) p.info[i][j] = plan[i][j];
    }
  }
  return p;
}

void validate(const Scenario& s) {
  if (s.n_bidders < 1) throw ScenarioError("scenario needs at least one bidder");
  if (s.m_characteristics < 1) throw ScenarioError("scenario needs at least one characteristic");
  if (s.m_characteristics > AwarenessSet::kMaxCharacteristics) throw ScenarioError("too many characteristics");
  if (s.laws.size() != static_cast<std::size_t>(s.n_bidders)) throw ScenarioError("law matrix has wrong row count");
  for (int i = 0; i < s.n_bidders; ++i) {
    if (s.laws[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(s.m_characteristics)) {
      throw ScenarioError("bidder " + std::to_string(i + 1) + ": law matrix row has wrong length");
    }
  }
  if (!s.bidder_names.empty() && s.bidder_names.size() != static_cast<std::size_t>(s.n_bidders)) {
    throw ScenarioError("bidder name list has wrong length");
  }
}

DisclosurePolicy validate(const Scenario& s, const DisclosurePolicy& p) {
  validate(s);
  if (p.awareness.size() != static_cast<std::size_t>(s.n_bidders) ||
      p.info.size() != static_cast<std::size_t>(s.n_bidders)) {
    throw ScenarioError("policy must list every bidder");
  }
  const AwarenessSet universe = AwarenessSet::all(s.m_characteristics);
  DisclosurePolicy out = p;
  for (int i = 0; i < s.n_bidders; ++i) {
    const std::string who = "bidder " + std::to_string(i + 1);
    const AwarenessSet& a = p.aware(i);
    if (!a.has_default()) throw ScenarioError(who + ": awareness set must contain characteristic 1");
    if (!a.subset_of(universe)) throw ScenarioError(who + ": awareness names an unknown characteristic");
    auto& row = out.info[static_cast<std::size_t>(i)];
    if (row.size() != static_cast<std::size_t>(s.m_characteristics)) row.resize(static_cast<std::size_t>(s.m_characteristics));
    for (int j = 0; j < s.m_characteristics; ++j) {
      auto& cell = row[static_cast<std::size_t>(j)];
      const std::string where = who + ", characteristic " + std::to_string(j + 1);
      if (!a.contains(j)) {
        if (cell) throw ScenarioError(where + ": information on unaware characteristic");
        continue;
      }
      if (!cell) cell = InfoLevel::none();
      try {
        *cell = canonicalize(s.law(i, j), *cell);
      } catch (const DistributionError& e) {
        throw ScenarioError(where + ": " + e.what());
      }
    }
  }
  return out;
}

DisclosurePolicy perceive(const DisclosurePolicy& p, const AwarenessSet& view) {
  DisclosurePolicy out = p;
  for (std::size_t k = 0; k < p.awareness.size(); ++k) {
    out.awareness[k] = p.awareness[k] & view;
    for (std::size_t j = 0; j < out.info[k].size(); ++j) {
      if (!out.awareness[k].contains(static_cast<int>(j))) out.info[k][j].reset();
    }
  }
  return out;
}

AwarenessSet full_set(const Scenario& s) { return AwarenessSet::all(s.m_characteristics); }

}  // namespace awarebid
