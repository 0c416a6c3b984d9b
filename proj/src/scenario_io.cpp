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

#include "awarebid/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace awarebid {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ScenarioFileError(path + ": " + message);
}

void allow_keys(const Json& obj, const std::string& path, std::initializer_list<std::string_view> keys) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto k : keys) known = known || k == key;
    if (!known) fail(path, "unknown key \"" + key + "\"");
  }
}

const Json& require(const Json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path, std::string("missing \"") + key + "\"");
  return obj.at(key);
}

Rational read_rational(const Json& v, const std::string& path) {
  try {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) return rational_from_double(v.get<double>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  fail(path, "expected a number or a string such as \"3/4\"");
}

double read_double(const Json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return read_rational(v, path).get_d();
  fail(path, "expected a number");
}

Json write_rational(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(to_string(q));
}

Distribution read_distribution(const Json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected a distribution object");
  const Json& type = require(v, path, "type");
  if (!type.is_string()) fail(path + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  try {
    if (t == "uniform") {
      allow_keys(v, path, {"type", "lo", "hi"});
      return Distribution::uniform(read_rational(require(v, path, "lo"), path + ".lo"),
                                   read_rational(require(v, path, "hi"), path + ".hi"));
    }
    if (t == "normal") {
      allow_keys(v, path, {"type", "mean", "stddev"});
      return Distribution::normal(read_double(require(v, path, "mean"), path + ".mean"),
                                  read_double(require(v, path, "stddev"), path + ".stddev"));
    }
    if (t == "discrete") {
      allow_keys(v, path, {"type", "atoms"});
      const Json& atoms = require(v, path, "atoms");
      if (!atoms.is_array()) fail(path + ".atoms", "expected an array of [value, probability] pairs");
      std::vector<Atom> out;
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        const std::string p = path + ".atoms[" + std::to_string(k) + "]";
        if (!atoms[k].is_array() || atoms[k].size() != 2) fail(p, "expected [value, probability]");
        out.push_back({read_rational(atoms[k][0], p + "[0]"), read_rational(atoms[k][1], p + "[1]")});
      }
      return Distribution::discrete(std::move(out));
    }
  } catch (const DistributionError& e) {
    fail(path, e.what());
  }
  fail(path + ".type", "unknown distribution type \"" + t + "\"");
}

Json write_distribution(const Distribution& d) {
  Json out;
  if (d.is_uniform()) {
    out["type"] = "uniform";
    out["lo"] = write_rational(d.as_uniform().lo);
    out["hi"] = write_rational(d.as_uniform().hi);
  } else if (d.is_normal()) {
    out["type"] = "normal";
    out["mean"] = d.as_normal().mean;
    out["stddev"] = d.as_normal().stddev;
  } else {
    out["type"] = "discrete";
    Json atoms = Json::array();
    for (const auto& a : d.as_discrete().atoms) atoms.push_back(Json::array({write_rational(a.value), write_rational(a.prob)}));
    out["atoms"] = atoms;
  }
  return out;
}

InfoLevel read_level(const Json& v, const std::string& path) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "none") return InfoLevel::none();
    if (s == "full") return InfoLevel::full();
    fail(path, "unknown info level \"" + s + "\"");
  }
  if (v.is_object() && v.size() == 1 && v.contains("cuts") && v.at("cuts").is_array()) {
    std::vector<Rational> cuts;
    for (std::size_t k = 0; k < v.at("cuts").size(); ++k) {
      cuts.push_back(read_rational(v.at("cuts")[k], path + ".cuts[" + std::to_string(k) + "]"));
    }
    return InfoLevel::cuts(std::move(cuts));
  }
  if (v.is_object() && v.size() == 1 && v.contains("groups") && v.at("groups").is_array()) {
    std::vector<int> labels;
    for (const auto& x : v.at("groups")) {
      if (!x.is_number_integer()) fail(path + ".groups", "labels must be integers");
      labels.push_back(x.get<int>());
    }
    return InfoLevel::groups(std::move(labels));
  }
  fail(path, "expected \"none\", \"full\", {\"cuts\": [...]} or {\"groups\": [...]}");
}

Json write_level(const InfoLevel& level) {
  switch (level.kind) {
    case InfoLevel::Kind::kNone:
      return "none";
    case InfoLevel::Kind::kFull:
      return "full";
    case InfoLevel::Kind::kPartition:
      break;
  }
  Json out;
  if (!level.labels.empty()) {
    out["groups"] = level.labels;
  } else {
    Json cuts = Json::array();
    for (const auto& c : level.cutpoints) cuts.push_back(write_rational(c));
    out["cuts"] = cuts;
  }
  return out;
}

int read_char_id(const std::string& text, int m, const std::string& path) {
  int id = 0;
  std::size_t used = 0;
  try {
    id = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || id < 1 || id > m) {
    fail(path, "\"" + text + "\" is not a characteristic id in 1.." + std::to_string(m));
  }
  return id;
}

// Per-bidder map from characteristic id to level.
std::vector<std::vector<std::optional<InfoLevel>>> read_info_rows(const Json& v, const std::string& path, int n,
                                                                  int m) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) fail(path, "expected one object per bidder");
  std::vector<std::vector<std::optional<InfoLevel>>> out(static_cast<std::size_t>(n),
                                                         std::vector<std::optional<InfoLevel>>(static_cast<std::size_t>(m)));
  for (int i = 0; i < n; ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const Json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_object()) fail(p, "expected an object mapping characteristic ids to info levels");
    for (const auto& [key, level] : row.items()) {
      const int j = read_char_id(key, m, p);
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] = read_level(level, p + "." + key);
    }
  }
  return out;
}

}  // namespace

ScenarioFile parse_scenario_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto colon = what.rfind(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw ScenarioFileError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                            ": syntax error: " + what);
  }
  if (!doc.is_object()) fail("$", "expected a JSON object");
  allow_keys(doc, "$", {"bidders", "characteristics", "awareness", "info", "exogenous_info", "estimator"});

  ScenarioFile out;
  Scenario& s = out.scenario;
  const Json& bidders = require(doc, "$", "bidders");
  if (bidders.is_number_unsigned()) {
    s.n_bidders = bidders.get<int>();
  } else if (bidders.is_array()) {
    for (std::size_t i = 0; i < bidders.size(); ++i) {
      if (!bidders[i].is_string()) fail("bidders[" + std::to_string(i) + "]", "expected a name");
      s.bidder_names.push_back(bidders[i].get<std::string>());
    }
    s.n_bidders = static_cast<int>(bidders.size());
  } else {
    fail("bidders", "expected a count or a list of names");
  }
  if (s.n_bidders < 1) fail("bidders", "need at least one bidder");
  const auto n = static_cast<std::size_t>(s.n_bidders);

  const Json& chars = require(doc, "$", "characteristics");
  if (!chars.is_array() || chars.empty()) fail("characteristics", "expected a non-empty list");
  if (chars.size() > static_cast<std::size_t>(AwarenessSet::kMaxCharacteristics)) {
    fail("characteristics", "too many characteristics");
  }
  s.m_characteristics = static_cast<int>(chars.size());
  const auto m = chars.size();
  s.laws.assign(n, std::vector<Distribution>());
  for (std::size_t j = 0; j < m; ++j) {
    const std::string p = "characteristics[" + std::to_string(j) + "]";
    const Json& c = chars[j];
    if (!c.is_object()) fail(p, "expected an object");
    allow_keys(c, p, {"name", "distribution"});
    std::string name;
    if (c.contains("name")) {
      if (!c.at("name").is_string()) fail(p + ".name", "expected a string");
      name = c.at("name").get<std::string>();
    }
    out.characteristic_names.push_back(name);
    const Json& dist = require(c, p, "distribution");
    if (dist.is_array()) {
      if (dist.size() != n) {
        fail(p + ".distribution", "expected " + std::to_string(n) + " entries, one per bidder, got " +
                                      std::to_string(dist.size()));
      }
      for (std::size_t i = 0; i < n; ++i) {
        s.laws[i].push_back(read_distribution(dist[i], p + ".distribution[" + std::to_string(i) + "]"));
      }
    } else {
      const Distribution d = read_distribution(dist, p + ".distribution");
      for (std::size_t i = 0; i < n; ++i) s.laws[i].push_back(d);
    }
  }
  bool named = false;
  for (const auto& nm : out.characteristic_names) named = named || !nm.empty();
  if (!named) out.characteristic_names.clear();
  try {
    validate(s);
  } catch (const ScenarioError& e) {
    fail("characteristics", e.what());
  }

  DisclosurePolicy& p = out.policy;
  p.awareness.assign(n, AwarenessSet::of({1}));
  if (doc.contains("awareness")) {
    const Json& aw = doc.at("awareness");
    if (!aw.is_array() || aw.size() != n) fail("awareness", "expected one list of characteristic ids per bidder");
    for (std::size_t i = 0; i < n; ++i) {
      const std::string path = "awareness[" + std::to_string(i) + "]";
      if (!aw[i].is_array()) fail(path, "expected a list of characteristic ids");
      std::vector<int> ids;
      for (const auto& x : aw[i]) {
        if (!x.is_number_integer() || x.get<long>() < 1 || x.get<long>() > static_cast<long>(m)) {
          fail(path, "characteristic ids must be integers in 1.." + std::to_string(m));
        }
        ids.push_back(x.get<int>());
      }
      p.awareness[i] = AwarenessSet::of(ids);
    }
  }
  p.info.assign(n, std::vector<std::optional<InfoLevel>>(m));
  if (doc.contains("info")) p.info = read_info_rows(doc.at("info"), "info", s.n_bidders, s.m_characteristics);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (p.awareness[i].contains(static_cast<int>(j)) && !p.info[i][j]) p.info[i][j] = InfoLevel::full();
    }
  }

  out.plan = uniform_plan(s.n_bidders, s.m_characteristics, InfoLevel::full());
  if (doc.contains("exogenous_info")) {
    out.has_plan = true;
    const auto rows = read_info_rows(doc.at("exogenous_info"), "exogenous_info", s.n_bidders, s.m_characteristics);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!rows[i][j]) continue;
        const std::string path = "exogenous_info[" + std::to_string(i) + "]." + std::to_string(j + 1);
        try {
          out.plan[i][j] = canonicalize(s.laws[i][j], *rows[i][j]);
        } catch (const DistributionError& e) {
          fail(path, e.what());
        }
      }
    }
  }

  try {
    p = validate(s, p);
  } catch (const ScenarioError& e) {
    fail("policy", e.what());
  } catch (const DistributionError& e) {
    fail("info", e.what());
  }

  if (doc.contains("estimator")) {
    const Json& est = doc.at("estimator");
    if (!est.is_object()) fail("estimator", "expected an object");
    allow_keys(est, "estimator", {"backend", "samples", "seed", "workers"});
    if (est.contains("backend")) {
      const Json& b = est.at("backend");
      if (b == "mc") {
        out.estimator.backend = Backend::kMonteCarlo;
      } else if (b == "exact") {
        out.estimator.backend = Backend::kExact;
      } else {
        fail("estimator.backend", "expected \"mc\" or \"exact\"");
      }
    }
    if (est.contains("samples")) {
      if (!est.at("samples").is_number_unsigned() || est.at("samples").get<std::uint64_t>() == 0) {
        fail("estimator.samples", "expected a positive integer");
      }
      out.estimator.n_samples = est.at("samples").get<std::uint64_t>();
    }
    if (est.contains("seed")) {
      if (!est.at("seed").is_number_unsigned()) fail("estimator.seed", "expected a non-negative integer");
      out.estimator.seed = est.at("seed").get<std::uint64_t>();
    }
    if (est.contains("workers")) {
      if (!est.at("workers").is_number_unsigned() || est.at("workers").get<int>() < 1) {
        fail("estimator.workers", "expected a positive integer");
      }
      out.estimator.workers = est.at("workers").get<int>();
    }
  }
  return out;
}

ScenarioFile parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioFileError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario_text(buf.str());
  } catch (const ScenarioFileError& e) {
    throw ScenarioFileError(path.string() + ": " + e.what());
  }
}

std::string write_scenario(const ScenarioFile& file) {
  const Scenario& s = file.scenario;
  const auto n = static_cast<std::size_t>(s.n_bidders), m = static_cast<std::size_t>(s.m_characteristics);
  Json doc;
  if (s.bidder_names.empty()) {
    doc["bidders"] = s.n_bidders;
  } else {
    doc["bidders"] = s.bidder_names;
  }
  Json chars = Json::array();
  for (std::size_t j = 0; j < m; ++j) {
    Json c;
    if (j < file.characteristic_names.size() && !file.characteristic_names[j].empty()) {
      c["name"] = file.characteristic_names[j];
    }
    bool shared = true;
    for (std::size_t i = 1; i < n; ++i) shared = shared && s.laws[i][j] == s.laws[0][j];
    if (shared) {
      c["distribution"] = write_distribution(s.laws[0][j]);
    } else {
      Json per = Json::array();
      for (std::size_t i = 0; i < n; ++i) per.push_back(write_distribution(s.laws[i][j]));
      c["distribution"] = per;
    }
    chars.push_back(c);
  }
  doc["characteristics"] = chars;
  Json aw = Json::array(), info = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    aw.push_back(file.policy.awareness[i].ids());
    Json row = Json::object();
    for (std::size_t j = 0; j < m; ++j) {
      if (file.policy.info[i][j]) row[std::to_string(j + 1)] = write_level(*file.policy.info[i][j]);
    }
    info.push_back(row);
  }
  doc["awareness"] = aw;
  doc["info"] = info;
  if (file.has_plan) {
    Json plan = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      Json row = Json::object();
      for (std::size_t j = 0; j < m; ++j) row[std::to_string(j + 1)] = write_level(file.plan[i][j]);
      plan.push_back(row);
    }
    doc["exogenous_info"] = plan;
  }
  Json est;
  est["backend"] = std::string(backend_name(file.estimator.backend));
  est["samples"] = file.estimator.n_samples;
  est["seed"] = file.estimator.seed;
  if (file.estimator.workers != 1) est["workers"] = file.estimator.workers;
  doc["estimator"] = est;
  return doc.dump(2) + "\n";
}

}  // namespace awarebid
