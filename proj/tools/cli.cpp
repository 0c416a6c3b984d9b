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

#include "awarebid/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "awarebid/disclosure.hpp"
#include "awarebid/fees.hpp"
#include "awarebid/orderstats.hpp"
#include "awarebid/report.hpp"
#include "awarebid/scenario_io.hpp"
#include "awarebid/verify.hpp"

namespace awarebid {
namespace {

// Thrown for inputs that are well-formed flags but unusable values.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string scenario;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
  std::string backend;
  std::string format = "csv";
  std::string regime = "individual";
  int bidder = 0;
  int characteristic = 0;
  int count = 100;
  int workers = 1;
  std::string out_dir;
  std::string claim;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
};

std::string idx(int i) { return std::to_string(i + 1); }

char level_code(const InfoLevel& level) {
  switch (level.kind) {
    case InfoLevel::Kind::kNone:
      return 'N';
    case InfoLevel::Kind::kFull:
      return 'F';
    case InfoLevel::Kind::kPartition:
      return 'P';
  }
  return '?';
}

// Compact policy label: per bidder the aware ids, each followed by its info
// level (F full, N none, P partition); bidders separated by '|'.
std::string policy_label(const DisclosurePolicy& p) {
  std::string out;
  for (std::size_t i = 0; i < p.awareness.size(); ++i) {
    if (i) out += '|';
    for (int id : p.awareness[i].ids()) {
      out += std::to_string(id);
      const auto& level = p.info[i][static_cast<std::size_t>(id - 1)];
      out += level ? level_code(*level) : '?';
    }
  }
  return out;
}

ScenarioFile load(const Options& o) {
  if (o.scenario.empty()) throw InputError("--scenario is required for this command");
  ScenarioFile f = parse_scenario(o.scenario);
  if (o.seed_opt->count()) f.estimator.seed = o.seed;
  if (o.samples_opt->count()) f.estimator.n_samples = o.samples;
  if (o.workers_opt->count()) f.estimator.workers = o.workers;
  if (o.backend == "mc") f.estimator.backend = Backend::kMonteCarlo;
  if (o.backend == "exact") f.estimator.backend = Backend::kExact;
  return f;
}

void revenue_rows(Report& r, const RevenueReport& rev) {
  const Backend b = rev.backend;
  r.add("first_order", rev.first_order, b);
  r.add("second_order", rev.second_order, b);
  for (std::size_t i = 0; i < rev.fees.bidders.size(); ++i) {
    r.add("fee." + idx(static_cast<int>(i)), rev.fees.bidders[i].fee, b);
    r.add("rent." + idx(static_cast<int>(i)), rev.fees.bidders[i].rent, b);
  }
  r.add("total_revenue", rev.total_revenue, b);
  r.add("revenue_via_rents", rev.revenue_via_rents, b);
  r.add("consistency_residual", rev.consistency_residual, b);
}

Report cmd_fees(const Options& o) {
  const ScenarioFile f = load(o);
  const FeeSchedule fees = entry_fees(f.scenario, f.policy, f.estimator);
  Report r;
  for (std::size_t i = 0; i < fees.bidders.size(); ++i) {
    const std::string k = idx(static_cast<int>(i));
    r.add("fee." + k, fees.bidders[i].fee, fees.backend);
    r.add("fee_fullview." + k, fees.bidders[i].fee_fullview, fees.backend);
    r.add("rent." + k, fees.bidders[i].rent, fees.backend);
  }
  return r;
}

Report cmd_revenue(const Options& o) {
  const ScenarioFile f = load(o);
  Report r;
  revenue_rows(r, revenue(f.scenario, f.policy, f.estimator));
  return r;
}

Report cmd_curse(const Options& o) {
  const ScenarioFile f = load(o);
  const CurseReport c = curse_gap(f.scenario, f.policy, f.estimator);
  Report r;
  for (std::size_t i = 0; i < c.bidders.size(); ++i) {
    const std::string k = idx(static_cast<int>(i));
    const CurseLine& l = c.bidders[i];
    r.add("perceived_payoff." + k, l.perceived_payoff, c.backend);
    r.add("actual_payoff." + k, l.actual_payoff, c.backend);
    r.add("curse_gap." + k, l.gap, c.backend);
    r.add("win_probability." + k, l.win_probability, c.backend);
    r.add("independent_gap." + k, l.independent_gap, c.backend);
    r.add_text("fully_aware." + k, l.fully_aware ? "yes" : "no");
  }
  return r;
}

Report cmd_orderstats(const Options& o) {
  const ScenarioFile f = load(o);
  const Scenario& s = f.scenario;
  std::vector<ValuationLaw> laws;
  for (int i = 0; i < s.n_bidders; ++i) {
    laws.push_back(valuation_law(s, f.policy, i, AwarenessSet::all(s.m_characteristics)));
  }
  Report r;
  constexpr double kAgreement = 1e-9;
  const char* names[] = {"first_order", "second_order"};
  for (int rank = 1; rank <= std::min(2, s.n_bidders); ++rank) {
    const OrderStatLaw law = order_cdf(laws, rank);
    const Moment analytic = expected_order_stat(law);
    const Moment quad = expected_order_stat_quadrature(law);
    const std::string name = names[rank - 1];
    if (analytic.exact) {
      r.add_exact(name, *analytic.exact, "analytic");
    } else {
      r.add_number(name, analytic.value, "quadrature");
    }
    r.add_number(name + ".quadrature", quad.value, "quadrature");
    r.add_text(name + ".agree_1e-9", std::abs(analytic.value - quad.value) <= kAgreement ? "yes" : "no");
  }
  // Two bidders whose valuations are normal: the closed form for the maximum.
  bool normal = s.n_bidders == 2;
  std::vector<std::pair<double, double>> moments;
  for (int i = 0; i < s.n_bidders && normal; ++i) {
    double mu = 0, var = 0;
    for (int j : f.policy.aware(i).ids()) {
      const Distribution& d = s.law(i, j - 1);
      const InfoLevel& level = f.policy.level(i, j - 1);
      if (!d.is_normal() || level.kind == InfoLevel::Kind::kPartition) {
        normal = false;
        break;
      }
      mu += d.as_normal().mean;
      if (level.kind == InfoLevel::Kind::kFull) var += d.as_normal().stddev * d.as_normal().stddev;
    }
    moments.emplace_back(mu, var);
  }
  if (normal && (moments[0].second > 0 || moments[1].second > 0)) {
    r.add_number("first_order.closed_form",
                 clark_normal_max(moments[0].first, moments[0].second, moments[1].first, moments[1].second),
                 "analytic");
  }
  return r;
}

Regime regime_of(const Options& o) {
  const auto r = parse_regime(o.regime);
  if (!r) throw InputError("unknown regime \"" + o.regime + "\"");
  return *r;
}

Report cmd_optimize(const Options& o) {
  const ScenarioFile f = load(o);
  OptimizeConfig oc;
  oc.estimator = f.estimator;
  oc.plan = f.plan;
  const OptimizeResult res = optimize(f.scenario, regime_of(o), oc);
  Report r;
  r.add_text("regime", std::string(regime_name(res.regime)));
  r.add_text("search", res.exhaustive ? "exhaustive" : "greedy");
  r.add_number("candidates", static_cast<double>(res.trace.size()));
  r.add_text("best_policy", policy_label(res.best));
  for (int i = 0; i < f.scenario.n_bidders; ++i) r.add_text("awareness." + idx(i), res.best.aware(i).to_string());
  revenue_rows(r, res.report);
  for (const auto& t : res.trace) r.add("candidate." + policy_label(t.policy), t.revenue, res.report.backend);
  return r;
}

Report cmd_tradeoff(const Options& o) {
  const ScenarioFile f = load(o);
  const Scenario& s = f.scenario;
  if (o.bidder < 1 || o.bidder > s.n_bidders) throw InputError("--bidder must be in 1.." + std::to_string(s.n_bidders));
  if (o.characteristic < 2 || o.characteristic > s.m_characteristics) {
    throw InputError("--char must be in 2.." + std::to_string(s.m_characteristics));
  }
  const int t = o.bidder - 1, ell = o.characteristic - 1;
  const InfoLevel level = f.plan[static_cast<std::size_t>(t)][static_cast<std::size_t>(ell)];
  const TradeoffBreakdown tb = check_tradeoff(s, f.policy, t, ell, f.estimator, level);
  const Backend b = f.estimator.backend;
  Report r;
  r.add("delta_first_order_stat", tb.delta_first_order_stat, b);
  r.add("delta_rents_remaining_unaware", tb.delta_rents_remaining_unaware, b);
  r.add("lost_rent_newly_aware", tb.lost_rent_newly_aware, b);
  r.add_text("decision", tb.raise ? "raise" : "keep");
  r.add("revenue_before", tb.revenue_before, b);
  r.add("revenue_after", tb.revenue_after, b);
  return r;
}

VerifyConfig verify_config(const Options& o) {
  VerifyConfig vc;
  if (o.backend == "mc") vc.estimator.backend = Backend::kMonteCarlo;
  vc.estimator.seed = o.seed;
  if (o.samples_opt->count()) vc.estimator.n_samples = o.samples;
  vc.workers = o.workers;
  return vc;
}

std::vector<CorpusScenario> corpus_of(const Options& o) {
  if (o.count < 0) throw InputError("--count must be non-negative");
  CorpusConfig cc;
  cc.seed = o.seed;
  cc.count = o.count;
  return generate_corpus(cc);
}

std::string margin_text(const Estimate& e) {
  return e.exact ? to_string(*e.exact) : format_number(e.value);
}

Report cmd_verify(const Options& o, bool& failed) {
  const VerificationReport rep = verify_suite(corpus_of(o), verify_config(o));
  Report r;
  r.add_number("scenarios", rep.scenarios);
  int failing_claims = 0;
  for (const auto& s : rep.summary()) {
    const std::string c(claim_name(s.claim));
    r.add_number(c + ".instances", s.instances);
    r.add_number(c + ".hypothesis_met", s.hypothesis_met);
    r.add_number(c + ".holds", s.holds);
    r.add_number(c + ".fails", s.fails);
    r.add_number(c + ".inconclusive", s.inconclusive);
    if (s.first_failure) {
      ++failing_claims;
      r.add_text(c + ".first_failure", "scenario " + std::to_string(s.first_failure->scenario_id) + ": " +
                                           s.first_failure->detail + " (margin " +
                                           margin_text(s.first_failure->margin) + ")");
    }
  }
  r.add_number("greedy_mismatches", static_cast<double>(rep.greedy_mismatches.size()));
  r.add_number("failing_claims", failing_claims);
  failed = rep.failed();
  r.add_text("status", failed ? "FAIL" : "PASS");
  return r;
}

ScenarioFile file_of(const CorpusScenario& sc) {
  ScenarioFile f;
  f.scenario = sc.scenario;
  f.policy = sc.policy;
  f.plan = sc.plan;
  f.has_plan = true;
  f.estimator.backend = Backend::kExact;
  return f;
}

Report cmd_generate(const Options& o, std::ostream& out, bool& printed) {
  const auto corpus = corpus_of(o);
  Report r;
  if (o.out_dir.empty()) {
    if (corpus.size() != 1) throw InputError("--out is required unless --count is 1");
    out << write_scenario(file_of(corpus[0]));
    printed = true;
    return r;
  }
  std::filesystem::create_directories(o.out_dir);
  for (const auto& sc : corpus) {
    std::ostringstream name;
    name << "scenario_" << std::setw(4) << std::setfill('0') << sc.id << ".json";
    const std::filesystem::path path = std::filesystem::path(o.out_dir) / name.str();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path.string());
    f << write_scenario(file_of(sc));
    r.add_text("file." + std::to_string(sc.id), path.string());
  }
  return r;
}

Report cmd_counterexamples(const Options& o) {
  const auto kind = parse_counterexample(o.claim);
  if (!kind) throw InputError("unknown --claim \"" + o.claim + "\"; expected raise-negative-mean or keep-unaware-converse");
  std::vector<CorpusScenario> corpus;
  VerifyConfig vc = verify_config(o);
  if (!o.scenario.empty()) {
    const ScenarioFile f = load(o);
    vc.estimator = f.estimator;
    corpus.push_back({0, f.scenario, f.plan, f.policy});
  } else {
    corpus = corpus_of(o);
  }
  const auto found = counterexample_search(*kind, corpus, vc);
  Report r;
  r.add_number("found", static_cast<double>(found.size()));
  for (std::size_t k = 0; k < found.size(); ++k) {
    r.add(std::to_string(k + 1) + ".scenario_" + std::to_string(found[k].scenario_id) + ": " + found[k].description,
          found[k].margin, vc.estimator.backend);
  }
  return r;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Second-price auctions with entry fees and bidder unawareness", "awarebid"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool needs_scenario) {
    if (needs_scenario) sub->add_option("--scenario", o.scenario, "scenario JSON file")->required();
    o.seed_opt = sub->add_option("--seed,--corpus-seed", o.seed, "random seed");
    o.samples_opt = sub->add_option("--samples", o.samples, "Monte Carlo draws");
    sub->add_option("--backend", o.backend, "mc or exact")->check(CLI::IsMember({"mc", "exact"}));
    sub->add_option("--format", o.format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
    o.workers_opt = sub->add_option("--workers", o.workers, "parallel workers")->check(CLI::PositiveNumber);
  };
  auto* fees = app.add_subcommand("fees", "optimal entry fees and unawareness rents");
  common(fees, true);
  auto* rev = app.add_subcommand("revenue", "expected revenue by both decompositions");
  common(rev, true);
  auto* curse = app.add_subcommand("curse", "perceived versus actual winner payoff");
  common(curse, true);
  auto* os = app.add_subcommand("orderstats", "analytic expected order statistics");
  common(os, true);
  auto* opt = app.add_subcommand("optimize", "best disclosure policy under a regime");
  common(opt, true);
  opt->add_option("--regime", o.regime, "individual, public-no-info, public-full-info or common-free-info")
      ->check(CLI::IsMember({"individual", "public-no-info", "public-full-info", "common-free-info"}));
  auto* trade = app.add_subcommand("tradeoff", "effect of making one more bidder aware of a characteristic");
  common(trade, true);
  trade->add_option("--bidder", o.bidder, "bidder to make aware (1-based)")->required();
  trade->add_option("--char", o.characteristic, "characteristic id")->required();
  auto* ver = app.add_subcommand("verify", "check the revenue claims on a random discrete corpus");
  common(ver, false);
  ver->add_option("--count", o.count, "corpus size");
  auto* gen = app.add_subcommand("generate", "write random discrete scenario files");
  common(gen, false);
  gen->add_option("--count", o.count, "number of scenarios");
  gen->add_option("--out", o.out_dir, "output directory");
  auto* cex = app.add_subcommand("counterexamples", "search for scenarios stressing the converse directions");
  cex->add_option("--claim", o.claim, "raise-negative-mean or keep-unaware-converse")->required();
  cex->add_option("--count", o.count, "corpus size");
  common(cex, false);
  cex->add_option("--scenario", o.scenario, "search this scenario instead of a random corpus");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    Report report;
    bool failed = false, printed = false;
    if (fees->parsed()) report = cmd_fees(o);
    if (rev->parsed()) report = cmd_revenue(o);
    if (curse->parsed()) report = cmd_curse(o);
    if (os->parsed()) report = cmd_orderstats(o);
    if (opt->parsed()) report = cmd_optimize(o);
    if (trade->parsed()) report = cmd_tradeoff(o);
    if (ver->parsed()) report = cmd_verify(o, failed);
    if (gen->parsed()) report = cmd_generate(o, out, printed);
    if (cex->parsed()) report = cmd_counterexamples(o);
    if (!printed) out << emit(report, *parse_format(o.format));
    return failed ? kExitVerificationFailed : kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace awarebid
