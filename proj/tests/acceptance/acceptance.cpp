// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "peertrust/confidence.hpp"
#include "peertrust/opinion_ledger.hpp"
#include "peertrust/score.hpp"
#include "peertrust/sim/scenario_io.hpp"
#include "peertrust/sim/simulator.hpp"
#include "peertrust/trust.hpp"
#include "support/oracles.hpp"

using namespace peertrust;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome worked_example() {
  Outcome o;
  const auto s = score_interaction(InteractionInputs::sample(), PropertyWeights::defaults(), 0.5);
  o.require(std::abs(s.aggregate - 0.7894) <= 5e-4, fmt::format("I = {:.6f}", s.aggregate));
  o.require(s.classification == Classification::Positive, "not Positive");
  if (o.pass) {
    o.detail = fmt::format("I = {:.4f}, Positive", s.aggregate);
  }
  return o;
}

Outcome relevance_table() {
  Outcome o;
  const double expected[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t k = 0; k < kRelevanceGrades.size(); ++k) {
    const double got = relevance_score(kRelevanceGrades[k]);
    o.require(got == expected[k], fmt::format("{} -> {}", to_token(kRelevanceGrades[k]), got));
  }
  if (o.pass) {
    o.detail = "5/5 grades exact";
  }
  return o;
}

Outcome curve_properties() {
  Outcome o;
  std::mt19937_64 gen(20240601);
  std::uniform_real_distribution<double> ub(0.5, 20.0);
  std::uniform_real_distribution<double> uc(0.05, 3.0);
  std::uniform_real_distribution<double> ut(0.0, 10.0);
  std::uniform_real_distribution<double> step(0.01, 1.0);
  const int samples = 1000;
  for (int k = 0; k < samples && o.pass; ++k) {
    const GompertzParams p{ub(gen), uc(gen)};
    const double t1 = ut(gen);
    const double t2 = t1 + step(gen);
    const std::string at = fmt::format("b={} c={} t={}", p.b(), p.c(), t1);
    const double r1 = response_time_score(p, Hours{t1});
    const double r2 = response_time_score(p, Hours{t2});
    const double g1 = time_gap_score(p, Months{t1});
    const double g2 = time_gap_score(p, Months{t2});
    const double f1 = familiarity_score(p, Years{t1});
    const double f2 = familiarity_score(p, Years{t2});
    for (double v : {r1, r2, g1, g2, f1, f2}) {
      o.require(v > 0.0 && v < 1.0, "range at " + at);
    }
    o.require(r2 < r1, "response not decreasing at " + at);
    o.require(g2 < g1, "gap not decreasing at " + at);
    o.require(f2 > f1, "familiarity not increasing at " + at);
  }

  // Endpoint limits against the analytic values.
  const GompertzCurves d;
  const struct {
    double got;
    double want;
    const char* what;
  } limits[] = {
      {response_time_score(d.response, Hours{0.0}), -std::expm1(-500.0), "response t=0"},
      {response_time_score(d.response, Hours{200.0}), 0.0, "response t=200"},
      {time_gap_score(d.gap, Months{0.0}), -std::expm1(-10.0), "gap t=0"},
      {time_gap_score(d.gap, Months{200.0}), 0.0, "gap t=200"},
      {familiarity_score(d.familiarity, Years{0.0}), std::exp(-10.0), "familiarity t=0"},
      {familiarity_score(d.familiarity, Years{10.0}), 1.0, "familiarity t=10"},
  };
  for (const auto& l : limits) {
    o.require(std::abs(l.got - l.want) <= 1e-8, fmt::format("{}: {} vs {}", l.what, l.got, l.want));
  }
  if (o.pass) {
    o.detail = fmt::format("{} samples, 6 limits within 1e-8", samples);
  }
  return o;
}

Outcome opinion_replay() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 gen(4242);
  const std::vector<std::string> peers{"a", "b", "c", "d", "e"};
  std::uniform_int_distribution<std::size_t> len(1, 200);
  std::uniform_int_distribution<std::size_t> who(0, peers.size() - 1);
  std::uniform_int_distribution<int> op(0, 2);
  std::size_t total_events = 0;
  for (int run = 0; run < 500 && o.pass; ++run) {
    OpinionTable table{NodeId{"owner"}};
    std::vector<testing::LedgerEvent> log;
    std::map<std::string, int> open;
    const std::size_t n = len(gen);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& peer = peers[who(gen)];
      const int o2 = op(gen);
      if (o2 == 0 || open[peer] == 0) {
        table.record_request(NodeId{peer}, static_cast<double>(k));
        ++open[peer];
        log.push_back({peer, testing::LedgerOp::Request});
      } else {
        table.record_outcome(NodeId{peer},
                             o2 == 1 ? Classification::Positive : Classification::Negative,
                             static_cast<double>(k));
        --open[peer];
        log.push_back({peer, o2 == 1 ? testing::LedgerOp::Positive : testing::LedgerOp::Negative});
      }
      for (const auto& [id, e] : table.entries()) {
        o.require(e.opinion >= -1.0 && e.opinion <= 1.0, "opinion out of range");
        o.require(e.weight >= 0.0 && e.weight <= 1.0, "weight out of range");
      }
    }
    total_events += n;
    const auto oracle = testing::fold_ledger(log);
    o.require(oracle.size() == table.entries().size(), "peer sets differ");
    for (const auto& [peer, c] : oracle) {
      const auto e = table.entry(NodeId{peer});
      o.require(e.positive == c.positive && e.negative == c.negative && e.total == c.total &&
                    e.opinion == testing::opinion_of(c) && e.weight == testing::weight_of(c),
                fmt::format("run {} peer {} differs from recount", run, peer));
    }
  }
  const double secs = seconds_since(start);
  o.require(secs < 5.0, fmt::format("took {:.2f} s", secs));
  if (o.pass) {
    o.detail = fmt::format("500 sequences, {} events, {:.3f} s", total_events, secs);
  }
  return o;
}

Outcome otimes_grid() {
  Outcome o;
  int cells = 0;
  int conflicts = 0;
  for (int i = -10; i <= 10; ++i) {
    for (int j = -10; j <= 10; ++j) {
      const double p = i / 10.0;
      const double c = j / 10.0;
      const auto r = combine_otimes(p, c);
      ++cells;
      o.require(r.trust >= -1.0 && r.trust <= 1.0, fmt::format("({}, {}) out of range", p, c));
      if (i == 0) {
        o.require(r.trust == c && !r.conflict, fmt::format("(0, {}) -> {}", c, r.trust));
      }
      if (j == 0) {
        o.require(r.trust == p && !r.conflict, fmt::format("({}, 0) -> {}", p, r.trust));
      }
      if (i != 0 && i == -j) {
        ++conflicts;
        o.require(r.trust == 0.0 && r.conflict, fmt::format("({}, {}) not a conflict", p, c));
      }
    }
  }
  if (o.pass) {
    o.detail = fmt::format("{} cells, {} opposite pairs flagged", cells, conflicts);
  }
  return o;
}

Outcome control_confidence() {
  Outcome o;
  const double cl = control_value(ControlModel::defaults());
  o.require(std::abs(cl - 0.75) <= 1e-12, fmt::format("Cl = {}", cl));

  std::mt19937_64 gen(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> tr(-1.0, 1.0);
  std::uniform_real_distribution<double> cf(-1.0, 2.0);
  for (int k = 0; k < 10000 && o.pass; ++k) {
    const int n = 1 + static_cast<int>(u(gen) * 5);
    std::vector<double> w(n);
    double sum = 0.0;
    for (auto& x : w) {
      x = u(gen) + 1e-3;
      sum += x;
    }
    std::vector<ControlParameter> params;
    for (int i = 0; i < n; ++i) {
      params.push_back({"p" + std::to_string(i), u(gen), w[i] / sum});
    }
    const double c = control_value(ControlModel(params));
    const double conf = confidence(tr(gen), c);
    o.require(c >= 0.0 && c <= 1.0, fmt::format("control {}", c));
    o.require(conf >= -1.0 && conf <= 2.0, fmt::format("confidence {}", conf));

    double a = cf(gen);
    double b = cf(gen);
    if (a > b) {
      std::swap(a, b);
    }
    const double thr = cf(gen);
    o.require(!decide_disclosure(a, thr) || decide_disclosure(b, thr), "not monotone in confidence");
    o.require(!decide_disclosure(thr, b) || decide_disclosure(thr, a), "not antitone in threshold");
  }
  if (o.pass) {
    o.detail = fmt::format("Cl = {:.4f}; 10000 random checks", cl);
  }
  return o;
}

Outcome simulator_determinism() {
  Outcome o;
  const auto scenario = testing::make_stochastic_community(20, 1000, 777);
  const auto start = Clock::now();
  std::set<std::uint64_t> digests;
  std::size_t events = 0;
  for (int k = 0; k < 10; ++k) {
    const auto trace = sim::run_scenario(scenario);
    events = trace.events.size();
    digests.insert(sim::trace_digest(trace));
  }
  const double secs = seconds_since(start);
  o.require(digests.size() == 1, fmt::format("{} distinct digests", digests.size()));
  o.require(secs < 10.0, fmt::format("took {:.2f} s", secs));
  if (o.pass) {
    o.detail = fmt::format("digest {:016x} x10, {} trace events per run, {:.2f} s",
                           *digests.begin(), events, secs);
  }
  return o;
}

Outcome behavioral_limits() {
  Outcome o;
  const auto path = std::filesystem::path(PEERTRUST_SCENARIO_DIR) / "good_vs_bad.json";
  const auto scenario = sim::load_scenario(path);
  const auto trace = sim::run_scenario(scenario);
  const auto& alice = trace.final_tables.at(NodeId{"alice"});
  const double good = alice.entry(NodeId{"good"}).opinion;
  const double bad = alice.entry(NodeId{"bad"}).opinion;
  const double silent = alice.entry(NodeId{"silent"}).opinion;
  o.require(good == 1.0, fmt::format("good = {}", good));
  o.require(bad == -1.0, fmt::format("bad = {}", bad));
  o.require(silent == 0.0, fmt::format("silent = {}", silent));

  // Alice never deals with helper or spoiler, so her gate is not met and
  // any trust she places in them comes from the observer's report.
  const auto t_min = scenario.find(NodeId{"alice"})->t_min;
  int shifted = 0;
  for (const char* subject : {"helper", "spoiler"}) {
    const NodeId sid{subject};
    o.require(alice.entry(sid).total < t_min, fmt::format("alice met t_min for {}", subject));
    double observer_report = 0.0;
    bool have_report = false;
    for (const auto& e : trace.events) {
      if (const auto* r = e.as<sim::OpinionReported>()) {
        if (e.actor == NodeId{"alice"} && e.peer == NodeId{"observer"} && r->subject == sid) {
          observer_report = r->opinion;
          have_report = true;
        }
      }
    }
    o.require(have_report && observer_report != 0.0,
              fmt::format("no nonzero observer report on {}", subject));
    for (const auto& e : trace.events) {
      const auto* ta = e.as<sim::TrustAssessed>();
      if (!ta || e.actor != NodeId{"alice"} || e.peer != sid) {
        continue;
      }
      const auto& a = ta->assessment;
      o.require(a.basis == TrustBasis::Combined, fmt::format("{} not Combined", subject));
      o.require(a.personal == 0.0, fmt::format("alice has a personal opinion of {}", subject));
      o.require(a.trust != 0.0 && std::signbit(a.trust) == std::signbit(observer_report),
                fmt::format("trust in {} = {} vs report {}", subject, a.trust, observer_report));
      ++shifted;
    }
  }
  o.require(shifted == 2, fmt::format("{} trust assessments on helper/spoiler", shifted));
  if (o.pass) {
    o.detail = "good 1, bad -1, silent 0; helper and spoiler follow the observer";
  }
  return o;
}

Outcome claim_honesty() {
  Outcome o;
  o.detail = "the only published numbers (I = 0.7894, Cl = 0.75) are checked by AC1 and AC6; "
             "the rest is property-based";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 worked-example score", worked_example},
      {"AC2 relevance table", relevance_table},
      {"AC3 curve range, monotonicity and limits", curve_properties},
      {"AC4 opinion replay vs recount", opinion_replay},
      {"AC5 combination grid", otimes_grid},
      {"AC6 control and confidence", control_confidence},
      {"AC7 simulator determinism", simulator_determinism},
      {"AC8 behavioral limits", behavioral_limits},
      {"AC9 claim coverage", claim_honesty},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
