#include "peertrust/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "peertrust/csv.hpp"
#include "peertrust/errors.hpp"
#include "peertrust/score.hpp"
#include "peertrust/sim/scenario_io.hpp"
#include "peertrust/sim/simulator.hpp"
#include "peertrust/trust.hpp"

namespace peertrust::cli {

namespace {

// Signals a bad flag value; the message already names the flag.
struct FlagError {
  std::string message;
};

struct WriteError {
  std::string message;
};

double nonneg_flag(double v, const char* flag) {
  if (!std::isfinite(v) || v < 0.0) {
    throw FlagError{std::string(flag) + ": must be a finite nonnegative number"};
  }
  return v;
}

GompertzParams curve_flag(double b, double c, const char* b_flag, const char* c_flag) {
  if (!std::isfinite(b) || b <= 0.0) {
    throw FlagError{std::string(b_flag) + ": must be positive"};
  }
  if (!std::isfinite(c) || c <= 0.0) {
    throw FlagError{std::string(c_flag) + ": must be positive"};
  }
  return GompertzParams{b, c};
}

PrivilegeLevel reciprocity_flag(const std::string& text, int min_level) {
  const auto slash = text.find('/');
  int level = 0;
  int max_level = 0;
  auto parse_int = [](std::string_view s, int& v) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
  };
  if (slash == std::string::npos || !parse_int(std::string_view(text).substr(0, slash), level) ||
      !parse_int(std::string_view(text).substr(slash + 1), max_level)) {
    throw FlagError{"--reciprocity: expected LEVEL/MAX, e.g. 9/10"};
  }
  try {
    return PrivilegeLevel{level, min_level, max_level};
  } catch (const Error& e) {
    throw FlagError{std::string("--reciprocity: ") + e.what()};
  }
}

template <typename F>
void write_file(const std::filesystem::path& path, F&& body) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw WriteError{"cannot open " + path.string() + " for writing"};
  }
  body(os);
  os.flush();
  if (!os) {
    throw WriteError{"failed writing " + path.string()};
  }
}

sim::RunReport write_outputs(const sim::SimulationTrace& trace, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "tables", ec);
  if (ec) {
    throw WriteError{"cannot create " + (dir / "tables").string() + ": " + ec.message()};
  }
  auto report = sim::build_report(trace);

  const auto trace_path = dir / "trace.jsonl";
  write_file(trace_path, [&](std::ostream& os) { sim::write_trace_jsonl(os, trace.events); });
  report.outputs.push_back(trace_path);

  const auto matrix_path = dir / "trust_matrix.csv";
  write_file(matrix_path, [&](std::ostream& os) { write_trust_matrix_csv(os, trace.trust_matrix); });
  report.outputs.push_back(matrix_path);

  for (const auto& [owner, table] : trace.final_tables) {
    const auto path = dir / "tables" / (owner.str() + ".csv");
    write_file(path, [&](std::ostream& os) { write_table_csv(os, table); });
    report.outputs.push_back(path);
  }

  const auto summary_path = dir / "summary.json";
  report.outputs.push_back(summary_path);
  write_file(summary_path,
             [&](std::ostream& os) { os << sim::report_to_json(report).dump(2) << '\n'; });
  return report;
}

void print_report(std::ostream& out, const sim::RunReport& r, std::uint64_t seed) {
  out << fmt::format("seed {}  digest {:016x}\n", seed, r.digest);
  out << fmt::format("requests {}  positive {}  negative {}  timeouts {}  pending {}  conflicts {}\n",
                     r.requests, r.positive, r.negative, r.timeouts, r.pending, r.conflicts);
  for (const auto& p : r.pairs) {
    if (p.entry.total == 0) {
      continue;
    }
    out << fmt::format("  {} -> {}  opinion {}  ({}/{}/{})  trust {}  confidence {}  share {}\n",
                       p.trustor.str(), p.trustee.str(), format_fixed4(p.entry.opinion),
                       p.entry.positive, p.entry.negative, p.entry.total,
                       format_fixed4(p.trust.trust), format_fixed4(p.confidence.confidence),
                       p.confidence.share ? "yes" : "no");
  }
}

}  // namespace

int cmd_score(const ScoreOptions& o, std::ostream& out, std::ostream& err) {
  InteractionInputs in;
  PropertyWeights weights = PropertyWeights::defaults();
  try {
    in.response_elapsed = Hours{nonneg_flag(o.elapsed_hours, "--elapsed-hours")};
    in.gap_since_previous = Months{nonneg_flag(o.gap_months, "--gap-months")};
    in.acquaintance_age = Years{nonneg_flag(o.age_years, "--age-years")};
    in.privilege = reciprocity_flag(o.reciprocity, o.reciprocity_min);
    auto grade = parse_relevance(o.relevance);
    if (!grade) {
      throw FlagError{"--relevance: expected one of not_at_all, may_not, cant_say, "
                      "to_some_extent, fully"};
    }
    in.relevance = *grade;
    in.curves.response = curve_flag(o.response_b, o.response_c, "--response-b", "--response-c");
    in.curves.gap = curve_flag(o.gap_b, o.gap_c, "--gap-b", "--gap-c");
    in.curves.familiarity =
        curve_flag(o.familiarity_b, o.familiarity_c, "--familiarity-b", "--familiarity-c");
    if (o.weights.size() != kPropertyCount) {
      throw FlagError{"--weights: expected five comma-separated values"};
    }
    try {
      weights = PropertyWeights({o.weights[0], o.weights[1], o.weights[2], o.weights[3],
                                 o.weights[4]});
    } catch (const Error& e) {
      throw FlagError{std::string("--weights: ") + e.what()};
    }
    if (!(o.threshold >= 0.0 && o.threshold <= 1.0)) {
      throw FlagError{"--threshold: must lie in [0, 1]"};
    }
  } catch (const FlagError& e) {
    err << "error: " << e.message << '\n';
    return kExitInput;
  }

  const auto score = score_interaction(in, weights, o.threshold);
  for (std::size_t k = 0; k < kPropertyCount; ++k) {
    out << fmt::format("I{} {:<14} {}\n", k + 1, to_token(static_cast<Property>(k)),
                       format_fixed4(score.scores[k]));
  }
  out << "I = " << format_fixed4(score.aggregate) << '\n';
  out << to_string(*score.classification) << '\n';
  return kExitOk;
}

int cmd_trust(const TrustOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<TableRow> rows;
  std::vector<OpinionReport> reports;
  auto read = [&](const std::filesystem::path& path, auto&& parse) {
    std::ifstream is(path);
    if (!is) {
      throw FlagError{"cannot open " + path.string()};
    }
    try {
      parse(is);
    } catch (const Error& e) {
      throw FlagError{path.string() + ": " + e.what()};
    }
  };

  TrustAssessment result;
  try {
    if (o.t_min < 1) {
      throw FlagError{"--t-min: must be at least 1"};
    }
    read(o.table, [&](std::istream& is) { rows = read_table_csv(is); });
    read(o.reports, [&](std::istream& is) { reports = read_reports_csv(is); });

    const TableRow* row = nullptr;
    if (o.subject) {
      for (const auto& r : rows) {
        if (r.node.str() == *o.subject) {
          row = &r;
        }
      }
      if (!row) {
        throw FlagError{"--subject: no row for '" + *o.subject + "' in " + o.table.string()};
      }
    } else if (rows.size() == 1) {
      row = &rows.front();
    } else {
      throw FlagError{"--subject: required when the table has " + std::to_string(rows.size()) +
                      " rows"};
    }

    for (const auto& r : reports) {
      if (r.subject != row->node) {
        throw FlagError{o.reports.string() + ": report by " + r.reporter.str() + " is about " +
                        r.subject.str() + ", not " + row->node.str()};
      }
    }
    if (o.trustor) {
      reports = exclude_self_reports(NodeId{*o.trustor}, row->node, reports);
    }
    result = assess_trust(row->entry, reports, o.t_min);
  } catch (const FlagError& e) {
    err << "error: " << e.message << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  out << "personal  " << format_fixed4(result.personal) << '\n';
  out << "community " << (result.community ? format_fixed4(*result.community) : "-") << '\n';
  out << "trust     " << format_fixed4(result.trust) << '\n';
  out << "basis     " << to_token(result.basis) << '\n';
  out << "conflict  " << (result.conflict ? "yes" : "no") << '\n';
  return kExitOk;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err,
                 std::vector<sim::RunReport>* reports) {
  sim::Scenario scenario;
  try {
    scenario = sim::load_scenario(o.scenario);
  } catch (const ValidationError& e) {
    err << "error: " << o.scenario.string() << " is not a valid scenario\n";
    for (const auto& p : e.problems()) {
      err << "  - " << p << '\n';
    }
    return kExitInput;
  }
  if (o.replicates < 1 || o.jobs < 1) {
    err << "error: --replicates and --jobs must be at least 1\n";
    return kExitInput;
  }
  if (o.seed) {
    scenario.seed = *o.seed;
  }

  const std::size_t n = o.replicates;
  std::vector<std::optional<sim::RunReport>> results(n);
  std::vector<std::string> failures(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      sim::Scenario copy = scenario;
      copy.seed = scenario.seed + i;
      const auto dir = n == 1 ? o.out_dir : o.out_dir / fmt::format("seed-{}", copy.seed);
      try {
        results[i] = write_outputs(sim::run_scenario(copy), dir);
      } catch (const WriteError& e) {
        failures[i] = e.message;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t threads = std::min<std::size_t>(o.jobs, n);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  int status = kExitOk;
  for (std::size_t i = 0; i < n; ++i) {
    if (!results[i]) {
      err << "error: " << failures[i] << '\n';
      status = kExitIo;
      continue;
    }
    print_report(out, *results[i], scenario.seed + i);
    if (reports) {
      reports->push_back(*results[i]);
    }
  }
  return status;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trust and confidence engine for peer communities"};
  app.name(argv.empty() ? "peertrust" : argv.front());
  app.require_subcommand(1);

  ScoreOptions score;
  auto* sc = app.add_subcommand("score", "Score one interaction and classify it");
  sc->add_option("--elapsed-hours", score.elapsed_hours, "Response time in hours")
      ->capture_default_str();
  sc->add_option("--gap-months", score.gap_months,
                 "Months since the previous interaction with the peer")
      ->capture_default_str();
  sc->add_option("--age-years", score.age_years, "Years since first contact")
      ->capture_default_str();
  sc->add_option("--reciprocity", score.reciprocity,
                 "Privilege granted by the responder, LEVEL/MAX")
      ->capture_default_str();
  sc->add_option("--reciprocity-min", score.reciprocity_min,
                 "Lowest level (no access) of the responder's scale")
      ->capture_default_str();
  sc->add_option("--relevance", score.relevance,
                 "not_at_all | may_not | cant_say | to_some_extent | fully")
      ->capture_default_str();
  sc->add_option("--response-b", score.response_b, "Response-time curve constant b")
      ->capture_default_str();
  sc->add_option("--response-c", score.response_c, "Response-time curve constant c")
      ->capture_default_str();
  sc->add_option("--gap-b", score.gap_b, "Time-gap curve constant b")->capture_default_str();
  sc->add_option("--gap-c", score.gap_c, "Time-gap curve constant c")->capture_default_str();
  sc->add_option("--familiarity-b", score.familiarity_b, "Familiarity curve constant b")
      ->capture_default_str();
  sc->add_option("--familiarity-c", score.familiarity_c, "Familiarity curve constant c")
      ->capture_default_str();
  sc->add_option("--weights", score.weights,
                 "Property weights: response time, time gap, familiarity, reciprocity, relevance")
      ->delimiter(',')
      ->expected(5)
      ->capture_default_str();
  sc->add_option("--threshold", score.threshold, "Positive iff the score exceeds this")
      ->capture_default_str();

  TrustOptions trust;
  auto* tc = app.add_subcommand("trust", "Assess trust from an opinion table and reports");
  tc->add_option("--table", trust.table, "Opinion table CSV (node,weight,opinion,...)")
      ->required();
  tc->add_option("--reports", trust.reports, "Opinion reports CSV (reporter,subject,opinion,weight)")
      ->required();
  tc->add_option("--t-min", trust.t_min, "Requests needed to trust the personal opinion alone")
      ->required();
  tc->add_option("--subject", trust.subject, "Table row to assess");
  tc->add_option("--trustor", trust.trustor, "Table owner; its reports are ignored");

  SimulateOptions simulate;
  std::uint64_t seed = 0;
  auto* mc = app.add_subcommand("simulate", "Run a community scenario and write its outputs");
  mc->add_option("scenario", simulate.scenario, "Scenario JSON file")->required();
  mc->add_option("--out", simulate.out_dir, "Output directory")->required();
  auto* seed_opt = mc->add_option("--seed", seed, "Override the scenario seed");
  mc->add_option("--replicates", simulate.replicates, "Consecutive seeds to run")
      ->capture_default_str();
  mc->add_option("--jobs", simulate.jobs, "Threads used for replicates")->capture_default_str();

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) {
    args.pop_back();
  }
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (sc->parsed()) {
    return cmd_score(score, out, err);
  }
  if (tc->parsed()) {
    return cmd_trust(trust, out, err);
  }
  if (seed_opt->count() > 0) {
    simulate.seed = seed;
  }
  return cmd_simulate(simulate, out, err);
}

}  // namespace peertrust::cli
