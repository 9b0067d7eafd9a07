#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "peertrust/sim/report.hpp"

namespace peertrust::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIo = 3;

struct ScoreOptions {
  double elapsed_hours = 10.0;
  double gap_months = 5.0;
  double age_years = 1.0;
  /// "LEVEL/MAX" on a scale starting at reciprocity_min.
  std::string reciprocity = "9/10";
  int reciprocity_min = 0;
  std::string relevance = "fully";
  double response_b = 500.0;
  double response_c = 0.5;
  double gap_b = 10.0;
  double gap_c = 0.25;
  double familiarity_b = 10.0;
  double familiarity_c = 2.5;
  std::vector<double> weights{0.2, 0.1, 0.3, 0.3, 0.1};
  double threshold = 0.5;
};

struct TrustOptions {
  std::filesystem::path table;
  std::filesystem::path reports;
  std::uint32_t t_min = 1;
  /// Row of the table to assess; may be omitted when the table has one row.
  std::optional<std::string> subject;
  /// Owner of the table; its own reports are dropped when given.
  std::optional<std::string> trustor;
};

struct SimulateOptions {
  std::filesystem::path scenario;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;
  std::uint32_t replicates = 1;
  std::uint32_t jobs = 1;
};

int cmd_score(const ScoreOptions& opts, std::ostream& out, std::ostream& err);
int cmd_trust(const TrustOptions& opts, std::ostream& out, std::ostream& err);

/// Runs the scenario (or `replicates` consecutive seeds) and writes the
/// trace, trust matrix, table snapshots and summary under out_dir. Reports
/// are appended to `reports` when non-null.
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err,
                 std::vector<sim::RunReport>* reports = nullptr);

/// Full command line, program name first.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace peertrust::cli
