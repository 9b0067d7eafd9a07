#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "json.hpp"
#include "peertrust/sim/trace.hpp"

namespace peertrust::sim {

struct PairSummary {
  NodeId trustor;
  NodeId trustee;
  OpinionEntry entry;
  TrustAssessment trust;
  ConfidenceResult confidence;
};

struct RunReport {
  std::uint64_t digest = 0;
  std::vector<PairSummary> pairs;
  std::size_t requests = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t timeouts = 0;
  std::size_t pending = 0;
  /// Trust assessments in the trace that hit the opposite-and-equal case.
  std::size_t conflicts = 0;
  std::vector<std::filesystem::path> outputs;
};

/// Summarizes a trace. Counts are taken from the event log, pairs from the
/// final trust matrix joined with the trustor's ledger entry.
RunReport build_report(const SimulationTrace& trace);

nlohmann::json report_to_json(const RunReport& report);

}  // namespace peertrust::sim
