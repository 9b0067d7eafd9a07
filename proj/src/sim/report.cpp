#include "peertrust/sim/report.hpp"

#include <fmt/format.h>

namespace peertrust::sim {

using nlohmann::json;

RunReport build_report(const SimulationTrace& trace) {
  RunReport r;
  r.digest = trace_digest(trace);
  for (const auto& e : trace.events) {
    if (e.as<RequestSent>()) {
      ++r.requests;
    } else if (const auto* resp = e.as<ResponseReceived>()) {
      if (resp->score.classification == Classification::Positive) {
        ++r.positive;
      } else {
        ++r.negative;
      }
    } else if (e.as<Timeout>()) {
      ++r.timeouts;
    } else if (const auto* t = e.as<TrustAssessed>()) {
      r.conflicts += t->assessment.conflict ? 1 : 0;
    }
  }
  r.pending = trace.pending_requests.size();
  for (const auto& m : trace.trust_matrix) {
    r.pairs.push_back(PairSummary{m.trustor, m.trustee, trace.final_tables.at(m.trustor).entry(m.trustee),
                                  m.trust, m.confidence});
  }
  return r;
}

json report_to_json(const RunReport& report) {
  json pairs = json::array();
  for (const auto& p : report.pairs) {
    pairs.push_back({{"trustor", p.trustor.str()},
                     {"trustee", p.trustee.str()},
                     {"positive", p.entry.positive},
                     {"negative", p.entry.negative},
                     {"total", p.entry.total},
                     {"opinion", p.entry.opinion},
                     {"trust", p.trust.trust},
                     {"basis", to_token(p.trust.basis)},
                     {"conflict", p.trust.conflict},
                     {"confidence", p.confidence.confidence},
                     {"share", p.confidence.share}});
  }
  json outputs = json::array();
  for (const auto& o : report.outputs) {
    outputs.push_back(o.string());
  }
  return {{"digest", fmt::format("{:016x}", report.digest)},
          {"requests", report.requests},
          {"positive", report.positive},
          {"negative", report.negative},
          {"timeouts", report.timeouts},
          {"pending", report.pending},
          {"conflicts", report.conflicts},
          {"pairs", std::move(pairs)},
          {"outputs", std::move(outputs)}};
}

}  // namespace peertrust::sim
