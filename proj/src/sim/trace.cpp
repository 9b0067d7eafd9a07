#include "peertrust/sim/trace.hpp"

#include <ostream>

#include "json.hpp"
#include "peertrust/sim/random.hpp"

namespace peertrust::sim {

using nlohmann::json;

namespace {

struct KindName {
  std::string_view operator()(const RequestSent&) const { return "request_sent"; }
  std::string_view operator()(const ResponseReceived&) const { return "response_received"; }
  std::string_view operator()(const Timeout&) const { return "timeout"; }
  std::string_view operator()(const OpinionRequested&) const { return "opinion_requested"; }
  std::string_view operator()(const OpinionReported&) const { return "opinion_reported"; }
  std::string_view operator()(const TrustAssessed&) const { return "trust_assessed"; }
  std::string_view operator()(const DisclosureDecided&) const { return "disclosure_decided"; }
};

json payload_json(const RequestSent& e) {
  return {{"request", e.request}, {"purpose", to_token(e.purpose)}, {"attempt", e.attempt}};
}

json payload_json(const ResponseReceived& e) {
  json scores = json::array();
  for (double s : e.score.scores) {
    scores.push_back(s);
  }
  return {{"request", e.request},
          {"purpose", to_token(e.purpose)},
          {"elapsed_hours", e.elapsed_hours},
          {"gap_months", e.gap_months},
          {"age_years", e.age_years},
          {"privilege",
           {{"level", e.privilege.level()},
            {"min", e.privilege.min_level()},
            {"max", e.privilege.max_level()}}},
          {"relevance", to_token(e.relevance)},
          {"scores", std::move(scores)},
          {"aggregate", e.score.aggregate},
          {"classification", e.score.classification == Classification::Positive ? "positive"
                                                                                 : "negative"}};
}

json payload_json(const Timeout& e) {
  return {{"request", e.request}, {"purpose", to_token(e.purpose)}, {"late", e.late}};
}

json payload_json(const OpinionRequested& e) {
  json recipients = json::array();
  for (const auto& r : e.recipients) {
    recipients.push_back(r.str());
  }
  return {{"round", e.round}, {"recipients", std::move(recipients)}};
}

json payload_json(const OpinionReported& e) {
  return {{"round", e.round}, {"subject", e.subject.str()}, {"opinion", e.opinion}};
}

json payload_json(const TrustAssessed& e) {
  const auto& a = e.assessment;
  return {{"round", e.round},
          {"report_count", e.report_count},
          {"personal", a.personal},
          {"community", a.community ? json(*a.community) : json(nullptr)},
          {"trust", a.trust},
          {"basis", to_token(a.basis)},
          {"conflict", a.conflict}};
}

json payload_json(const DisclosureDecided& e) {
  const auto& r = e.result;
  return {{"round", e.round},         {"trust", r.trust},         {"control", r.control},
          {"confidence", r.confidence}, {"threshold", r.threshold}, {"share", r.share}};
}

}  // namespace

std::string_view to_token(RequestPurpose purpose) noexcept {
  return purpose == RequestPurpose::Data ? "data" : "opinion";
}

std::string_view TraceEvent::kind() const noexcept { return std::visit(KindName{}, payload); }

std::string canonical_line(const TraceEvent& event) {
  json j = {{"t", event.t},
            {"seq", event.seq},
            {"kind", event.kind()},
            {"actor", event.actor.str()},
            {"peer", event.peer.str()},
            {"payload", std::visit([](const auto& p) { return payload_json(p); }, event.payload)}};
  return j.dump();
}

std::uint64_t digest_events(std::span<const TraceEvent> events) {
  std::uint64_t h = kEmptyTraceDigest;
  for (const auto& e : events) {
    h = fnv1a64(canonical_line(e), h);
    h = fnv1a64("\n", h);
  }
  return h;
}

std::uint64_t trace_digest(const SimulationTrace& trace) { return digest_events(trace.events); }

void write_trace_jsonl(std::ostream& os, std::span<const TraceEvent> events) {
  for (const auto& e : events) {
    os << canonical_line(e) << '\n';
  }
}

std::map<NodeId, OpinionTable> replay_tables(std::span<const NodeId> nodes,
                                             std::span<const TraceEvent> events, double up_to) {
  std::map<NodeId, OpinionTable> tables;
  for (const auto& id : nodes) {
    tables.emplace(id, OpinionTable{id});
  }
  for (const auto& e : events) {
    if (e.t > up_to) {
      break;
    }
    auto it = tables.find(e.actor);
    if (it == tables.end()) {
      continue;
    }
    if (e.as<RequestSent>()) {
      it->second.record_request(e.peer, e.t);
    } else if (const auto* r = e.as<ResponseReceived>()) {
      it->second.record_outcome(e.peer, r->score.classification.value_or(Classification::Negative),
                                e.t);
    }
  }
  return tables;
}

}  // namespace peertrust::sim
