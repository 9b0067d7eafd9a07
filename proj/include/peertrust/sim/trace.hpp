#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "peertrust/confidence.hpp"
#include "peertrust/node_id.hpp"
#include "peertrust/opinion_ledger.hpp"
#include "peertrust/score.hpp"
#include "peertrust/trust.hpp"

namespace peertrust::sim {

enum class RequestPurpose { Data, Opinion };

std::string_view to_token(RequestPurpose purpose) noexcept;

// Event payloads. In every event `actor` is the node whose ledger or
// decision the event concerns (requester, trustor); `peer` is the other side.

/// actor sent a request to peer.
struct RequestSent {
  std::uint64_t request = 0;
  RequestPurpose purpose = RequestPurpose::Data;
  std::uint32_t attempt = 0;
  friend bool operator==(const RequestSent&, const RequestSent&) = default;
};

/// peer's answer to `request` reached actor in time and was scored.
struct ResponseReceived {
  std::uint64_t request = 0;
  RequestPurpose purpose = RequestPurpose::Data;
  double elapsed_hours = 0.0;
  double gap_months = 0.0;
  double age_years = 0.0;
  PrivilegeLevel privilege{0, 0, 1};
  RelevanceGrade relevance = RelevanceGrade::FullyRelevant;
  InteractionScore score;
  friend bool operator==(const ResponseReceived&, const ResponseReceived&) = default;
};

/// The wait window for `request` closed without an answer. `late` marks a
/// response that was sent but would have arrived after the window.
struct Timeout {
  std::uint64_t request = 0;
  RequestPurpose purpose = RequestPurpose::Data;
  bool late = false;
  friend bool operator==(const Timeout&, const Timeout&) = default;
};

/// actor asked the community about peer.
struct OpinionRequested {
  std::uint64_t round = 0;
  std::vector<NodeId> recipients;
  friend bool operator==(const OpinionRequested&, const OpinionRequested&) = default;
};

/// peer reported its personal opinion about `subject` to actor.
struct OpinionReported {
  std::uint64_t round = 0;
  NodeId subject;
  double opinion = 0.0;
  friend bool operator==(const OpinionReported&, const OpinionReported&) = default;
};

/// actor's trust in peer.
struct TrustAssessed {
  std::uint64_t round = 0;
  std::uint32_t report_count = 0;
  TrustAssessment assessment;
  friend bool operator==(const TrustAssessed&, const TrustAssessed&) = default;
};

/// actor's disclosure decision for peer.
struct DisclosureDecided {
  std::uint64_t round = 0;
  ConfidenceResult result;
  friend bool operator==(const DisclosureDecided&, const DisclosureDecided&) = default;
};

using EventPayload = std::variant<RequestSent, ResponseReceived, Timeout, OpinionRequested,
                                  OpinionReported, TrustAssessed, DisclosureDecided>;

struct TraceEvent {
  double t = 0.0;
  std::uint64_t seq = 0;
  NodeId actor;
  NodeId peer;
  EventPayload payload;

  std::string_view kind() const noexcept;

  template <typename T>
  const T* as() const noexcept {
    return std::get_if<T>(&payload);
  }

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct MatrixEntry {
  NodeId trustor;
  NodeId trustee;
  TrustAssessment trust;
  ConfidenceResult confidence;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

using TrustMatrix = std::vector<MatrixEntry>;

struct SimulationTrace {
  std::vector<TraceEvent> events;
  std::map<NodeId, OpinionTable> final_tables;
  TrustMatrix trust_matrix;
  /// Ids of requests still unanswered at the horizon.
  std::vector<std::uint64_t> pending_requests;
  double horizon_hours = 0.0;
};

/// One compact JSON object with keys t, seq, kind, actor, peer, payload.
/// Keys are sorted and numbers use the shortest round-trip form, so the
/// text is identical on every platform.
std::string canonical_line(const TraceEvent& event);

/// FNV-1a 64 over the canonical lines, each terminated by '\n'. The empty
/// trace hashes to the FNV offset basis.
std::uint64_t digest_events(std::span<const TraceEvent> events);
std::uint64_t trace_digest(const SimulationTrace& trace);

inline constexpr std::uint64_t kEmptyTraceDigest = 0xcbf29ce484222325ULL;

void write_trace_jsonl(std::ostream& os, std::span<const TraceEvent> events);

/// Rebuilds every node's opinion table from the ledger-relevant events with
/// t <= up_to. Tables exist for all of `nodes`, even without events.
std::map<NodeId, OpinionTable> replay_tables(std::span<const NodeId> nodes,
                                             std::span<const TraceEvent> events,
                                             double up_to);

}  // namespace peertrust::sim
