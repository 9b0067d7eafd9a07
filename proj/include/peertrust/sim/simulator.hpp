#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <variant>
#include <vector>

#include "peertrust/sim/random.hpp"
#include "peertrust/sim/scenario.hpp"
#include "peertrust/sim/trace.hpp"

namespace peertrust::sim {

/// Trust matrix over the given tables, as if every node other than the
/// trustor and the trustee answered an opinion round instantly. Rows follow
/// the scenario's node order, trustor-major.
TrustMatrix compute_trust_matrix(const Scenario& scenario,
                                 const std::map<NodeId, OpinionTable>& tables);

/// Discrete-event simulation of one community run.
///
/// Events are processed in (time, insertion order); scheduled actions are
/// inserted first, in schedule order, so simultaneous actions run as listed.
/// All randomness for a request is drawn from the responder's substream.
class Simulator {
 public:
  /// Throws ValidationError if the scenario is malformed.
  explicit Simulator(Scenario scenario);

  /// Processes every pending item with time <= min(time, horizon).
  void run_until(double time);
  void run() { run_until(scenario_.horizon_hours); }

  double now() const noexcept { return now_; }
  const Scenario& scenario() const noexcept { return scenario_; }
  std::span<const TraceEvent> events() const noexcept { return events_; }
  const OpinionTable& table(const NodeId& node) const;
  std::map<NodeId, OpinionTable> tables() const;

  /// Requests sent but neither answered nor timed out yet.
  std::vector<std::uint64_t> pending_requests() const;

  /// Trust matrix as it stood at `time`. Past instants are rebuilt from the
  /// event log. Throws QueryError when `time` is later than now().
  TrustMatrix snapshot_trust_matrix(double time) const;

  /// Runs to the horizon and packages the result.
  SimulationTrace finish();

 private:
  struct NodeState {
    std::size_t config_index;
    OpinionTable table;
    RandomStream rng;
  };

  struct Request {
    std::size_t requester;
    std::size_t responder;
    RequestPurpose purpose;
    std::uint32_t attempt;
    double sent_at;
    RelevanceGrade relevance;
    std::optional<std::uint64_t> round;
    bool ledgered;
    bool open = true;
  };

  struct Round {
    std::size_t trustor;
    std::size_t subject;
    bool with_confidence;
    std::vector<std::pair<std::size_t, double>> reports;
  };

  struct RunAction {
    std::size_t schedule_index;
  };
  struct Arrival {
    std::uint64_t request;
  };
  struct Expiry {
    std::uint64_t request;
    bool late;
  };
  struct CloseRound {
    std::uint64_t round;
  };
  using Action = std::variant<RunAction, Arrival, Expiry, CloseRound>;

  struct Item {
    double time;
    std::uint64_t order;
    Action action;
  };
  struct Later {
    bool operator()(const Item& a, const Item& b) const noexcept {
      return a.time != b.time ? a.time > b.time : a.order > b.order;
    }
  };

  const NodeConfig& config(std::size_t node) const { return scenario_.nodes[nodes_[node].config_index]; }
  const NodeId& id(std::size_t node) const { return config(node).id; }
  std::size_t index_of(const NodeId& node) const;

  void push(double time, Action action);
  void emit(std::size_t actor, std::size_t peer, EventPayload payload);

  void handle(const RunAction& a);
  void handle(const Arrival& a);
  void handle(const Expiry& e);
  void handle(const CloseRound& c);

  std::uint64_t send_request(std::size_t requester, std::size_t responder, RequestPurpose purpose,
                             std::uint32_t attempt, std::optional<std::uint64_t> round);
  void start_trust_round(std::size_t trustor, std::size_t subject, bool with_confidence);
  void conclude(std::uint64_t round_id, std::size_t trustor, std::size_t subject,
                bool with_confidence, std::span<const OpinionReport> reports);
  void score_response(std::uint64_t request_id, const Request& request);

  Scenario scenario_;
  std::vector<NodeState> nodes_;
  std::map<NodeId, std::size_t> index_;
  std::priority_queue<Item, std::vector<Item>, Later> queue_;
  std::map<std::uint64_t, Request> requests_;
  std::map<std::uint64_t, Round> rounds_;
  std::vector<TraceEvent> events_;
  std::uint64_t next_order_ = 0;
  std::uint64_t next_request_ = 0;
  std::uint64_t next_round_ = 0;
  double now_ = 0.0;
};

/// Runs a scenario to its horizon. Pure function of the scenario (seed included).
SimulationTrace run_scenario(const Scenario& scenario);

}  // namespace peertrust::sim
