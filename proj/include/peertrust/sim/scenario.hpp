#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "peertrust/confidence.hpp"
#include "peertrust/node_id.hpp"
#include "peertrust/score.hpp"

namespace peertrust::sim {

struct FixedDelay {
  double hours = 0.0;
  friend bool operator==(const FixedDelay&, const FixedDelay&) = default;
};

struct UniformDelay {
  double min_hours = 0.0;
  double max_hours = 0.0;
  friend bool operator==(const UniformDelay&, const UniformDelay&) = default;
};

struct ExponentialDelay {
  double mean_hours = 1.0;
  friend bool operator==(const ExponentialDelay&, const ExponentialDelay&) = default;
};

using DelayDistribution = std::variant<FixedDelay, UniformDelay, ExponentialDelay>;

/// Privilege a responder grants to requesters on its own [min, max] scale.
struct PrivilegePolicy {
  int min_level = 0;
  int max_level = 10;
  int default_level = 10;
  std::map<NodeId, int> per_requester;

  PrivilegeLevel level_for(const NodeId& requester) const;

  friend bool operator==(const PrivilegePolicy&, const PrivilegePolicy&) = default;
};

/// How a node answers requests addressed to it.
struct BehaviorProfile {
  double respond_probability = 1.0;
  DelayDistribution response_delay = FixedDelay{0.0};
  /// Probabilities over the five relevance grades, in grade order.
  std::array<double, 5> relevance_distribution{0.0, 0.0, 0.0, 0.0, 1.0};
  PrivilegePolicy privilege;

  friend bool operator==(const BehaviorProfile&, const BehaviorProfile&) = default;
};

struct NodeConfig {
  NodeId id;
  PropertyWeights weights = PropertyWeights::defaults();
  GompertzCurves curves;
  double interaction_threshold = 0.5;
  std::uint32_t t_min = 1;
  ControlModel control = ControlModel::defaults();
  /// Per-trustee replacements for `control`.
  std::map<NodeId, ControlModel> control_overrides;
  /// No default exists on the [-1, 2] confidence scale; validation rejects
  /// a node that leaves it unset.
  std::optional<double> disclosure_threshold;
  double wait_hours = 24.0;
  std::uint32_t retry_count = 0;
  BehaviorProfile behavior;

  explicit NodeConfig(NodeId node_id) : id(std::move(node_id)) {}

  const ControlModel& control_for(const NodeId& trustee) const;

  friend bool operator==(const NodeConfig&, const NodeConfig&) = default;
};

enum class ActionKind { DataRequest, TrustQuery, ConfidenceQuery };

std::string_view to_token(ActionKind kind) noexcept;
std::optional<ActionKind> parse_action(std::string_view token) noexcept;

struct ScheduledAction {
  double time = 0.0;
  NodeId actor;
  ActionKind kind = ActionKind::DataRequest;
  NodeId target;

  friend bool operator==(const ScheduledAction&, const ScheduledAction&) = default;
};

struct ScenarioOptions {
  /// Score opinion responses as interactions and ledger them.
  bool score_opinion_responses = false;

  friend bool operator==(const ScenarioOptions&, const ScenarioOptions&) = default;
};

struct Scenario {
  std::vector<NodeConfig> nodes;
  std::vector<ScheduledAction> schedule;
  double horizon_hours = 0.0;
  std::uint64_t seed = 0;
  ScenarioOptions options;

  const NodeConfig* find(const NodeId& id) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Every violated invariant, in a stable order. Empty when the scenario is valid.
std::vector<std::string> validate(const Scenario& scenario);

/// Throws ValidationError listing every problem found by validate().
void require_valid(const Scenario& scenario);

}  // namespace peertrust::sim
