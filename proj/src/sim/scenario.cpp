#include "peertrust/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "peertrust/errors.hpp"

namespace peertrust::sim {

PrivilegeLevel PrivilegePolicy::level_for(const NodeId& requester) const {
  auto it = per_requester.find(requester);
  const int level = it == per_requester.end() ? default_level : it->second;
  return PrivilegeLevel{level, min_level, max_level};
}

const ControlModel& NodeConfig::control_for(const NodeId& trustee) const {
  auto it = control_overrides.find(trustee);
  return it == control_overrides.end() ? control : it->second;
}

std::string_view to_token(ActionKind kind) noexcept {
  switch (kind) {
    case ActionKind::DataRequest:
      return "data_request";
    case ActionKind::TrustQuery:
      return "trust_query";
    case ActionKind::ConfidenceQuery:
      return "confidence_query";
  }
  return "?";
}

std::optional<ActionKind> parse_action(std::string_view token) noexcept {
  for (auto k : {ActionKind::DataRequest, ActionKind::TrustQuery, ActionKind::ConfidenceQuery}) {
    if (to_token(k) == token) {
      return k;
    }
  }
  return std::nullopt;
}

const NodeConfig* Scenario::find(const NodeId& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) {
      return &n;
    }
  }
  return nullptr;
}

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

void check_delay(const DelayDistribution& d, const std::string& where,
                 std::vector<std::string>& problems) {
  std::visit(
      [&](const auto& dist) {
        using T = std::decay_t<decltype(dist)>;
        if constexpr (std::is_same_v<T, FixedDelay>) {
          if (!finite_nonneg(dist.hours)) {
            problems.push_back(where + ": fixed delay must be a nonnegative number");
          }
        } else if constexpr (std::is_same_v<T, UniformDelay>) {
          if (!finite_nonneg(dist.min_hours) || !finite_nonneg(dist.max_hours) ||
              dist.min_hours > dist.max_hours) {
            problems.push_back(where + ": uniform delay needs 0 <= min <= max");
          }
        } else {
          if (!std::isfinite(dist.mean_hours) || dist.mean_hours <= 0.0) {
            problems.push_back(where + ": exponential delay mean must be positive");
          }
        }
      },
      d);
}

void check_node(const NodeConfig& n, const std::set<NodeId>& ids,
                std::vector<std::string>& problems) {
  const std::string where = "node '" + n.id.str() + "'";
  if (!(n.interaction_threshold >= 0.0 && n.interaction_threshold <= 1.0)) {
    problems.push_back(where + ": interaction_threshold must lie in [0, 1]");
  }
  if (n.t_min < 1) {
    problems.push_back(where + ": t_min must be at least 1");
  }
  if (!n.disclosure_threshold) {
    problems.push_back(where + ": disclosure_threshold is required");
  } else if (!(*n.disclosure_threshold >= -1.0 && *n.disclosure_threshold <= 2.0)) {
    problems.push_back(where + ": disclosure_threshold must lie in [-1, 2]");
  }
  if (!std::isfinite(n.wait_hours) || n.wait_hours <= 0.0) {
    problems.push_back(where + ": wait_hours must be positive");
  }
  for (const auto& [trustee, model] : n.control_overrides) {
    if (!ids.contains(trustee)) {
      problems.push_back(where + ": control override for unknown node '" + trustee.str() + "'");
    }
  }

  const auto& b = n.behavior;
  if (!(b.respond_probability >= 0.0 && b.respond_probability <= 1.0)) {
    problems.push_back(where + ": respond_probability must lie in [0, 1]");
  }
  check_delay(b.response_delay, where, problems);
  bool probs_ok = true;
  for (double p : b.relevance_distribution) {
    probs_ok = probs_ok && p >= 0.0 && p <= 1.0;
  }
  const double sum =
      std::accumulate(b.relevance_distribution.begin(), b.relevance_distribution.end(), 0.0);
  if (!probs_ok || std::abs(sum - 1.0) > 1e-9) {
    problems.push_back(where + ": relevance probabilities must be in [0, 1] and sum to 1");
  }

  const auto& pp = b.privilege;
  if (pp.min_level >= pp.max_level) {
    problems.push_back(where + ": privilege scale needs min < max");
  } else {
    auto in_scale = [&](int level) { return level >= pp.min_level && level <= pp.max_level; };
    if (!in_scale(pp.default_level)) {
      problems.push_back(where + ": default privilege level outside the scale");
    }
    for (const auto& [requester, level] : pp.per_requester) {
      if (!ids.contains(requester)) {
        problems.push_back(where + ": privilege granted to unknown node '" + requester.str() +
                           "'");
      }
      if (!in_scale(level)) {
        problems.push_back(where + ": privilege level for '" + requester.str() +
                           "' outside the scale");
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate(const Scenario& scenario) {
  std::vector<std::string> problems;

  if (!std::isfinite(scenario.horizon_hours) || scenario.horizon_hours < 0.0) {
    problems.push_back("horizon_hours must be a nonnegative number");
  }

  std::set<NodeId> ids;
  for (const auto& n : scenario.nodes) {
    if (!ids.insert(n.id).second) {
      problems.push_back("duplicate node id '" + n.id.str() + "'");
    }
    if (n.id.str().find_first_of(",\r\n") != std::string::npos) {
      problems.push_back("node id '" + n.id.str() + "' contains a comma or line break");
    }
  }
  for (const auto& n : scenario.nodes) {
    check_node(n, ids, problems);
  }

  double previous = -1.0;
  for (std::size_t i = 0; i < scenario.schedule.size(); ++i) {
    const auto& a = scenario.schedule[i];
    const std::string where = "schedule[" + std::to_string(i) + "]";
    if (!ids.contains(a.actor)) {
      problems.push_back(where + ": unknown actor '" + a.actor.str() + "'");
    }
    if (!ids.contains(a.target)) {
      problems.push_back(where + ": unknown target '" + a.target.str() + "'");
    }
    if (a.actor == a.target) {
      problems.push_back(where + ": actor and target are both '" + a.actor.str() + "'");
    }
    if (!std::isfinite(a.time) || a.time < 0.0 || a.time > scenario.horizon_hours) {
      problems.push_back(where + ": time outside [0, horizon_hours]");
    } else if (a.time < previous) {
      problems.push_back(where + ": schedule is not sorted by time");
    }
    if (std::isfinite(a.time)) {
      previous = std::max(previous, a.time);
    }
  }
  return problems;
}

void require_valid(const Scenario& scenario) {
  auto problems = validate(scenario);
  if (!problems.empty()) {
    throw ValidationError(std::move(problems));
  }
}

}  // namespace peertrust::sim
