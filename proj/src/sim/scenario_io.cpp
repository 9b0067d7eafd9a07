#include "peertrust/sim/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <set>

#include "peertrust/errors.hpp"

namespace peertrust::sim {

using nlohmann::json;

namespace {

// Collects problems while walking the document so that a single pass can
// report every one of them.
class Reader {
 public:
  std::vector<std::string> problems;

  void fail(const std::string& where, const std::string& what) {
    problems.push_back(where + ": " + what);
  }

  void only_keys(const json& obj, const std::string& where,
                 std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(where, "unknown key '" + key + "'");
      }
    }
  }

  bool is_object(const json& j, const std::string& where) {
    if (!j.is_object()) {
      fail(where, "expected an object");
      return false;
    }
    return true;
  }

  std::optional<double> number(const json& obj, const char* key, const std::string& where,
                               bool required) {
    if (!obj.contains(key)) {
      if (required) {
        fail(where, std::string("missing required key '") + key + "'");
      }
      return std::nullopt;
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
      fail(where + "." + key, "expected a number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<std::int64_t> integer(const json& obj, const char* key, const std::string& where,
                                      bool required) {
    if (!obj.contains(key)) {
      if (required) {
        fail(where, std::string("missing required key '") + key + "'");
      }
      return std::nullopt;
    }
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(where + "." + key, "expected an integer");
      return std::nullopt;
    }
    return v.get<std::int64_t>();
  }

  std::optional<std::string> string(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) {
      fail(where, std::string("missing required key '") + key + "'");
      return std::nullopt;
    }
    const auto& v = obj.at(key);
    if (!v.is_string() || v.get<std::string>().empty()) {
      fail(where + "." + key, "expected a non-empty string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  // Runs a constructor that validates its own invariants, turning its
  // exception into a recorded problem.
  template <typename F>
  auto guarded(const std::string& where, F&& make) -> std::optional<decltype(make())> {
    try {
      return make();
    } catch (const Error& e) {
      fail(where, e.what());
      return std::nullopt;
    }
  }
};

std::optional<PropertyWeights> read_weights(Reader& rd, const json& j, const std::string& where) {
  std::array<double, kPropertyCount> w{};
  if (j.is_array()) {
    if (j.size() != kPropertyCount) {
      rd.fail(where, "expected five weights");
      return std::nullopt;
    }
    for (std::size_t k = 0; k < kPropertyCount; ++k) {
      if (!j[k].is_number()) {
        rd.fail(where, "weights must be numbers");
        return std::nullopt;
      }
      w[k] = j[k].get<double>();
    }
  } else if (j.is_object()) {
    rd.only_keys(j, where,
                 {"response_time", "time_gap", "familiarity", "reciprocity", "relevance"});
    for (std::size_t k = 0; k < kPropertyCount; ++k) {
      const std::string key(to_token(static_cast<Property>(k)));
      auto v = rd.number(j, key.c_str(), where, true);
      if (!v) {
        return std::nullopt;
      }
      w[k] = *v;
    }
  } else {
    rd.fail(where, "expected an array of five numbers or an object keyed by property");
    return std::nullopt;
  }
  return rd.guarded(where, [&] { return PropertyWeights(w); });
}

std::optional<GompertzParams> read_curve(Reader& rd, const json& j, const std::string& where,
                                         const GompertzParams& fallback) {
  if (!rd.is_object(j, where)) {
    return std::nullopt;
  }
  rd.only_keys(j, where, {"b", "c"});
  const double b = rd.number(j, "b", where, false).value_or(fallback.b());
  const double c = rd.number(j, "c", where, false).value_or(fallback.c());
  return rd.guarded(where, [&] { return GompertzParams(b, c); });
}

std::optional<ControlModel> read_control(Reader& rd, const json& j, const std::string& where) {
  if (!j.is_array()) {
    rd.fail(where, "expected an array of control parameters");
    return std::nullopt;
  }
  std::vector<ControlParameter> params;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    if (!rd.is_object(j[i], w)) {
      return std::nullopt;
    }
    rd.only_keys(j[i], w, {"name", "confidence", "weight"});
    auto name = rd.string(j[i], "name", w);
    auto conf = rd.number(j[i], "confidence", w, true);
    auto weight = rd.number(j[i], "weight", w, true);
    if (!name || !conf || !weight) {
      return std::nullopt;
    }
    params.push_back({*name, *conf, *weight});
  }
  return rd.guarded(where, [&] { return ControlModel(params); });
}

std::optional<DelayDistribution> read_delay(Reader& rd, const json& j, const std::string& where) {
  if (!rd.is_object(j, where)) {
    return std::nullopt;
  }
  auto kind = rd.string(j, "kind", where);
  if (!kind) {
    return std::nullopt;
  }
  if (*kind == "fixed") {
    rd.only_keys(j, where, {"kind", "hours"});
    auto h = rd.number(j, "hours", where, true);
    return h ? std::optional<DelayDistribution>(FixedDelay{*h}) : std::nullopt;
  }
  if (*kind == "uniform") {
    rd.only_keys(j, where, {"kind", "min_hours", "max_hours"});
    auto lo = rd.number(j, "min_hours", where, true);
    auto hi = rd.number(j, "max_hours", where, true);
    return lo && hi ? std::optional<DelayDistribution>(UniformDelay{*lo, *hi}) : std::nullopt;
  }
  if (*kind == "exponential") {
    rd.only_keys(j, where, {"kind", "mean_hours"});
    auto mean = rd.number(j, "mean_hours", where, true);
    return mean ? std::optional<DelayDistribution>(ExponentialDelay{*mean}) : std::nullopt;
  }
  rd.fail(where + ".kind", "expected fixed, uniform or exponential");
  return std::nullopt;
}

void read_behavior(Reader& rd, const json& j, const std::string& where, BehaviorProfile& b) {
  if (!rd.is_object(j, where)) {
    return;
  }
  rd.only_keys(j, where, {"respond_probability", "response_delay", "relevance", "privilege"});
  if (auto p = rd.number(j, "respond_probability", where, false)) {
    b.respond_probability = *p;
  }
  if (j.contains("response_delay")) {
    if (auto d = read_delay(rd, j.at("response_delay"), where + ".response_delay")) {
      b.response_delay = *d;
    }
  }
  if (j.contains("relevance")) {
    const auto& rel = j.at("relevance");
    const std::string w = where + ".relevance";
    if (rd.is_object(rel, w)) {
      b.relevance_distribution.fill(0.0);
      for (const auto& [key, value] : rel.items()) {
        auto grade = parse_relevance(key);
        if (!grade) {
          rd.fail(w, "unknown relevance grade '" + key + "'");
        } else if (!value.is_number()) {
          rd.fail(w + "." + key, "expected a number");
        } else {
          b.relevance_distribution[static_cast<std::size_t>(*grade)] = value.get<double>();
        }
      }
    }
  }
  if (j.contains("privilege")) {
    const auto& pj = j.at("privilege");
    const std::string w = where + ".privilege";
    if (rd.is_object(pj, w)) {
      rd.only_keys(pj, w, {"min", "max", "default", "per_requester"});
      auto& pp = b.privilege;
      pp.min_level = static_cast<int>(rd.integer(pj, "min", w, false).value_or(pp.min_level));
      pp.max_level = static_cast<int>(rd.integer(pj, "max", w, false).value_or(pp.max_level));
      pp.default_level = static_cast<int>(rd.integer(pj, "default", w, false).value_or(pp.max_level));
      if (pj.contains("per_requester") && rd.is_object(pj.at("per_requester"), w + ".per_requester")) {
        for (const auto& [key, value] : pj.at("per_requester").items()) {
          if (key.empty() || !value.is_number_integer()) {
            rd.fail(w + ".per_requester", "expected node id -> integer level");
            continue;
          }
          pp.per_requester[NodeId{key}] = value.get<int>();
        }
      }
    }
  }
}

std::optional<NodeConfig> read_node(Reader& rd, const json& j, const std::string& where) {
  if (!rd.is_object(j, where)) {
    return std::nullopt;
  }
  rd.only_keys(j, where,
               {"id", "weights", "gompertz", "interaction_threshold", "t_min", "control",
                "control_overrides", "disclosure_threshold", "wait_hours", "retry_count",
                "behavior"});
  auto id = rd.string(j, "id", where);
  if (!id) {
    return std::nullopt;
  }
  const std::string w = "node '" + *id + "'";
  NodeConfig node{NodeId{*id}};

  if (j.contains("weights")) {
    if (auto weights = read_weights(rd, j.at("weights"), w + ".weights")) {
      node.weights = *weights;
    }
  }
  if (j.contains("gompertz")) {
    const auto& g = j.at("gompertz");
    if (rd.is_object(g, w + ".gompertz")) {
      rd.only_keys(g, w + ".gompertz", {"response", "gap", "familiarity"});
      auto curve = [&](const char* key, GompertzParams& target) {
        if (g.contains(key)) {
          if (auto p = read_curve(rd, g.at(key), w + ".gompertz." + key, target)) {
            target = *p;
          }
        }
      };
      curve("response", node.curves.response);
      curve("gap", node.curves.gap);
      curve("familiarity", node.curves.familiarity);
    }
  }
  if (auto v = rd.number(j, "interaction_threshold", w, false)) {
    node.interaction_threshold = *v;
  }
  if (auto v = rd.integer(j, "t_min", w, true)) {
    if (*v < 1) {
      rd.fail(w + ".t_min", "must be at least 1");
    } else {
      node.t_min = static_cast<std::uint32_t>(*v);
    }
  }
  if (j.contains("control")) {
    if (auto m = read_control(rd, j.at("control"), w + ".control")) {
      node.control = *m;
    }
  }
  if (j.contains("control_overrides")) {
    const auto& o = j.at("control_overrides");
    if (rd.is_object(o, w + ".control_overrides")) {
      for (const auto& [key, value] : o.items()) {
        if (key.empty()) {
          rd.fail(w + ".control_overrides", "empty node id");
          continue;
        }
        if (auto m = read_control(rd, value, w + ".control_overrides." + key)) {
          node.control_overrides.emplace(NodeId{key}, *m);
        }
      }
    }
  }
  node.disclosure_threshold = rd.number(j, "disclosure_threshold", w, true);
  if (auto v = rd.number(j, "wait_hours", w, true)) {
    node.wait_hours = *v;
  }
  if (auto v = rd.integer(j, "retry_count", w, false)) {
    if (*v < 0) {
      rd.fail(w + ".retry_count", "must be nonnegative");
    } else {
      node.retry_count = static_cast<std::uint32_t>(*v);
    }
  }
  if (j.contains("behavior")) {
    read_behavior(rd, j.at("behavior"), w + ".behavior", node.behavior);
  }
  return node;
}

void read_schedule(Reader& rd, const json& j, std::vector<ScheduledAction>& out) {
  if (!j.is_array()) {
    rd.fail("schedule", "expected an array");
    return;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = "schedule[" + std::to_string(i) + "]";
    const auto& e = j[i];
    if (!rd.is_object(e, w)) {
      continue;
    }
    rd.only_keys(e, w, {"t", "actor", "action", "target", "repeat"});
    auto t = rd.number(e, "t", w, true);
    auto actor = rd.string(e, "actor", w);
    auto target = rd.string(e, "target", w);
    auto action_name = rd.string(e, "action", w);
    std::optional<ActionKind> kind;
    if (action_name) {
      kind = parse_action(*action_name);
      if (!kind) {
        rd.fail(w + ".action", "unknown action '" + *action_name + "'");
      }
    }
    std::int64_t count = 1;
    double interval = 0.0;
    if (e.contains("repeat")) {
      const auto& r = e.at("repeat");
      if (rd.is_object(r, w + ".repeat")) {
        rd.only_keys(r, w + ".repeat", {"count", "interval_hours"});
        count = rd.integer(r, "count", w + ".repeat", true).value_or(1);
        interval = rd.number(r, "interval_hours", w + ".repeat", true).value_or(0.0);
        if (count < 1) {
          rd.fail(w + ".repeat.count", "must be at least 1");
        }
        if (!(interval >= 0.0)) {
          rd.fail(w + ".repeat.interval_hours", "must be nonnegative");
        }
      }
    }
    if (!t || !actor || !target || !kind) {
      continue;
    }
    for (std::int64_t k = 0; k < count; ++k) {
      out.push_back(ScheduledAction{*t + static_cast<double>(k) * interval, NodeId{*actor}, *kind,
                                    NodeId{*target}});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ScheduledAction& a, const ScheduledAction& b) { return a.time < b.time; });
}

json control_json(const ControlModel& m) {
  json arr = json::array();
  for (const auto& p : m.parameters()) {
    arr.push_back({{"name", p.name}, {"confidence", p.confidence}, {"weight", p.weight}});
  }
  return arr;
}

json delay_json(const DelayDistribution& d) {
  return std::visit(
      [](const auto& dist) -> json {
        using T = std::decay_t<decltype(dist)>;
        if constexpr (std::is_same_v<T, FixedDelay>) {
          return {{"kind", "fixed"}, {"hours", dist.hours}};
        } else if constexpr (std::is_same_v<T, UniformDelay>) {
          return {{"kind", "uniform"}, {"min_hours", dist.min_hours}, {"max_hours", dist.max_hours}};
        } else {
          return {{"kind", "exponential"}, {"mean_hours", dist.mean_hours}};
        }
      },
      d);
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  Reader rd;
  Scenario sc;
  if (!doc.is_object()) {
    throw ValidationError({"scenario document must be a JSON object"});
  }
  rd.only_keys(doc, "scenario", {"nodes", "schedule", "horizon_hours", "seed", "options"});

  if (auto h = rd.number(doc, "horizon_hours", "scenario", true)) {
    sc.horizon_hours = *h;
  }
  if (doc.contains("seed")) {
    const auto& seed = doc.at("seed");
    if (seed.is_number_unsigned() || (seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
      sc.seed = seed.get<std::uint64_t>();
    } else {
      rd.fail("scenario.seed", "expected an unsigned 64-bit integer");
    }
  }
  if (doc.contains("options")) {
    const auto& o = doc.at("options");
    if (rd.is_object(o, "options")) {
      rd.only_keys(o, "options", {"score_opinion_responses"});
      if (o.contains("score_opinion_responses")) {
        if (o.at("score_opinion_responses").is_boolean()) {
          sc.options.score_opinion_responses = o.at("score_opinion_responses").get<bool>();
        } else {
          rd.fail("options.score_opinion_responses", "expected a boolean");
        }
      }
    }
  }

  if (!doc.contains("nodes") || !doc.at("nodes").is_array()) {
    rd.fail("scenario", "'nodes' must be an array");
  } else {
    const auto& nodes = doc.at("nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (auto n = read_node(rd, nodes[i], "nodes[" + std::to_string(i) + "]")) {
        sc.nodes.push_back(std::move(*n));
      }
    }
  }
  if (doc.contains("schedule")) {
    read_schedule(rd, doc.at("schedule"), sc.schedule);
  }

  auto problems = std::move(rd.problems);
  for (auto& p : validate(sc)) {
    problems.push_back(std::move(p));
  }
  if (!problems.empty()) {
    throw ValidationError(std::move(problems));
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError({"cannot open scenario file " + path.string()});
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError({"scenario file " + path.string() + " is not valid JSON: " + e.what()});
  }
  return scenario_from_json(doc);
}

json scenario_to_json(const Scenario& sc) {
  json nodes = json::array();
  for (const auto& n : sc.nodes) {
    json weights;
    for (std::size_t k = 0; k < kPropertyCount; ++k) {
      weights[std::string(to_token(static_cast<Property>(k)))] = n.weights.values()[k];
    }
    json overrides = json::object();
    for (const auto& [trustee, model] : n.control_overrides) {
      overrides[trustee.str()] = control_json(model);
    }
    json relevance = json::object();
    for (auto g : kRelevanceGrades) {
      const double p = n.behavior.relevance_distribution[static_cast<std::size_t>(g)];
      if (p != 0.0) {
        relevance[std::string(to_token(g))] = p;
      }
    }
    json per_requester = json::object();
    for (const auto& [requester, level] : n.behavior.privilege.per_requester) {
      per_requester[requester.str()] = level;
    }
    json node = {
        {"id", n.id.str()},
        {"weights", weights},
        {"gompertz",
         {{"response", {{"b", n.curves.response.b()}, {"c", n.curves.response.c()}}},
          {"gap", {{"b", n.curves.gap.b()}, {"c", n.curves.gap.c()}}},
          {"familiarity", {{"b", n.curves.familiarity.b()}, {"c", n.curves.familiarity.c()}}}}},
        {"interaction_threshold", n.interaction_threshold},
        {"t_min", n.t_min},
        {"control", control_json(n.control)},
        {"control_overrides", overrides},
        {"wait_hours", n.wait_hours},
        {"retry_count", n.retry_count},
        {"behavior",
         {{"respond_probability", n.behavior.respond_probability},
          {"response_delay", delay_json(n.behavior.response_delay)},
          {"relevance", relevance},
          {"privilege",
           {{"min", n.behavior.privilege.min_level},
            {"max", n.behavior.privilege.max_level},
            {"default", n.behavior.privilege.default_level},
            {"per_requester", per_requester}}}}}};
    if (n.disclosure_threshold) {
      node["disclosure_threshold"] = *n.disclosure_threshold;
    }
    nodes.push_back(std::move(node));
  }

  json schedule = json::array();
  for (const auto& a : sc.schedule) {
    schedule.push_back({{"t", a.time},
                        {"actor", a.actor.str()},
                        {"action", to_token(a.kind)},
                        {"target", a.target.str()}});
  }
  return {{"nodes", nodes},
          {"schedule", schedule},
          {"horizon_hours", sc.horizon_hours},
          {"seed", sc.seed},
          {"options", {{"score_opinion_responses", sc.options.score_opinion_responses}}}};
}

}  // namespace peertrust::sim
