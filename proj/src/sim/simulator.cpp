#include "peertrust/sim/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "peertrust/errors.hpp"

namespace peertrust::sim {

namespace {

double draw_delay(const DelayDistribution& dist, RandomStream& rng) {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FixedDelay>) {
          return d.hours;
        } else if constexpr (std::is_same_v<T, UniformDelay>) {
          return rng.uniform(d.min_hours, d.max_hours);
        } else {
          return rng.exponential(d.mean_hours);
        }
      },
      dist);
}

}  // namespace

TrustMatrix compute_trust_matrix(const Scenario& scenario,
                                 const std::map<NodeId, OpinionTable>& tables) {
  TrustMatrix matrix;
  const auto& nodes = scenario.nodes;
  matrix.reserve(nodes.size() * (nodes.size() > 0 ? nodes.size() - 1 : 0));

  std::vector<OpinionReport> reports;
  for (const auto& trustor : nodes) {
    const auto& own = tables.at(trustor.id);
    for (const auto& trustee : nodes) {
      if (trustee.id == trustor.id) {
        continue;
      }
      reports.clear();
      for (const auto& reporter : nodes) {
        if (reporter.id == trustor.id || reporter.id == trustee.id) {
          continue;
        }
        reports.push_back(OpinionReport{reporter.id, trustee.id,
                                        tables.at(reporter.id).entry(trustee.id).opinion,
                                        own.entry(reporter.id).weight});
      }
      MatrixEntry cell{trustor.id, trustee.id, {}, {}};
      cell.trust = assess_trust(own.entry(trustee.id), reports, trustor.t_min);
      cell.confidence = evaluate_confidence(cell.trust.trust, trustor.control_for(trustee.id),
                                            trustor.disclosure_threshold.value());
      matrix.push_back(std::move(cell));
    }
  }
  return matrix;
}

Simulator::Simulator(Scenario scenario) : scenario_(std::move(scenario)) {
  require_valid(scenario_);
  nodes_.reserve(scenario_.nodes.size());
  for (std::size_t i = 0; i < scenario_.nodes.size(); ++i) {
    const auto& cfg = scenario_.nodes[i];
    nodes_.push_back(NodeState{i, OpinionTable{cfg.id},
                               RandomStream{substream_seed(scenario_.seed, cfg.id.str())}});
    index_.emplace(cfg.id, i);
  }
  for (std::size_t i = 0; i < scenario_.schedule.size(); ++i) {
    push(scenario_.schedule[i].time, RunAction{i});
  }
}

std::size_t Simulator::index_of(const NodeId& node) const {
  auto it = index_.find(node);
  if (it == index_.end()) {
    throw QueryError("unknown node '" + node.str() + "'");
  }
  return it->second;
}

const OpinionTable& Simulator::table(const NodeId& node) const {
  return nodes_[index_of(node)].table;
}

std::map<NodeId, OpinionTable> Simulator::tables() const {
  std::map<NodeId, OpinionTable> out;
  for (const auto& n : nodes_) {
    out.emplace(n.table.owner(), n.table);
  }
  return out;
}

std::vector<std::uint64_t> Simulator::pending_requests() const {
  std::vector<std::uint64_t> out;
  for (const auto& [rid, req] : requests_) {
    if (req.open && req.ledgered) {
      out.push_back(rid);
    }
  }
  return out;
}

void Simulator::push(double time, Action action) {
  queue_.push(Item{time, next_order_++, action});
}

void Simulator::emit(std::size_t actor, std::size_t peer, EventPayload payload) {
  events_.push_back(TraceEvent{now_, events_.size(), id(actor), id(peer), std::move(payload)});
}

void Simulator::run_until(double time) {
  const double stop = std::min(time, scenario_.horizon_hours);
  while (!queue_.empty() && queue_.top().time <= stop) {
    Item item = queue_.top();
    queue_.pop();
    now_ = item.time;
    std::visit([this](const auto& a) { handle(a); }, item.action);
  }
  now_ = std::max(now_, stop);
}

std::uint64_t Simulator::send_request(std::size_t requester, std::size_t responder,
                                      RequestPurpose purpose, std::uint32_t attempt,
                                      std::optional<std::uint64_t> round) {
  const std::uint64_t rid = next_request_++;
  const bool ledgered = purpose == RequestPurpose::Data || scenario_.options.score_opinion_responses;
  const auto& asker = config(requester);
  const auto& behavior = config(responder).behavior;
  auto& rng = nodes_[responder].rng;

  if (ledgered) {
    nodes_[requester].table.record_request(id(responder), now_);
    emit(requester, responder, RequestSent{rid, purpose, attempt});
  }

  // Opinion responses are always treated as fully relevant.
  RelevanceGrade relevance = RelevanceGrade::FullyRelevant;
  const bool responds = rng.bernoulli(behavior.respond_probability);
  double delay = 0.0;
  if (responds) {
    delay = draw_delay(behavior.response_delay, rng);
    if (purpose == RequestPurpose::Data) {
      relevance = kRelevanceGrades[rng.categorical(behavior.relevance_distribution)];
    }
  }
  requests_.emplace(rid, Request{requester, responder, purpose, attempt, now_, relevance, round,
                                 ledgered});

  if (responds && delay <= asker.wait_hours) {
    push(now_ + delay, Arrival{rid});
  } else {
    push(now_ + asker.wait_hours, Expiry{rid, responds});
  }
  return rid;
}

void Simulator::handle(const RunAction& a) {
  const auto& action = scenario_.schedule[a.schedule_index];
  const std::size_t actor = index_.at(action.actor);
  const std::size_t target = index_.at(action.target);
  switch (action.kind) {
    case ActionKind::DataRequest:
      send_request(actor, target, RequestPurpose::Data, 0, std::nullopt);
      break;
    case ActionKind::TrustQuery:
      start_trust_round(actor, target, false);
      break;
    case ActionKind::ConfidenceQuery:
      start_trust_round(actor, target, true);
      break;
  }
}

void Simulator::score_response(std::uint64_t request_id, const Request& request) {
  const auto& asker = config(request.requester);
  const auto& responder_id = id(request.responder);
  const OpinionEntry entry = nodes_[request.requester].table.entry(responder_id);

  InteractionInputs inputs;
  inputs.response_elapsed = Hours{now_ - request.sent_at};
  inputs.gap_since_previous =
      entry.last_interaction_time ? to_months(Hours{now_ - *entry.last_interaction_time}) : Months{0.0};
  inputs.acquaintance_age = to_years(Hours{now_ - entry.first_contact_time.value_or(now_)});
  inputs.privilege = config(request.responder).behavior.privilege.level_for(asker.id);
  inputs.relevance = request.relevance;
  inputs.curves = asker.curves;

  const auto score = score_interaction(inputs, asker.weights, asker.interaction_threshold);
  nodes_[request.requester].table.record_outcome(responder_id, *score.classification, now_);

  ResponseReceived ev;
  ev.request = request_id;
  ev.purpose = request.purpose;
  ev.elapsed_hours = inputs.response_elapsed.value;
  ev.gap_months = inputs.gap_since_previous.value;
  ev.age_years = inputs.acquaintance_age.value;
  ev.privilege = inputs.privilege;
  ev.relevance = inputs.relevance;
  ev.score = score;
  emit(request.requester, request.responder, std::move(ev));
}

void Simulator::handle(const Arrival& a) {
  auto& request = requests_.at(a.request);
  request.open = false;
  if (request.ledgered) {
    score_response(a.request, request);
  }
  if (request.purpose == RequestPurpose::Opinion) {
    auto& round = rounds_.at(*request.round);
    const double opinion = nodes_[request.responder].table.entry(id(round.subject)).opinion;
    round.reports.emplace_back(request.responder, opinion);
    emit(request.requester, request.responder,
         OpinionReported{*request.round, id(round.subject), opinion});
  }
}

void Simulator::handle(const Expiry& e) {
  auto& request = requests_.at(e.request);
  request.open = false;
  if (!request.ledgered) {
    return;
  }
  emit(request.requester, request.responder, Timeout{e.request, request.purpose, e.late});
  if (request.purpose == RequestPurpose::Data && request.attempt < config(request.requester).retry_count) {
    send_request(request.requester, request.responder, RequestPurpose::Data, request.attempt + 1,
                 std::nullopt);
  }
}

void Simulator::start_trust_round(std::size_t trustor, std::size_t subject, bool with_confidence) {
  const std::uint64_t round_id = next_round_++;
  const auto& cfg = config(trustor);
  const auto entry = nodes_[trustor].table.entry(id(subject));
  if (entry.total >= cfg.t_min) {
    conclude(round_id, trustor, subject, with_confidence, {});
    return;
  }

  OpinionRequested ev{round_id, {}};
  std::vector<std::size_t> recipients;
  for (std::size_t x = 0; x < nodes_.size(); ++x) {
    if (x != trustor && x != subject) {
      recipients.push_back(x);
      ev.recipients.push_back(id(x));
    }
  }
  emit(trustor, subject, std::move(ev));
  rounds_.emplace(round_id, Round{trustor, subject, with_confidence, {}});
  for (std::size_t x : recipients) {
    send_request(trustor, x, RequestPurpose::Opinion, 0, round_id);
  }
  push(now_ + cfg.wait_hours, CloseRound{round_id});
}

void Simulator::handle(const CloseRound& c) {
  auto node = rounds_.extract(c.round);
  const Round& round = node.mapped();
  const auto& trustor_table = nodes_[round.trustor].table;
  std::vector<OpinionReport> reports;
  reports.reserve(round.reports.size());
  for (const auto& [reporter, opinion] : round.reports) {
    reports.push_back(OpinionReport{id(reporter), id(round.subject), opinion,
                                    trustor_table.entry(id(reporter)).weight});
  }
  conclude(c.round, round.trustor, round.subject, round.with_confidence, reports);
}

void Simulator::conclude(std::uint64_t round_id, std::size_t trustor, std::size_t subject,
                         bool with_confidence, std::span<const OpinionReport> reports) {
  const auto& cfg = config(trustor);
  const auto entry = nodes_[trustor].table.entry(id(subject));
  const auto assessment = assess_trust(entry, reports, cfg.t_min);
  emit(trustor, subject,
       TrustAssessed{round_id, static_cast<std::uint32_t>(reports.size()), assessment});
  if (with_confidence) {
    const auto result = evaluate_confidence(assessment.trust, cfg.control_for(id(subject)),
                                            cfg.disclosure_threshold.value());
    emit(trustor, subject, DisclosureDecided{round_id, result});
  }
}

TrustMatrix Simulator::snapshot_trust_matrix(double time) const {
  if (!(time <= now_)) {
    throw QueryError("cannot snapshot at t=" + std::to_string(time) +
                     ", simulation is at t=" + std::to_string(now_));
  }
  if (time == now_) {
    return compute_trust_matrix(scenario_, tables());
  }
  std::vector<NodeId> ids;
  for (const auto& n : scenario_.nodes) {
    ids.push_back(n.id);
  }
  return compute_trust_matrix(scenario_, replay_tables(ids, events_, time));
}

SimulationTrace Simulator::finish() {
  run();
  SimulationTrace trace;
  trace.final_tables = tables();
  trace.trust_matrix = compute_trust_matrix(scenario_, trace.final_tables);
  trace.pending_requests = pending_requests();
  trace.horizon_hours = scenario_.horizon_hours;
  trace.events = events_;
  return trace;
}

SimulationTrace run_scenario(const Scenario& scenario) { return Simulator{scenario}.finish(); }

}  // namespace peertrust::sim
