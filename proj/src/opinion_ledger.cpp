#include "peertrust/opinion_ledger.hpp"

#include <string>

namespace peertrust {

namespace {

void refresh(OpinionEntry& e) noexcept {
  e.opinion = personal_opinion(e);
  e.weight = node_weight(e);
}

}  // namespace

OpinionEntry OpinionEntry::from_counts(std::uint64_t positive, std::uint64_t negative,
                                       std::uint64_t total) {
  if (positive > total || negative > total - positive) {
    throw DomainError("positive + negative exceeds total (" + std::to_string(positive) + " + " +
                      std::to_string(negative) + " > " + std::to_string(total) + ")");
  }
  OpinionEntry e;
  e.positive = positive;
  e.negative = negative;
  e.total = total;
  refresh(e);
  return e;
}

double personal_opinion(const OpinionEntry& entry) noexcept {
  if (entry.total == 0) {
    return 0.0;
  }
  const double effective =
      static_cast<double>(entry.positive) - static_cast<double>(entry.negative);
  return effective / static_cast<double>(entry.total);
}

double node_weight(const OpinionEntry& entry) noexcept {
  return entry.positive > entry.negative ? personal_opinion(entry) : 0.0;
}

OpinionTable::OpinionTable(NodeId owner) : owner_(std::move(owner)) {}

void OpinionTable::record_request(const NodeId& peer, double now) {
  if (peer == owner_) {
    throw SelfRequestError("node " + owner_.str() + " cannot send a request to itself");
  }
  auto& e = entries_[peer];
  ++e.total;
  if (!e.first_contact_time) {
    e.first_contact_time = now;
  }
  refresh(e);
}

void OpinionTable::record_outcome(const NodeId& peer, Classification outcome, double now) {
  auto it = entries_.find(peer);
  if (it == entries_.end() || it->second.outstanding() == 0) {
    throw ProtocolOrderError("node " + owner_.str() + " has no outstanding request to " +
                             peer.str());
  }
  auto& e = it->second;
  if (outcome == Classification::Positive) {
    ++e.positive;
  } else {
    ++e.negative;
  }
  e.last_interaction_time = now;
  refresh(e);
}

OpinionEntry OpinionTable::entry(const NodeId& peer) const {
  if (peer == owner_) {
    return self_entry();
  }
  auto it = entries_.find(peer);
  return it == entries_.end() ? OpinionEntry{} : it->second;
}

OpinionEntry OpinionTable::self_entry() noexcept {
  // Interactions with oneself are all positive; no counters are kept.
  OpinionEntry e;
  e.opinion = 1.0;
  e.weight = 1.0;
  return e;
}

}  // namespace peertrust
