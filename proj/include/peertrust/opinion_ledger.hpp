#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "peertrust/node_id.hpp"
#include "peertrust/score.hpp"

namespace peertrust {

/// One row of a node's opinion table.
///
/// `total` counts every request sent to the peer, so requests that never got
/// an answer lower the opinion through the denominator without counting as
/// negative interactions. `opinion` and `weight` are cached derivations of the
/// counters and are refreshed on every update.
struct OpinionEntry {
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  std::uint64_t total = 0;
  double opinion = 0.0;
  double weight = 0.0;
  std::optional<double> last_interaction_time;
  std::optional<double> first_contact_time;

  /// Builds an entry from raw counters with the derived fields filled in.
  /// Throws DomainError if positive + negative > total.
  static OpinionEntry from_counts(std::uint64_t positive, std::uint64_t negative,
                                  std::uint64_t total);

  std::uint64_t outstanding() const noexcept { return total - positive - negative; }

  friend bool operator==(const OpinionEntry&, const OpinionEntry&) = default;
};

/// (positive - negative) / total, or 0 when there has been no request.
double personal_opinion(const OpinionEntry& entry) noexcept;

/// The personal opinion when positives outnumber negatives, otherwise 0.
double node_weight(const OpinionEntry& entry) noexcept;

/// Opinion table kept by a single node about its peers. Single writer.
class OpinionTable {
 public:
  explicit OpinionTable(NodeId owner);

  const NodeId& owner() const noexcept { return owner_; }

  /// Counts a request to `peer`. Throws SelfRequestError when peer is the owner.
  void record_request(const NodeId& peer, double now);

  /// Records the classified response to an earlier request. Throws
  /// ProtocolOrderError when the peer has no outstanding request.
  void record_outcome(const NodeId& peer, Classification outcome, double now);

  /// Entry for `peer`; an empty entry for unknown peers and the fixed self
  /// entry (opinion 1) for the owner.
  OpinionEntry entry(const NodeId& peer) const;

  bool knows(const NodeId& peer) const { return entries_.contains(peer); }

  /// Known peers in id order. The owner never appears here.
  const std::map<NodeId, OpinionEntry>& entries() const noexcept { return entries_; }

  static OpinionEntry self_entry() noexcept;

  friend bool operator==(const OpinionTable&, const OpinionTable&) = default;

 private:
  NodeId owner_;
  std::map<NodeId, OpinionEntry> entries_;
};

}  // namespace peertrust
