#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "peertrust/node_id.hpp"
#include "peertrust/opinion_ledger.hpp"

namespace peertrust {

/// A reporter's personal opinion about a subject, tagged with the weight
/// the trustor currently gives that reporter.
struct OpinionReport {
  NodeId reporter;
  NodeId subject;
  double opinion = 0.0;
  double reporter_weight = 0.0;

  /// Throws DomainError when opinion is outside [-1, 1], weight outside
  /// [0, 1], or reporter == subject.
  void validate() const;
};

/// Weighted community opinion: sum of weight * opinion over the reports,
/// divided by the number of reports. 0 when there are none. Throws
/// AggregationError if the reports are about different subjects.
double community_opinion(std::span<const OpinionReport> reports);

struct Combination {
  double trust = 0.0;
  bool conflict = false;

  friend bool operator==(const Combination&, const Combination&) = default;
};

/// Merges a personal and a community opinion. A zero on either side defers
/// to the other; otherwise the opinion of larger magnitude wins. Equal
/// magnitudes with the same sign give that value; exact opposites give 0
/// and raise the conflict flag. Inputs must lie in [-1, 1].
Combination combine_otimes(double personal, double community);

enum class TrustBasis { PersonalOnly, Combined };

std::string_view to_token(TrustBasis basis) noexcept;

struct TrustAssessment {
  double personal = 0.0;
  std::optional<double> community;
  double trust = 0.0;
  TrustBasis basis = TrustBasis::PersonalOnly;
  bool conflict = false;

  friend bool operator==(const TrustAssessment&, const TrustAssessment&) = default;
};

/// Trust in the entry's peer. With at least `t_min` requests on record the
/// personal opinion stands alone; below that it is combined with the
/// community opinion from `reports`. Throws DomainError when t_min == 0.
TrustAssessment assess_trust(const OpinionEntry& entry, std::span<const OpinionReport> reports,
                             std::uint32_t t_min);

/// Drops reports authored by the trustor or by the subject itself.
std::vector<OpinionReport> exclude_self_reports(const NodeId& trustor, const NodeId& subject,
                                                std::span<const OpinionReport> reports);

}  // namespace peertrust
