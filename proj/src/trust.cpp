#include "peertrust/trust.hpp"

#include <cmath>
#include <string>

#include "peertrust/errors.hpp"

namespace peertrust {

namespace {

void require_opinion(double x, const char* what) {
  if (!std::isfinite(x) || x < -1.0 || x > 1.0) {
    throw DomainError(std::string(what) + " must lie in [-1, 1], got " + std::to_string(x));
  }
}

}  // namespace

void OpinionReport::validate() const {
  require_opinion(opinion, "reported opinion");
  if (!std::isfinite(reporter_weight) || reporter_weight < 0.0 || reporter_weight > 1.0) {
    throw DomainError("reporter weight must lie in [0, 1], got " +
                      std::to_string(reporter_weight));
  }
  if (reporter == subject) {
    throw DomainError("node " + reporter.str() + " cannot report on itself");
  }
}

double community_opinion(std::span<const OpinionReport> reports) {
  if (reports.empty()) {
    return 0.0;
  }
  const NodeId& subject = reports.front().subject;
  double sum = 0.0;
  for (const auto& r : reports) {
    if (r.subject != subject) {
      throw AggregationError("opinion reports mix subjects " + subject.str() + " and " +
                             r.subject.str());
    }
    r.validate();
    sum += r.reporter_weight * r.opinion;
  }
  return sum / static_cast<double>(reports.size());
}

Combination combine_otimes(double personal, double community) {
  require_opinion(personal, "personal opinion");
  require_opinion(community, "community opinion");

  if (personal == 0.0) {
    return {community, false};
  }
  if (community == 0.0) {
    return {personal, false};
  }
  const double mp = std::abs(personal);
  const double mc = std::abs(community);
  if (mp > mc) {
    return {personal, false};
  }
  if (mp < mc) {
    return {community, false};
  }
  if (personal == community) {
    return {personal, false};
  }
  // Equal magnitude, opposite sign.
  return {0.0, true};
}

std::string_view to_token(TrustBasis basis) noexcept {
  return basis == TrustBasis::PersonalOnly ? "personal_only" : "combined";
}

TrustAssessment assess_trust(const OpinionEntry& entry, std::span<const OpinionReport> reports,
                             std::uint32_t t_min) {
  if (t_min == 0) {
    throw DomainError("t_min must be at least 1");
  }
  TrustAssessment out;
  out.personal = personal_opinion(entry);
  if (entry.total >= t_min) {
    out.trust = out.personal;
    out.basis = TrustBasis::PersonalOnly;
    return out;
  }
  const double community = community_opinion(reports);
  const auto combined = combine_otimes(out.personal, community);
  out.community = community;
  out.trust = combined.trust;
  out.conflict = combined.conflict;
  out.basis = TrustBasis::Combined;
  return out;
}

std::vector<OpinionReport> exclude_self_reports(const NodeId& trustor, const NodeId& subject,
                                                std::span<const OpinionReport> reports) {
  std::vector<OpinionReport> kept;
  kept.reserve(reports.size());
  for (const auto& r : reports) {
    if (r.reporter != trustor && r.reporter != subject) {
      kept.push_back(r);
    }
  }
  return kept;
}

}  // namespace peertrust
