#include "peertrust/score.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "peertrust/errors.hpp"

namespace peertrust {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

void require_time(double t, const char* what) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError(std::string(what) + " must be a finite nonnegative number, got " +
                      std::to_string(t));
  }
}

void require_unit(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

// b * exp(-c t); the inner term of every curve.
double gompertz_inner(const GompertzParams& p, double t) { return p.b() * std::exp(-p.c() * t); }

}  // namespace

GompertzParams::GompertzParams(double b, double c) : b_(b), c_(c) {
  if (!std::isfinite(b) || b <= 0.0) {
    throw DomainError("Gompertz constant b must be positive, got " + std::to_string(b));
  }
  if (!std::isfinite(c) || c <= 0.0) {
    throw DomainError("Gompertz constant c must be positive, got " + std::to_string(c));
  }
}

std::string_view to_token(RelevanceGrade grade) noexcept {
  switch (grade) {
    case RelevanceGrade::NotAtAllRelevant:
      return "not_at_all";
    case RelevanceGrade::MayNotBeRelevant:
      return "may_not";
    case RelevanceGrade::CantSay:
      return "cant_say";
    case RelevanceGrade::ToSomeExtentRelevant:
      return "to_some_extent";
    case RelevanceGrade::FullyRelevant:
      return "fully";
  }
  return "?";
}

std::optional<RelevanceGrade> parse_relevance(std::string_view token) noexcept {
  for (auto g : kRelevanceGrades) {
    if (to_token(g) == token) {
      return g;
    }
  }
  return std::nullopt;
}

PrivilegeLevel::PrivilegeLevel(int level, int min_level, int max_level)
    : level_(level), min_(min_level), max_(max_level) {
  if (min_level == max_level) {
    throw DegenerateScaleError("privilege scale has min == max == " + std::to_string(min_level));
  }
  if (min_level > max_level) {
    throw DomainError("privilege scale is inverted: min " + std::to_string(min_level) +
                      " > max " + std::to_string(max_level));
  }
  if (level < min_level || level > max_level) {
    throw DomainError("privilege level " + std::to_string(level) + " outside [" +
                      std::to_string(min_level) + ", " + std::to_string(max_level) + "]");
  }
}

std::string_view to_token(Property p) noexcept {
  switch (p) {
    case Property::ResponseTime:
      return "response_time";
    case Property::TimeGap:
      return "time_gap";
    case Property::Familiarity:
      return "familiarity";
    case Property::Reciprocity:
      return "reciprocity";
    case Property::Relevance:
      return "relevance";
  }
  return "?";
}

PropertyWeights::PropertyWeights(const std::array<double, kPropertyCount>& weights) : w_(weights) {
  for (std::size_t k = 0; k < kPropertyCount; ++k) {
    if (!std::isfinite(w_[k]) || w_[k] < 0.0 || w_[k] > 1.0) {
      throw DomainError("weight for " + std::string(to_token(static_cast<Property>(k))) +
                        " must lie in [0, 1], got " + std::to_string(w_[k]));
    }
  }
  const double sum = std::accumulate(w_.begin(), w_.end(), 0.0);
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw DomainError("property weights must sum to 1, got " + std::to_string(sum));
  }
}

PropertyWeights PropertyWeights::defaults() { return PropertyWeights({0.2, 0.1, 0.3, 0.3, 0.1}); }

InteractionInputs InteractionInputs::sample() {
  InteractionInputs in;
  in.response_elapsed = Hours{10.0};
  in.gap_since_previous = Months{5.0};
  in.acquaintance_age = Years{1.0};
  in.privilege = PrivilegeLevel{9, 0, 10};
  in.relevance = RelevanceGrade::FullyRelevant;
  return in;
}

std::string_view to_string(Classification c) noexcept {
  return c == Classification::Positive ? "Positive" : "Negative";
}

// 1 - exp(-x) is computed as -expm1(-x) so that tiny inner terms keep their
// precision instead of collapsing to zero.
double response_time_score(const GompertzParams& params, Hours elapsed) {
  require_time(elapsed.value, "response time");
  return -std::expm1(-gompertz_inner(params, elapsed.value));
}

double time_gap_score(const GompertzParams& params, Months gap) {
  require_time(gap.value, "time gap");
  return -std::expm1(-gompertz_inner(params, gap.value));
}

double familiarity_score(const GompertzParams& params, Years age) {
  require_time(age.value, "acquaintance age");
  return std::exp(-gompertz_inner(params, age.value));
}

double reciprocity_score(const PrivilegeLevel& privilege) noexcept {
  return static_cast<double>(privilege.level() - privilege.min_level()) /
         static_cast<double>(privilege.max_level() - privilege.min_level());
}

double relevance_score(RelevanceGrade grade) noexcept {
  switch (grade) {
    case RelevanceGrade::NotAtAllRelevant:
      return 0.00;
    case RelevanceGrade::MayNotBeRelevant:
      return 0.25;
    case RelevanceGrade::CantSay:
      return 0.50;
    case RelevanceGrade::ToSomeExtentRelevant:
      return 0.75;
    case RelevanceGrade::FullyRelevant:
      return 1.00;
  }
  return 0.0;
}

InteractionScore aggregate_score(const InteractionInputs& inputs, const PropertyWeights& weights) {
  InteractionScore out;
  out.scores[0] = response_time_score(inputs.curves.response, inputs.response_elapsed);
  out.scores[1] = time_gap_score(inputs.curves.gap, inputs.gap_since_previous);
  out.scores[2] = familiarity_score(inputs.curves.familiarity, inputs.acquaintance_age);
  out.scores[3] = reciprocity_score(inputs.privilege);
  out.scores[4] = relevance_score(inputs.relevance);

  double sum = 0.0;
  for (std::size_t k = 0; k < kPropertyCount; ++k) {
    sum += weights.values()[k] * out.scores[k];
  }
  // Weights may sum to 1 +- 1e-9; keep the aggregate inside the unit interval.
  out.aggregate = std::min(std::max(sum, 0.0), 1.0);
  return out;
}

Classification classify_interaction(double aggregate, double threshold) {
  require_unit(aggregate, "interaction score");
  require_unit(threshold, "interaction threshold");
  return aggregate > threshold ? Classification::Positive : Classification::Negative;
}

InteractionScore score_interaction(const InteractionInputs& inputs, const PropertyWeights& weights,
                                   double threshold) {
  auto score = aggregate_score(inputs, weights);
  score.classification = classify_interaction(score.aggregate, threshold);
  return score;
}

}  // namespace peertrust
