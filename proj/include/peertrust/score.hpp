#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "peertrust/units.hpp"

namespace peertrust {

/// Shape constants of a Gompertz curve exp(-b * exp(-c * t)). Both must be
/// strictly positive and finite.
class GompertzParams {
 public:
  GompertzParams(double b, double c);

  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }

  friend bool operator==(const GompertzParams&, const GompertzParams&) = default;

 private:
  double b_;
  double c_;
};

/// The three curves a node uses to score time-based properties.
struct GompertzCurves {
  GompertzParams response{500.0, 0.5};
  GompertzParams gap{10.0, 0.25};
  GompertzParams familiarity{10.0, 2.5};

  friend bool operator==(const GompertzCurves&, const GompertzCurves&) = default;
};

enum class RelevanceGrade {
  NotAtAllRelevant,
  MayNotBeRelevant,
  CantSay,
  ToSomeExtentRelevant,
  FullyRelevant,
};

inline constexpr std::array<RelevanceGrade, 5> kRelevanceGrades{
    RelevanceGrade::NotAtAllRelevant, RelevanceGrade::MayNotBeRelevant, RelevanceGrade::CantSay,
    RelevanceGrade::ToSomeExtentRelevant, RelevanceGrade::FullyRelevant};

/// Short token used in files and on the command line ("not_at_all", ..., "fully").
std::string_view to_token(RelevanceGrade grade) noexcept;
std::optional<RelevanceGrade> parse_relevance(std::string_view token) noexcept;

/// Authorization level r granted by a responder on its scale [min, max].
/// Throws DegenerateScaleError when min == max and DomainError when the
/// scale is inverted or the level falls outside it.
class PrivilegeLevel {
 public:
  PrivilegeLevel(int level, int min_level, int max_level);

  int level() const noexcept { return level_; }
  int min_level() const noexcept { return min_; }
  int max_level() const noexcept { return max_; }

  friend bool operator==(const PrivilegeLevel&, const PrivilegeLevel&) = default;

 private:
  int level_;
  int min_;
  int max_;
};

enum class Property : std::size_t {
  ResponseTime = 0,
  TimeGap = 1,
  Familiarity = 2,
  Reciprocity = 3,
  Relevance = 4,
};

inline constexpr std::size_t kPropertyCount = 5;

std::string_view to_token(Property p) noexcept;

/// Relative importance of the five interaction properties. Each weight lies
/// in [0, 1] and the weights sum to 1 within 1e-9.
class PropertyWeights {
 public:
  explicit PropertyWeights(const std::array<double, kPropertyCount>& weights);

  /// 0.2, 0.1, 0.3, 0.3, 0.1 for response time, time gap, familiarity,
  /// reciprocity and relevance.
  static PropertyWeights defaults();

  double operator[](Property p) const noexcept { return w_[static_cast<std::size_t>(p)]; }
  const std::array<double, kPropertyCount>& values() const noexcept { return w_; }

  friend bool operator==(const PropertyWeights&, const PropertyWeights&) = default;

 private:
  std::array<double, kPropertyCount> w_;
};

struct InteractionInputs {
  Hours response_elapsed;
  Months gap_since_previous;
  Years acquaintance_age;
  PrivilegeLevel privilege{10, 0, 10};
  RelevanceGrade relevance = RelevanceGrade::FullyRelevant;
  GompertzCurves curves;

  /// 10 h response, 5 month gap, 1 year acquaintance, level 9 of 0..10,
  /// fully relevant, default curves. Scores 0.7894 with default weights.
  static InteractionInputs sample();
};

enum class Classification { Positive, Negative };

std::string_view to_string(Classification c) noexcept;

struct InteractionScore {
  std::array<double, kPropertyCount> scores{};
  double aggregate = 0.0;
  std::optional<Classification> classification;

  double operator[](Property p) const noexcept { return scores[static_cast<std::size_t>(p)]; }

  friend bool operator==(const InteractionScore&, const InteractionScore&) = default;
};

// Time-based property scores. Each throws DomainError on a negative or
// non-finite time.
double response_time_score(const GompertzParams& params, Hours elapsed);
double time_gap_score(const GompertzParams& params, Months gap);
double familiarity_score(const GompertzParams& params, Years age);

double reciprocity_score(const PrivilegeLevel& privilege) noexcept;
double relevance_score(RelevanceGrade grade) noexcept;

/// Scores every property and folds them into the weighted aggregate. The
/// classification is left unset.
InteractionScore aggregate_score(const InteractionInputs& inputs, const PropertyWeights& weights);

/// Positive iff aggregate > threshold. Both arguments must lie in [0, 1].
Classification classify_interaction(double aggregate, double threshold);

/// aggregate_score followed by classify_interaction.
InteractionScore score_interaction(const InteractionInputs& inputs, const PropertyWeights& weights,
                                   double threshold);

}  // namespace peertrust
