#pragma once

#include <string>
#include <vector>

namespace peertrust {

/// An external influence on the trustee's behaviour, the trustor's
/// confidence in it and its relative weight.
struct ControlParameter {
  std::string name;
  double confidence = 0.0;
  double weight = 0.0;

  friend bool operator==(const ControlParameter&, const ControlParameter&) = default;
};

/// Set of control parameters whose weights sum to 1 within 1e-9. The
/// constructor throws ModelError otherwise, or when a confidence or weight
/// leaves [0, 1].
class ControlModel {
 public:
  explicit ControlModel(std::vector<ControlParameter> parameters);

  /// behaviour (1.0, 0.2), legal system (0.8, 0.5), social (0.5, 0.3).
  static ControlModel defaults();

  const std::vector<ControlParameter>& parameters() const noexcept { return params_; }

  friend bool operator==(const ControlModel&, const ControlModel&) = default;

 private:
  std::vector<ControlParameter> params_;
};

struct ConfidenceResult {
  double trust = 0.0;
  double control = 0.0;
  double confidence = 0.0;
  bool share = false;
  double threshold = 0.0;

  friend bool operator==(const ConfidenceResult&, const ConfidenceResult&) = default;
};

/// Weighted sum of parameter confidences, in [0, 1].
double control_value(const ControlModel& model) noexcept;

/// trust + control. Throws DomainError unless trust is in [-1, 1] and
/// control in [0, 1].
double confidence(double trust, double control);

/// Share only when confidence strictly exceeds the threshold.
bool decide_disclosure(double confidence, double threshold) noexcept;

ConfidenceResult evaluate_confidence(double trust, const ControlModel& model, double threshold);

}  // namespace peertrust
