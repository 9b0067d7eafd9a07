#include "peertrust/confidence.hpp"

#include <algorithm>
#include <cmath>

#include "peertrust/errors.hpp"

namespace peertrust {

ControlModel::ControlModel(std::vector<ControlParameter> parameters)
    : params_(std::move(parameters)) {
  if (params_.empty()) {
    throw ModelError("control model needs at least one parameter");
  }
  double sum = 0.0;
  for (const auto& p : params_) {
    if (!std::isfinite(p.confidence) || p.confidence < 0.0 || p.confidence > 1.0) {
      throw ModelError("confidence in '" + p.name + "' must lie in [0, 1], got " +
                       std::to_string(p.confidence));
    }
    if (!std::isfinite(p.weight) || p.weight < 0.0 || p.weight > 1.0) {
      throw ModelError("weight of '" + p.name + "' must lie in [0, 1], got " +
                       std::to_string(p.weight));
    }
    sum += p.weight;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ModelError("control weights must sum to 1, got " + std::to_string(sum));
  }
}

ControlModel ControlModel::defaults() {
  return ControlModel({{"behaviour", 1.0, 0.2}, {"legal system", 0.8, 0.5}, {"social", 0.5, 0.3}});
}

double control_value(const ControlModel& model) noexcept {
  double sum = 0.0;
  for (const auto& p : model.parameters()) {
    sum += p.weight * p.confidence;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double confidence(double trust, double control) {
  if (!std::isfinite(trust) || trust < -1.0 || trust > 1.0) {
    throw DomainError("trust must lie in [-1, 1], got " + std::to_string(trust));
  }
  if (!std::isfinite(control) || control < 0.0 || control > 1.0) {
    throw DomainError("control must lie in [0, 1], got " + std::to_string(control));
  }
  return trust + control;
}

bool decide_disclosure(double confidence, double threshold) noexcept {
  return confidence > threshold;
}

ConfidenceResult evaluate_confidence(double trust, const ControlModel& model, double threshold) {
  ConfidenceResult r;
  r.trust = trust;
  r.control = control_value(model);
  r.confidence = confidence(trust, r.control);
  r.threshold = threshold;
  r.share = decide_disclosure(r.confidence, threshold);
  return r;
}

}  // namespace peertrust
