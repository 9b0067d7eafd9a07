#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace peertrust {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (negative time,
/// out-of-range opinion, non-finite value, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A privilege scale whose minimum and maximum coincide.
class DegenerateScaleError : public Error {
 public:
  using Error::Error;
};

/// A node tried to record a request addressed to itself.
class SelfRequestError : public Error {
 public:
  using Error::Error;
};

/// An outcome arrived with no outstanding request slot.
class ProtocolOrderError : public Error {
 public:
  using Error::Error;
};

/// Opinion reports that cannot be aggregated together.
class AggregationError : public Error {
 public:
  using Error::Error;
};

/// Control model whose weights do not form a partition of unity.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A query about a simulation instant that has not happened yet.
class QueryError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario. Carries every violated invariant, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string out = "invalid scenario";
    for (const auto& p : problems) {
      out += "\n  - ";
      out += p;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

}  // namespace peertrust
