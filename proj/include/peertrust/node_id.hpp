#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "peertrust/errors.hpp"

namespace peertrust {

/// Identifier of a community member. Never empty.
class NodeId {
 public:
  explicit NodeId(std::string id) : id_(std::move(id)) {
    if (id_.empty()) {
      throw DomainError("node id must not be empty");
    }
  }

  const std::string& str() const noexcept { return id_; }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
  friend bool operator==(const NodeId&, const NodeId&) = default;

  friend std::ostream& operator<<(std::ostream& os, const NodeId& id) { return os << id.id_; }

 private:
  std::string id_;
};

}  // namespace peertrust

template <>
struct std::hash<peertrust::NodeId> {
  std::size_t operator()(const peertrust::NodeId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
