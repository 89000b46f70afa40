#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace atomemb {

// Stable identifiers. Ids are never reused within a graph, so sets of ids
// recorded before a rewrite stay meaningful afterwards.
struct VertexId {
  std::uint32_t value = 0;
  auto operator<=>(const VertexId&) const = default;
};

struct EdgeId {
  std::uint32_t value = 0;
  auto operator<=>(const EdgeId&) const = default;
};

}  // namespace atomemb

template <>
struct std::hash<atomemb::VertexId> {
  std::size_t operator()(atomemb::VertexId v) const noexcept {
    return std::hash<std::uint32_t>{}(v.value);
  }
};

template <>
struct std::hash<atomemb::EdgeId> {
  std::size_t operator()(atomemb::EdgeId e) const noexcept {
    return std::hash<std::uint32_t>{}(e.value);
  }
};
