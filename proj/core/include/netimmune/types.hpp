#pragma once

#include <cstdint>
#include <limits>

namespace netimmune {

/// Dense node index in [0, n). Removal never renumbers surviving nodes.
using NodeId = std::uint32_t;

/// Dense community index in [0, community_count).
using CommunityId = std::uint32_t;

inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();

}  // namespace netimmune
