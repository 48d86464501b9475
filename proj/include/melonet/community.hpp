#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"
#include "melonet/export.hpp"
#include "melonet/network.hpp"

namespace melonet {

struct CommunityAssignment {
  CommunityMap membership;  // node label -> community id in 0..C-1
  double modularity_q = 0.0;
  std::vector<std::size_t> community_sizes;  // indexed by community id
  double resolution = 1.0;
  std::uint64_t seed = 0;
  std::size_t levels = 0;  // aggregation levels performed
  bool degenerate = false;  // no edge weight; Q fixed at 0

  std::size_t community_count() const noexcept { return community_sizes.size(); }
};

/// Weighted modularity of a partition
///
///     Q = 1/(2m) * sum_ij (A_ij - resolution * k_i k_j / (2m)) delta(c_i, c_j)
///
/// on the undirected projection (self-loops kept, A_ii = 2w). Directed input
/// is projected first. Returns 0 when the graph has no weight.
/// Throws DomainError when a node is missing from `assignment`.
double modularity_of(const MelodyNetwork& net, const CommunityMap& assignment, double resolution = 1.0);

/// Largest node set the refinement phase re-partitions exactly.
inline constexpr std::size_t kDefaultRefineLimit = 10;

/// Louvain-style greedy optimization: local moves to the best neighbouring
/// community, then aggregation, repeated while Q improves by at least 1e-9.
/// Each round ends with a refinement on the original graph: single-node
/// moves, then an exact re-partition of every community together with its
/// linked communities when their union has at most `refine_limit` nodes
/// (0 gives plain Louvain). Rounds repeat while Q improves.
/// Nodes are visited in ascending label order when `seed` is 0 and in a
/// seeded shuffle otherwise.
CommunityAssignment detect_communities(const MelodyNetwork& net, double resolution = 1.0, std::uint64_t seed = 0,
                                       std::size_t refine_limit = kDefaultRefineLimit);

/// (community id, size) sorted by size descending, ties by id.
std::vector<std::pair<std::size_t, std::size_t>> community_size_distribution(const CommunityAssignment& assignment);

/// `node,community` rows sorted by node label.
std::string assignment_csv(const CommunityAssignment& assignment);

nlohmann::ordered_json to_json(const CommunityAssignment& assignment);

}  // namespace melonet
