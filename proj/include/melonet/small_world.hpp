#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "json.hpp"
#include "melonet/network.hpp"

namespace melonet {

/// Small-world coefficient sigma = (cc / cc_rg) / (l / l_rg), with cc_rg and
/// l_rg averaged over an ensemble of G(n, m) graphs of the same size.
struct SmallWorldResult {
  double cc = 0.0;
  double cc_rg = 0.0;
  double l = 0.0;
  double l_rg = 0.0;
  double sigma = 0.0;  // NaN when undefined
  bool sigma_defined = false;
  std::size_t ensemble_size = 0;
  std::uint64_t seed = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double cc_rg_stddev = 0.0;
  double l_rg_stddev = 0.0;
  std::size_t disconnected_members = 0;  // their l_rg uses the largest component
  std::string note;
};

/// Uniform simple undirected graph with exactly `n` nodes and `m` edges,
/// nodes labelled "0".."n-1". Throws DomainError unless m <= n(n-1)/2.
MelodyNetwork random_graph(std::size_t n, std::size_t m, std::uint64_t seed);

/// Ring lattice where each node links to its `k` nearest neighbours (k even),
/// each edge's far end rewired with probability `p`.
MelodyNetwork watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed);

/// Average local clustering and the mean shortest-path length over ordered
/// pairs of the largest connected component, both on the simple undirected
/// view of `net`. Returns {cc, l}.
std::pair<double, double> clustering_and_path_length(const MelodyNetwork& net);

/// Compares the undirected projection of `net` (self-loops dropped) with
/// `ensemble_size` random graphs seeded `seed + i`. Members are evaluated on
/// up to `threads` workers; the means are folded in member order.
/// Throws DomainError if the projection has < 3 nodes or no edge.
SmallWorldResult small_world_sigma(const MelodyNetwork& net, std::size_t ensemble_size = 100,
                                   std::uint64_t seed = 42, unsigned threads = 0);

nlohmann::ordered_json to_json(const SmallWorldResult& result);

}  // namespace melonet
