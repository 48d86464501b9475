#include "melonet/small_world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "graph_internal.hpp"
#include "melonet/errors.hpp"
#include "melonet/metrics.hpp"

namespace melonet {

MelodyNetwork random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t max_edges = n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2;
  if (m > max_edges)
    throw DomainError("G(n,m) needs m <= n(n-1)/2; got n=" + std::to_string(n) + ", m=" + std::to_string(m));
  MelodyNetwork net("G(" + std::to_string(n) + "," + std::to_string(m) + ")", false);
  for (std::size_t i = 0; i < n; ++i) net.add_node(std::to_string(i));

  // Draw the smaller of the edge set and its complement.
  const bool complement = m > max_edges / 2;
  const std::uint64_t draws = complement ? max_edges - m : m;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n == 0 ? 0 : n - 1);
  std::set<std::pair<std::size_t, std::size_t>> chosen;
  while (chosen.size() < draws) {
    std::size_t u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (v < u) std::swap(u, v);
    chosen.emplace(u, v);
  }
  if (!complement) {
    for (const auto& [u, v] : chosen) net.add_edge(u, v, 1.0);
  } else {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (!chosen.contains({u, v})) net.add_edge(u, v, 1.0);
      }
    }
  }
  return net;
}

MelodyNetwork watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  if (k % 2 != 0 || k >= n) throw DomainError("ring lattice needs an even k < n");
  MelodyNetwork net("WS(" + std::to_string(n) + "," + std::to_string(k) + ")", false);
  for (std::size_t i = 0; i < n; ++i) net.add_node(std::to_string(i));
  std::set<std::pair<std::size_t, std::size_t>> edges;
  auto key = [](std::size_t a, std::size_t b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= k / 2; ++j) edges.insert(key(i, (i + j) % n));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto original = key(i, (i + j) % n);
      if (coin(rng) >= p || !edges.contains(original)) continue;
      std::size_t target = pick(rng);
      // Node i may already be linked to everything; keep the edge then.
      std::size_t tries = 0;
      while ((target == i || edges.contains(key(i, target))) && tries++ < n) target = pick(rng);
      if (target == i || edges.contains(key(i, target))) continue;
      edges.erase(original);
      edges.insert(key(i, target));
    }
  }
  for (const auto& [u, v] : edges) net.add_edge(u, v, 1.0);
  return net;
}

namespace {

struct PathStats {
  double cc = 0.0;
  double l = 0.0;
  std::size_t largest_component = 0;
};

PathStats path_stats(const MelodyNetwork& net) {
  const double cc = clustering(net).average_local;
  const auto adj = detail::undirected_adjacency(net);
  const std::size_t n = adj.size();

  // Largest component; ties go to the one holding the smallest node id.
  std::vector<long> component(n, -1);
  std::vector<std::size_t> sizes;
  std::vector<long> dist;
  for (NodeId s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    detail::bfs_distances(adj, s, dist);
    std::size_t size = 0;
    for (NodeId t = 0; t < n; ++t) {
      if (dist[t] >= 0) {
        component[t] = static_cast<long>(sizes.size());
        ++size;
      }
    }
    sizes.push_back(size);
  }
  if (n == 0) return {cc, 0.0, 0};
  const auto largest = static_cast<long>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::uint64_t total = 0, pairs = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (component[s] != largest) continue;
    detail::bfs_distances(adj, s, dist);
    for (NodeId t = 0; t < n; ++t) {
      if (t != s && dist[t] > 0) {
        total += static_cast<std::uint64_t>(dist[t]);
        ++pairs;
      }
    }
  }
  const double l = pairs == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(pairs);
  return {cc, l, sizes.empty() ? 0 : sizes[static_cast<std::size_t>(largest)]};
}

}  // namespace

std::pair<double, double> clustering_and_path_length(const MelodyNetwork& net) {
  const auto stats = path_stats(net);
  return {stats.cc, stats.l};
}

SmallWorldResult small_world_sigma(const MelodyNetwork& net, std::size_t ensemble_size, std::uint64_t seed,
                                   unsigned threads) {
  if (ensemble_size == 0) throw DomainError("ensemble size must be at least 1");
  const MelodyNetwork simple = undirected_projection(net, false);
  if (simple.node_count() < 3 || simple.edge_count() == 0)
    throw DomainError("small-world sigma needs at least 3 nodes and 1 edge");

  SmallWorldResult r;
  r.ensemble_size = ensemble_size;
  r.seed = seed;
  r.nodes = simple.node_count();
  r.edges = simple.edge_count();
  std::tie(r.cc, r.l) = clustering_and_path_length(simple);

  struct Member {
    double cc = 0.0, l = 0.0;
    bool connected = true;
  };
  std::vector<Member> members(ensemble_size);
  detail::parallel_for(
      ensemble_size,
      [&](std::size_t i) {
        const auto g = random_graph(r.nodes, r.edges, seed + i);
        const auto stats = path_stats(g);
        members[i] = {stats.cc, stats.l, stats.largest_component == g.node_count()};
      },
      threads);

  double cc_sum = 0.0, l_sum = 0.0;
  for (const auto& m : members) {
    cc_sum += m.cc;
    l_sum += m.l;
    if (!m.connected) ++r.disconnected_members;
  }
  const double count = static_cast<double>(ensemble_size);
  r.cc_rg = cc_sum / count;
  r.l_rg = l_sum / count;
  if (ensemble_size > 1) {
    double cc_var = 0.0, l_var = 0.0;
    for (const auto& m : members) {
      cc_var += (m.cc - r.cc_rg) * (m.cc - r.cc_rg);
      l_var += (m.l - r.l_rg) * (m.l - r.l_rg);
    }
    r.cc_rg_stddev = std::sqrt(cc_var / (count - 1.0));
    r.l_rg_stddev = std::sqrt(l_var / (count - 1.0));
  }

  if (r.cc_rg > 0.0 && r.l > 0.0) {
    r.sigma = (r.cc / r.cc_rg) / (r.l / r.l_rg);
    r.sigma_defined = true;
  } else {
    r.sigma = std::numeric_limits<double>::quiet_NaN();
    r.note = "undefined sigma: random-graph clustering is zero";
  }
  if (r.disconnected_members > 0 && r.note.empty())
    r.note = "l_rg of disconnected members measured on their largest component";
  return r;
}

nlohmann::ordered_json to_json(const SmallWorldResult& r) {
  nlohmann::ordered_json j;
  j["cc"] = r.cc;
  j["cc_rg"] = r.cc_rg;
  j["l"] = r.l;
  j["l_rg"] = r.l_rg;
  j["sigma"] = r.sigma_defined ? nlohmann::ordered_json(r.sigma) : nlohmann::ordered_json(nullptr);
  j["sigma_defined"] = r.sigma_defined;
  j["ensemble_size"] = r.ensemble_size;
  j["seed"] = r.seed;
  j["nodes"] = r.nodes;
  j["edges"] = r.edges;
  j["cc_rg_stddev"] = r.cc_rg_stddev;
  j["l_rg_stddev"] = r.l_rg_stddev;
  j["disconnected_members"] = r.disconnected_members;
  j["null_model"] = "G(n,m)";
  j["path_length_scope"] = "largest connected component";
  j["note"] = r.note;
  return j;
}

}  // namespace melonet
