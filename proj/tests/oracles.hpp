#pragma once

// Brute-force reference computations for the test suites. Nothing here calls
// into the library's metric code; graphs are exchanged as dense matrices.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "melonet/network.hpp"

namespace oracle {

/// Dense 0/1 adjacency, `adj[u][v]` for an arc u -> v. Self-loops allowed.
struct Digraph {
  std::size_t n = 0;
  std::vector<std::vector<int>> adj;

  explicit Digraph(std::size_t size = 0) : n(size), adj(size, std::vector<int>(size, 0)) {}
};

inline Digraph random_digraph(std::size_t n, double p, std::uint32_t seed, bool symmetric = false,
                              bool self_loops = false) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(p);
  Digraph g(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = symmetric ? u : 0; v < n; ++v) {
      if (u == v && !self_loops) continue;
      if (coin(rng)) {
        g.adj[u][v] = 1;
        if (symmetric) g.adj[v][u] = 1;
      }
    }
  }
  return g;
}

inline std::string node_name(std::size_t i) { return "v" + std::to_string(100 + i); }

/// Directed network whose edge set is the arc set of `g`.
inline melonet::MelodyNetwork to_network(const Digraph& g) {
  melonet::MelodyNetwork net("oracle", true);
  for (std::size_t i = 0; i < g.n; ++i) net.add_node(node_name(i));
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = 0; v < g.n; ++v)
      if (g.adj[u][v]) net.add_edge(u, v, 1.0);
  return net;
}

/// Undirected network from a symmetric matrix (upper triangle read).
inline melonet::MelodyNetwork to_undirected_network(const std::vector<std::vector<double>>& w) {
  melonet::MelodyNetwork net("oracle", false);
  for (std::size_t i = 0; i < w.size(); ++i) net.add_node(node_name(i));
  for (std::size_t u = 0; u < w.size(); ++u)
    for (std::size_t v = u; v < w.size(); ++v)
      if (w[u][v] > 0) net.add_edge(u, v, w[u][v]);
  return net;
}

// --- distances: Floyd-Warshall ------------------------------------------------

struct DistanceOracle {
  double average = 0.0;
  std::size_t diameter = 0;
  std::size_t reachable_pairs = 0;
};

inline DistanceOracle floyd_warshall(const Digraph& g) {
  constexpr long kInf = std::numeric_limits<long>::max() / 4;
  std::vector<std::vector<long>> d(g.n, std::vector<long>(g.n, kInf));
  for (std::size_t u = 0; u < g.n; ++u) {
    d[u][u] = 0;
    for (std::size_t v = 0; v < g.n; ++v)
      if (u != v && g.adj[u][v]) d[u][v] = 1;
  }
  for (std::size_t k = 0; k < g.n; ++k)
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t j = 0; j < g.n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  DistanceOracle out;
  long total = 0;
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j)
      if (i != j && d[i][j] < kInf) {
        total += d[i][j];
        out.reachable_pairs++;
        out.diameter = std::max<std::size_t>(out.diameter, static_cast<std::size_t>(d[i][j]));
      }
  if (out.reachable_pairs) out.average = static_cast<double>(total) / static_cast<double>(out.reachable_pairs);
  return out;
}

inline Digraph symmetrized(const Digraph& g) {
  Digraph s(g.n);
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = 0; v < g.n; ++v)
      if (u != v && (g.adj[u][v] || g.adj[v][u])) s.adj[u][v] = 1;
  return s;
}

// --- clustering: O(n^3) triplet scan ------------------------------------------

struct ClusteringOracle {
  double global = 0.0;
  double average_local = 0.0;
};

inline ClusteringOracle triplet_scan(const Digraph& directed) {
  const auto g = symmetrized(directed);
  std::uint64_t closed = 0, connected = 0;
  double local_sum = 0.0;
  for (std::size_t c = 0; c < g.n; ++c) {
    std::uint64_t c_closed = 0, c_connected = 0;
    for (std::size_t a = 0; a < g.n; ++a)
      for (std::size_t b = a + 1; b < g.n; ++b) {
        if (a == c || b == c || !g.adj[c][a] || !g.adj[c][b]) continue;
        ++c_connected;
        if (g.adj[a][b]) ++c_closed;
      }
    closed += c_closed;
    connected += c_connected;
    if (c_connected) local_sum += static_cast<double>(c_closed) / static_cast<double>(c_connected);
  }
  ClusteringOracle out;
  out.global = connected ? static_cast<double>(closed) / static_cast<double>(connected) : 0.0;
  out.average_local = g.n ? local_sum / static_cast<double>(g.n) : 0.0;
  return out;
}

// --- betweenness: enumerate every shortest path -------------------------------

inline std::vector<double> path_enumeration_betweenness(const Digraph& g) {
  std::vector<double> bet(g.n, 0.0);
  for (std::size_t y = 0; y < g.n; ++y) {
    for (std::size_t z = 0; z < g.n; ++z) {
      if (y == z) continue;
      // All simple paths y -> z, keeping those of minimum length.
      std::vector<std::vector<std::size_t>> shortest;
      std::size_t best = std::numeric_limits<std::size_t>::max();
      std::vector<std::size_t> path{y};
      std::vector<char> on_path(g.n, 0);
      on_path[y] = 1;
      std::function<void(std::size_t)> dfs = [&](std::size_t u) {
        if (path.size() - 1 > best) return;
        if (u == z) {
          if (path.size() - 1 < best) {
            best = path.size() - 1;
            shortest.clear();
          }
          shortest.push_back(path);
          return;
        }
        for (std::size_t v = 0; v < g.n; ++v) {
          if (v == u || !g.adj[u][v] || on_path[v]) continue;
          on_path[v] = 1;
          path.push_back(v);
          dfs(v);
          path.pop_back();
          on_path[v] = 0;
        }
      };
      dfs(y);
      if (shortest.empty()) continue;
      for (std::size_t x = 0; x < g.n; ++x) {
        if (x == y || x == z) continue;
        std::size_t through = 0;
        for (const auto& p : shortest)
          if (std::find(p.begin(), p.end(), x) != p.end()) ++through;
        bet[x] += static_cast<double>(through) / static_cast<double>(shortest.size());
      }
    }
  }
  return bet;
}

// --- modularity ----------------------------------------------------------------

/// Direct double sum over node pairs. `w` is the symmetric weight matrix with
/// the self-loop weight on the diagonal; A_ii counts it twice.
inline double modularity_double_sum(const std::vector<std::vector<double>>& w, const std::vector<std::size_t>& community,
                                    double resolution = 1.0) {
  const std::size_t n = w.size();
  auto a = [&](std::size_t i, std::size_t j) { return i == j ? 2.0 * w[i][i] : w[i][j]; };
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += a(i, j);
    two_m += k[i];
  }
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (community[i] == community[j]) q += a(i, j) - resolution * k[i] * k[j] / two_m;
  return q / two_m;
}

/// Best modularity over every set partition (restricted growth strings).
inline double best_partition_modularity(const std::vector<std::vector<double>>& w,
                                        std::vector<std::size_t>* best_partition = nullptr) {
  const std::size_t n = w.size();
  std::vector<std::size_t> rgs(n, 0);
  double best = -std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t max_label) {
    if (i == n) {
      const double q = modularity_double_sum(w, rgs);
      if (q > best) {
        best = q;
        if (best_partition) *best_partition = rgs;
      }
      return;
    }
    for (std::size_t c = 0; c <= max_label + 1; ++c) {
      rgs[i] = c;
      rec(i + 1, std::max(max_label, c));
    }
  };
  if (n == 0) return 0.0;
  rgs[0] = 0;
  rec(1, 0);
  return best;
}

inline std::vector<std::vector<double>> random_weights(std::size_t n, double p, std::uint32_t seed, bool loops) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<int> weight(1, 5);
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u; v < n; ++v) {
      if (u == v && !loops) continue;
      if (coin(rng)) w[u][v] = w[v][u] = weight(rng);
    }
  return w;
}

}  // namespace oracle
