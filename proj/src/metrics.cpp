#include "melonet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "graph_internal.hpp"
#include "text_util.hpp"
#include "melonet/errors.hpp"

namespace melonet {

namespace detail {

namespace {

void finish(Adjacency& adj) {
  for (auto* lists : {&adj.out, &adj.in}) {
    for (auto& l : *lists) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
  }
}

}  // namespace

Adjacency directed_adjacency(const MelodyNetwork& net) {
  Adjacency adj;
  adj.out.resize(net.node_count());
  adj.in.resize(net.node_count());
  for (const auto& [key, w] : net.edges()) {
    const auto [u, v] = key;
    if (u == v) continue;
    adj.out[u].push_back(v);
    adj.in[v].push_back(u);
    if (!net.directed()) {
      adj.out[v].push_back(u);
      adj.in[u].push_back(v);
    }
  }
  finish(adj);
  return adj;
}

Adjacency undirected_adjacency(const MelodyNetwork& net) {
  Adjacency adj;
  adj.out.resize(net.node_count());
  for (const auto& [key, w] : net.edges()) {
    const auto [u, v] = key;
    if (u == v) continue;
    adj.out[u].push_back(v);
    adj.out[v].push_back(u);
  }
  finish(adj);
  adj.in = adj.out;
  return adj;
}

void bfs_distances(const Adjacency& adj, NodeId source, std::vector<long>& dist) {
  dist.assign(adj.size(), -1);
  std::vector<NodeId> queue;
  queue.reserve(adj.size());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId v : adj.out[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
}

}  // namespace detail

std::vector<DegreeRecord> degree_table(const MelodyNetwork& net) {
  std::vector<DegreeRecord> table(net.node_count());
  for (NodeId id = 0; id < net.node_count(); ++id) table[id].node = net.label(id);
  for (const auto& [key, w] : net.edges()) {
    const auto [u, v] = key;
    table[u].out_degree++;
    table[v].in_degree++;
    if (!net.directed() && u != v) {
      table[v].out_degree++;
      table[u].in_degree++;
    }
  }
  for (auto& r : table) {
    if (net.directed()) {
      r.total_degree = r.in_degree + r.out_degree;
    } else {
      // in_degree == out_degree == incident edges; a loop adds two endpoints.
      const bool loop = net.weight(*net.find(r.node), *net.find(r.node)) > 0.0;
      r.total_degree = r.out_degree + (loop ? 1 : 0);
    }
  }
  return table;
}

namespace {

DegreeDistribution normalize_counts(const std::map<std::size_t, std::size_t>& counts, std::size_t n) {
  DegreeDistribution dist;
  for (const auto& [k, c] : counts) dist[k] = static_cast<double>(c) / static_cast<double>(n);
  return dist;
}

template <class Proj>
DegreeDistribution distribution_of(const std::vector<DegreeRecord>& table, Proj proj) {
  std::map<std::size_t, std::size_t> counts;
  for (const auto& r : table) counts[proj(r)]++;
  return normalize_counts(counts, table.size());
}

}  // namespace

DegreeDistribution degree_distribution(const MelodyNetwork& net) {
  if (net.empty()) throw DomainError("degree distribution of an empty network");
  return distribution_of(degree_table(net), [](const DegreeRecord& r) { return r.total_degree; });
}

PowerLawFit fit_power_law(const DegreeDistribution& dist, double r2_threshold) {
  PowerLawFit fit;
  fit.threshold = r2_threshold;
  std::vector<double> xs, ys;
  for (const auto& [k, p] : dist) {
    if (k >= 1 && p > 0.0) {
      xs.push_back(std::log(static_cast<double>(k)));
      ys.push_back(std::log(p));
    }
  }
  fit.support = xs.size();
  if (xs.size() < 3) {
    fit.note = "insufficient support";
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  fit.lambda = -slope;
  fit.intercept = my - slope * mx;
  if (syy > 0.0) {
    fit.r_squared = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  } else {
    // Constant log P(k): the line is flat and explains no variance.
    fit.r_squared = 0.0;
    fit.note = "flat distribution";
  }
  fit.scale_free = fit.r_squared >= r2_threshold;
  return fit;
}

double density(const MelodyNetwork& net) {
  if (net.empty()) throw DomainError("density of an empty network");
  const double n = static_cast<double>(net.node_count());
  return static_cast<double>(net.edge_count()) / (n * n);
}

DistanceSummary distances(const MelodyNetwork& net, DistanceMode mode) {
  const std::size_t n = net.node_count();
  if (n < 2) throw DomainError("distances need at least two nodes");
  const auto adj = mode == DistanceMode::Directed ? detail::directed_adjacency(net) : detail::undirected_adjacency(net);

  // Integer sums, so the per-source results can be merged in any order.
  std::vector<std::uint64_t> sums(n, 0), pairs(n, 0), longest(n, 0);
  detail::parallel_for(n, [&](std::size_t s) {
    std::vector<long> dist;
    detail::bfs_distances(adj, s, dist);
    for (NodeId t = 0; t < n; ++t) {
      if (t == s || dist[t] < 0) continue;
      sums[s] += static_cast<std::uint64_t>(dist[t]);
      pairs[s]++;
      longest[s] = std::max<std::uint64_t>(longest[s], static_cast<std::uint64_t>(dist[t]));
    }
  });
  const auto total = std::accumulate(sums.begin(), sums.end(), std::uint64_t{0});
  const auto reachable = std::accumulate(pairs.begin(), pairs.end(), std::uint64_t{0});
  if (reachable == 0) throw DomainError("fully disconnected");
  DistanceSummary out;
  out.average = static_cast<double>(total) / static_cast<double>(reachable);
  out.diameter = static_cast<std::size_t>(*std::max_element(longest.begin(), longest.end()));
  out.reachable_pairs = static_cast<std::size_t>(reachable);
  out.reachable_fraction = static_cast<double>(reachable) / (static_cast<double>(n) * static_cast<double>(n - 1));
  return out;
}

ClusteringSummary clustering(const MelodyNetwork& net) {
  ClusteringSummary out;
  const std::size_t n = net.node_count();
  if (n < 3) {
    out.degenerate = true;
    return out;
  }
  const auto adj = detail::undirected_adjacency(net);
  std::vector<char> marked(n, 0);
  std::uint64_t closed = 0, connected = 0;
  double local_sum = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const auto& nv = adj.out[v];
    const std::uint64_t d = nv.size();
    if (d < 2) continue;
    for (NodeId u : nv) marked[u] = 1;
    std::uint64_t links = 0;
    for (NodeId u : nv) {
      for (NodeId w : adj.out[u]) links += marked[w];
    }
    for (NodeId u : nv) marked[u] = 0;
    links /= 2;
    const std::uint64_t triplets = d * (d - 1) / 2;
    closed += links;
    connected += triplets;
    local_sum += static_cast<double>(links) / static_cast<double>(triplets);
  }
  out.global = connected == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(connected);
  out.average_local = local_sum / static_cast<double>(n);
  return out;
}

std::map<std::string, double> betweenness(const MelodyNetwork& net, bool normalize) {
  const std::size_t n = net.node_count();
  const auto adj = detail::directed_adjacency(net);

  // Sources are split into fixed blocks whose partial sums are merged in
  // block order, so the result does not depend on the thread count.
  constexpr std::size_t kBlocks = 64;
  const std::size_t blocks = std::min(kBlocks, std::max<std::size_t>(n, 1));
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(n, 0.0));
  detail::parallel_for(blocks, [&](std::size_t b) {
    auto& acc = partial[b];
    std::vector<long> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<NodeId> order;
    order.reserve(n);
    for (NodeId s = b * n / blocks; s < (b + 1) * n / blocks; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      std::fill(sigma.begin(), sigma.end(), 0.0);
      std::fill(delta.begin(), delta.end(), 0.0);
      order.clear();
      dist[s] = 0;
      sigma[s] = 1.0;
      order.push_back(s);
      for (std::size_t head = 0; head < order.size(); ++head) {
        const NodeId u = order[head];
        for (NodeId v : adj.out[u]) {
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            order.push_back(v);
          }
          if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
        }
      }
      // Dependencies in reverse BFS order; predecessors are in-neighbours one hop closer.
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const NodeId w = *it;
        for (NodeId v : adj.in[w]) {
          if (dist[v] >= 0 && dist[v] + 1 == dist[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
        if (w != s) acc[w] += delta[w];
      }
    }
  });

  std::vector<double> total(n, 0.0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < n; ++i) total[i] += p[i];
  }
  const double scale = (normalize && n > 2) ? 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2)) : 1.0;
  std::map<std::string, double> out;
  for (NodeId id = 0; id < n; ++id) out[net.label(id)] = total[id] * scale;
  return out;
}

namespace {

std::vector<RankedNode> top_n(std::vector<RankedNode> all, std::size_t n) {
  std::stable_sort(all.begin(), all.end(), [](const RankedNode& a, const RankedNode& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.node < b.node;
  });
  if (all.size() > n) all.resize(n);
  return all;
}

}  // namespace

MetricsReport full_report(const MelodyNetwork& net, const MetricsOptions& options) {
  if (net.empty()) throw DomainError("metrics of an empty network");
  MetricsReport r;
  r.name = net.name();
  r.length = net.sequence().size();
  r.node_count = net.node_count();
  r.edge_count = net.edge_count();
  r.total_weight = net.total_weight();
  r.degrees = degree_table(net);

  std::vector<std::size_t> totals;
  for (const auto& d : r.degrees) totals.push_back(d.total_degree);
  std::sort(totals.begin(), totals.end());
  r.avg_degree = static_cast<double>(std::accumulate(totals.begin(), totals.end(), std::size_t{0})) /
                 static_cast<double>(totals.size());
  r.max_degree = totals.back();
  const std::size_t mid = totals.size() / 2;
  r.median_degree = totals.size() % 2 == 1 ? static_cast<double>(totals[mid])
                                           : (static_cast<double>(totals[mid - 1]) + static_cast<double>(totals[mid])) / 2.0;
  r.density = density(net);

  auto try_distances = [&](DistanceMode mode) -> std::optional<DistanceSummary> {
    if (net.node_count() < 2) return std::nullopt;
    try {
      return distances(net, mode);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };
  r.directed_distances = try_distances(DistanceMode::Directed);
  r.undirected_distances = try_distances(DistanceMode::Undirected);
  r.clustering = clustering(net);

  r.degree_distribution = distribution_of(r.degrees, [](const DegreeRecord& d) { return d.total_degree; });
  r.in_degree_distribution = distribution_of(r.degrees, [](const DegreeRecord& d) { return d.in_degree; });
  r.out_degree_distribution = distribution_of(r.degrees, [](const DegreeRecord& d) { return d.out_degree; });
  r.power_law = fit_power_law(r.degree_distribution, options.r2_threshold);

  r.betweenness = betweenness(net, options.normalize_betweenness);
  r.betweenness_normalized = options.normalize_betweenness;

  std::vector<RankedNode> by_degree, by_betweenness;
  for (const auto& d : r.degrees) by_degree.push_back({d.node, static_cast<double>(d.total_degree)});
  for (const auto& [label, b] : r.betweenness) by_betweenness.push_back({label, b});
  r.top_by_degree = top_n(std::move(by_degree), options.top_n);
  r.top_by_betweenness = top_n(std::move(by_betweenness), options.top_n);
  return r;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

nlohmann::ordered_json to_json(const DegreeDistribution& dist) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& [k, p] : dist) out.push_back({{"degree", k}, {"probability", p}});
  return out;
}

nlohmann::ordered_json to_json(const PowerLawFit& fit) {
  nlohmann::ordered_json j;
  j["lambda"] = fit.lambda ? nlohmann::ordered_json(*fit.lambda) : nlohmann::ordered_json(nullptr);
  j["intercept"] = fit.intercept;
  j["r_squared"] = fit.r_squared;
  j["r_squared_threshold"] = fit.threshold;
  j["scale_free"] = fit.scale_free;
  j["support"] = fit.support;
  j["note"] = fit.note;
  return j;
}

namespace {

nlohmann::ordered_json to_json(const std::optional<DistanceSummary>& d) {
  if (!d) return nullptr;
  return {{"average", d->average},
          {"diameter", d->diameter},
          {"reachable_pairs", d->reachable_pairs},
          {"reachable_fraction", d->reachable_fraction}};
}

nlohmann::ordered_json to_json(const std::vector<RankedNode>& nodes) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& n : nodes) out.push_back({{"node", n.node}, {"value", n.value}});
  return out;
}

}  // namespace

nlohmann::ordered_json to_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["length"] = r.length;
  j["node_count"] = r.node_count;
  j["edge_count"] = r.edge_count;
  j["total_weight"] = r.total_weight;
  j["avg_degree"] = r.avg_degree;
  j["max_degree"] = r.max_degree;
  j["median_degree"] = r.median_degree;
  j["density"] = r.density;
  j["diameter"] = r.directed_distances ? nlohmann::ordered_json(r.directed_distances->diameter) : nullptr;
  j["avg_distance_directed"] = r.directed_distances ? nlohmann::ordered_json(r.directed_distances->average) : nullptr;
  j["avg_distance_undirected"] =
      r.undirected_distances ? nlohmann::ordered_json(r.undirected_distances->average) : nullptr;
  j["distances_directed"] = to_json(r.directed_distances);
  j["distances_undirected"] = to_json(r.undirected_distances);
  j["clustering_global"] = r.clustering.global;
  j["clustering_avg_local"] = r.clustering.average_local;
  j["clustering_degenerate"] = r.clustering.degenerate;
  j["degree_distribution"] = to_json(r.degree_distribution);
  j["in_degree_distribution"] = to_json(r.in_degree_distribution);
  j["out_degree_distribution"] = to_json(r.out_degree_distribution);
  j["power_law"] = to_json(r.power_law);
  auto degrees = nlohmann::ordered_json::array();
  auto sorted = r.degrees;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.node < b.node; });
  for (const auto& d : sorted)
    degrees.push_back({{"node", d.node}, {"in", d.in_degree}, {"out", d.out_degree}, {"total", d.total_degree}});
  j["degrees"] = std::move(degrees);
  nlohmann::ordered_json bet = nlohmann::ordered_json::object();
  for (const auto& [label, b] : r.betweenness) bet[label] = b;
  j["betweenness"] = std::move(bet);
  j["betweenness_normalized"] = r.betweenness_normalized;
  j["top_by_degree"] = to_json(r.top_by_degree);
  j["top_by_betweenness"] = to_json(r.top_by_betweenness);
  return j;
}

std::string distribution_csv(const DegreeDistribution& dist) {
  std::string out = "degree,probability\n";
  for (const auto& [k, p] : dist) out += std::to_string(k) + "," + detail::format_double(p) + "\n";
  return out;
}

std::string cumulative_distribution_csv(const DegreeDistribution& dist) {
  std::string out = "degree,cumulative\n";
  double acc = 0.0;
  std::size_t i = 0;
  for (const auto& [k, p] : dist) {
    acc += p;
    // The last entry is 1 by definition; avoid printing 0.99999999999999989.
    out += std::to_string(k) + "," + detail::format_double(++i == dist.size() ? 1.0 : acc) + "\n";
  }
  return out;
}

}  // namespace melonet
