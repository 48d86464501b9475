#include "melonet/community.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "melonet/errors.hpp"
#include "text_util.hpp"

namespace melonet {

namespace {

// Symmetric weighted graph. `loop[i]` holds A_ii, i.e. twice the self-loop
// weight, so that degree[i] = loop[i] + sum of neighbour weights.
struct WeightedGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> neighbours;
  std::vector<double> loop;
  std::vector<double> degree;
  double two_m = 0.0;

  std::size_t size() const noexcept { return neighbours.size(); }
};

MelodyNetwork as_undirected(const MelodyNetwork& net) {
  return net.directed() ? undirected_projection(net, true) : net;
}

WeightedGraph weighted_graph(const MelodyNetwork& undirected) {
  WeightedGraph g;
  const std::size_t n = undirected.node_count();
  g.neighbours.resize(n);
  g.loop.assign(n, 0.0);
  for (const auto& [key, w] : undirected.edges()) {
    const auto [u, v] = key;
    if (u == v) {
      g.loop[u] += 2.0 * w;
    } else {
      g.neighbours[u].emplace_back(v, w);
      g.neighbours[v].emplace_back(u, w);
    }
  }
  g.degree.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.neighbours[i].begin(), g.neighbours[i].end());
    g.degree[i] = g.loop[i];
    for (const auto& [j, w] : g.neighbours[i]) g.degree[i] += w;
  }
  g.two_m = std::accumulate(g.degree.begin(), g.degree.end(), 0.0);
  return g;
}

double modularity(const WeightedGraph& g, const std::vector<std::size_t>& community, double resolution) {
  if (g.two_m <= 0.0) return 0.0;
  const std::size_t c_count = community.empty() ? 0 : *std::max_element(community.begin(), community.end()) + 1;
  std::vector<double> inside(c_count, 0.0), total(c_count, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = community[i];
    total[c] += g.degree[i];
    inside[c] += g.loop[i];
    for (const auto& [j, w] : g.neighbours[i]) {
      if (community[j] == c) inside[c] += w;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < c_count; ++c) {
    const double share = total[c] / g.two_m;
    q += inside[c] / g.two_m - resolution * share * share;
  }
  return q;
}

// Local moving from the partition in `community` (ids < size). A node may
// also leave for an empty community. Returns true if any node moved.
bool move_nodes(const WeightedGraph& g, std::vector<std::size_t>& community, const std::vector<std::size_t>& order,
                double resolution) {
  const std::size_t n = g.size();
  std::vector<double> total(n, 0.0);
  std::vector<std::size_t> members(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    total[community[i]] += g.degree[i];
    members[community[i]]++;
  }
  std::vector<std::size_t> empty;
  for (std::size_t c = n; c-- > 0;)
    if (members[c] == 0) empty.push_back(c);

  std::vector<double> link(n, 0.0);
  std::vector<std::size_t> touched;
  bool any_move = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i : order) {
      const std::size_t home = community[i];
      const double k = g.degree[i];
      total[home] -= k;
      members[home]--;

      touched.clear();
      touched.push_back(home);
      for (const auto& [j, w] : g.neighbours[i]) {
        const auto c = community[j];
        if (link[c] == 0.0 && c != home) touched.push_back(c);
        link[c] += w;
      }
      auto gain = [&](std::size_t c) { return link[c] - resolution * total[c] * k / g.two_m; };
      std::size_t best = home;
      double best_gain = gain(home);
      for (std::size_t c : touched) {
        // Strict margin so rounding noise cannot cause endless swaps.
        if (const double gc = gain(c); gc > best_gain + 1e-12) {
          best = c;
          best_gain = gc;
        }
      }
      // An empty community gains exactly 0.
      if (members[home] > 0 && !empty.empty() && 0.0 > best_gain + 1e-12) best = empty.back();
      for (std::size_t c : touched) link[c] = 0.0;

      total[best] += k;
      members[best]++;
      if (best != home) {
        if (!empty.empty() && best == empty.back()) empty.pop_back();
        if (members[home] == 0) empty.push_back(home);
        community[i] = best;
        improved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

// Renumbers community ids densely by first appearance along `order`.
std::size_t renumber(std::vector<std::size_t>& community, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> remap(community.size(), static_cast<std::size_t>(-1));
  std::size_t next = 0;
  for (std::size_t i : order) {
    auto& r = remap[community[i]];
    if (r == static_cast<std::size_t>(-1)) r = next++;
  }
  for (auto& c : community) c = remap[c];
  return next;
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::size_t>& community, std::size_t count) {
  WeightedGraph out;
  out.neighbours.resize(count);
  out.loop.assign(count, 0.0);
  out.degree.assign(count, 0.0);
  std::vector<std::map<std::size_t, double>> links(count);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto ci = community[i];
    out.loop[ci] += g.loop[i];
    out.degree[ci] += g.degree[i];
    for (const auto& [j, w] : g.neighbours[i]) {
      const auto cj = community[j];
      if (ci == cj)
        out.loop[ci] += w;  // each internal edge is seen from both ends
      else
        links[ci][cj] += w;
    }
  }
  for (std::size_t c = 0; c < count; ++c) out.neighbours[c].assign(links[c].begin(), links[c].end());
  out.two_m = g.two_m;
  return out;
}

// Exact refinement. Each community is united with every community linked to
// it; when the union has at most `limit` nodes it is re-partitioned
// optimally (any number of parts) by enumerating restricted growth strings.
// This reaches splits, merges and multi-node swaps that single-node moves
// cannot. Returns true if anything changed.
bool repartition(const WeightedGraph& g, std::vector<std::size_t>& community, double resolution, std::size_t limit) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[community[i]].push_back(i);
  std::vector<std::size_t> free_ids;
  for (std::size_t c = n; c-- > 0;)
    if (members[c].empty()) free_ids.push_back(c);

  std::vector<char> touched(n, 0);
  std::vector<long> local(n, -1);
  bool changed = false;
  for (std::size_t c = 0; c < n; ++c) {
    if (members[c].empty() || touched[c]) continue;
    std::set<std::size_t> group{c};
    for (auto i : members[c])
      for (const auto& [j, w] : g.neighbours[i]) group.insert(community[j]);
    std::vector<std::size_t> s;
    bool blocked = false;
    for (auto d : group) {
      blocked = blocked || touched[d];
      s.insert(s.end(), members[d].begin(), members[d].end());
    }
    if (blocked || s.size() < 2 || s.size() > limit) continue;

    // Dense local weights; self-loops are constant under any partition.
    const std::size_t k = s.size();
    for (std::size_t a = 0; a < k; ++a) local[s[a]] = static_cast<long>(a);
    std::vector<double> w(k * k, 0.0), deg(k);
    for (std::size_t a = 0; a < k; ++a) {
      deg[a] = g.degree[s[a]];
      for (const auto& [j, x] : g.neighbours[s[a]])
        if (local[j] >= 0) w[a * k + static_cast<std::size_t>(local[j])] = x;
    }
    for (auto i : s) local[i] = -1;

    // Objective per part: 2 * inner / 2m - resolution * (tot / 2m)^2.
    const double scale = 1.0 / g.two_m;
    auto score = [&](double inner, double tot) { return 2.0 * inner * scale - resolution * tot * tot * scale * scale; };

    std::vector<std::size_t> part(k, 0), best_part;
    std::vector<double> inner(k, 0.0), tot(k, 0.0);
    {
      std::map<std::size_t, std::size_t> ids;
      for (std::size_t a = 0; a < k; ++a) part[a] = ids.try_emplace(community[s[a]], ids.size()).first->second;
      for (std::size_t a = 0; a < k; ++a) {
        tot[part[a]] += deg[a];
        for (std::size_t b = 0; b < a; ++b)
          if (part[b] == part[a]) inner[part[a]] += w[a * k + b];
      }
    }
    double current = 0.0;
    for (std::size_t p = 0; p < k; ++p) current += score(inner[p], tot[p]);

    std::fill(inner.begin(), inner.end(), 0.0);
    std::fill(tot.begin(), tot.end(), 0.0);
    double best = current + 1e-12;
    std::function<void(std::size_t, std::size_t)> search = [&](std::size_t a, std::size_t used) {
      if (a == k) {
        double value = 0.0;
        for (std::size_t p = 0; p < used; ++p) value += score(inner[p], tot[p]);
        if (value > best) {
          best = value;
          best_part = part;
        }
        return;
      }
      for (std::size_t p = 0; p <= used && p < k; ++p) {
        double add = 0.0;
        for (std::size_t b = 0; b < a; ++b)
          if (part[b] == p) add += w[a * k + b];
        part[a] = p;
        inner[p] += add;
        tot[p] += deg[a];
        search(a + 1, std::max(used, p + 1));
        inner[p] -= add;
        tot[p] -= deg[a];
      }
    };
    search(0, 0);
    if (best_part.empty()) continue;

    // Parts take the group's ids first, then free ones.
    std::vector<std::size_t> ids(group.begin(), group.end());
    const std::size_t parts = *std::max_element(best_part.begin(), best_part.end()) + 1;
    while (ids.size() < parts) {
      ids.push_back(free_ids.back());
      free_ids.pop_back();
    }
    for (std::size_t a = 0; a < k; ++a) community[s[a]] = ids[best_part[a]];
    for (auto id : ids) touched[id] = 1;
    changed = true;
  }
  return changed;
}

}  // namespace

double modularity_of(const MelodyNetwork& net, const CommunityMap& assignment, double resolution) {
  const auto undirected = as_undirected(net);
  std::vector<std::size_t> community(undirected.node_count());
  std::map<std::size_t, std::size_t> dense;
  for (NodeId id = 0; id < undirected.node_count(); ++id) {
    auto it = assignment.find(undirected.label(id));
    if (it == assignment.end()) throw DomainError("node '" + undirected.label(id) + "' missing from assignment");
    community[id] = dense.try_emplace(it->second, dense.size()).first->second;
  }
  return modularity(weighted_graph(undirected), community, resolution);
}

CommunityAssignment detect_communities(const MelodyNetwork& net, double resolution, std::uint64_t seed,
                                       std::size_t refine_limit) {
  const auto undirected = as_undirected(net);
  const std::size_t n = undirected.node_count();

  // Visit order over original nodes: ascending label, or a seeded shuffle.
  std::vector<std::size_t> label_order(n);
  std::iota(label_order.begin(), label_order.end(), std::size_t{0});
  std::sort(label_order.begin(), label_order.end(),
            [&](std::size_t a, std::size_t b) { return undirected.label(a) < undirected.label(b); });
  std::mt19937_64 rng(seed);

  CommunityAssignment result;
  result.resolution = resolution;
  result.seed = seed;

  WeightedGraph g = weighted_graph(undirected);
  std::vector<std::size_t> membership(n);
  std::iota(membership.begin(), membership.end(), std::size_t{0});

  if (g.two_m > 0.0) {
    const WeightedGraph original = g;
    double q = modularity(g, membership, resolution);
    // Rounds of aggregation levels, each followed by a refinement pass of
    // single-node moves on the original graph, while Q keeps improving.
    for (int round = 0; round < 64; ++round) {
      std::vector<std::size_t> order = label_order;
      if (round > 0) {
        order.resize(g.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
      }
      while (true) {
        if (seed != 0) std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::size_t> community(g.size());
        std::iota(community.begin(), community.end(), std::size_t{0});
        if (!move_nodes(g, community, order, resolution)) break;
        const std::size_t count = renumber(community, order);
        auto next_g = aggregate(g, community, count);
        std::vector<std::size_t> identity(count);
        std::iota(identity.begin(), identity.end(), std::size_t{0});
        const double next_q = modularity(next_g, identity, resolution);
        const double gain = next_q - q;
        if (gain < 0.0) break;
        for (auto& c : membership) c = community[c];
        g = std::move(next_g);
        result.levels++;
        q = next_q;
        if (gain < 1e-9 || count == 1) break;
        // Super-nodes are numbered by first appearance along the previous order.
        order.resize(count);
        std::iota(order.begin(), order.end(), std::size_t{0});
      }

      // Refinement on the original graph: single-node moves, then exact
      // re-partitions of small communities and community pairs.
      std::vector<std::size_t> refined = membership;
      std::vector<std::size_t> node_order = label_order;
      if (seed != 0) std::shuffle(node_order.begin(), node_order.end(), rng);
      const bool moved = move_nodes(original, refined, node_order, resolution);
      const bool split = refine_limit > 1 && repartition(original, refined, resolution, refine_limit);
      if (!moved && !split) break;
      const double refined_q = modularity(original, refined, resolution);
      if (refined_q - q < 1e-9) break;
      const std::size_t count = renumber(refined, node_order);
      membership = std::move(refined);
      g = aggregate(original, membership, count);
      q = refined_q;
    }
  } else {
    result.degenerate = true;
  }

  renumber(membership, label_order);
  std::size_t count = 0;
  for (auto c : membership) count = std::max(count, c + 1);
  result.community_sizes.assign(count, 0);
  for (NodeId id = 0; id < n; ++id) {
    result.membership[undirected.label(id)] = membership[id];
    result.community_sizes[membership[id]]++;
  }
  result.modularity_q = modularity_of(undirected, result.membership, resolution);
  return result;
}

std::vector<std::pair<std::size_t, std::size_t>> community_size_distribution(const CommunityAssignment& assignment) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t c = 0; c < assignment.community_sizes.size(); ++c) out.emplace_back(c, assignment.community_sizes[c]);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::string assignment_csv(const CommunityAssignment& assignment) {
  std::ostringstream os;
  os << "node,community\n";
  for (const auto& [label, c] : assignment.membership) os << detail::csv_field(label) << ',' << c << '\n';
  return os.str();
}

nlohmann::ordered_json to_json(const CommunityAssignment& a) {
  nlohmann::ordered_json j;
  j["modularity_q"] = a.modularity_q;
  j["community_count"] = a.community_count();
  j["resolution"] = a.resolution;
  j["seed"] = a.seed;
  j["levels"] = a.levels;
  j["degenerate"] = a.degenerate;
  auto sizes = nlohmann::ordered_json::array();
  for (const auto& [c, size] : community_size_distribution(a)) sizes.push_back({{"community", c}, {"size", size}});
  j["size_distribution"] = std::move(sizes);
  return j;
}

}  // namespace melonet
