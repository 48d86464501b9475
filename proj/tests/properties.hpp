#pragma once

// Seeded generators and checks behind the invariant suite. Shared by the
// doctest property cases and the acceptance binary.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "melonet/community.hpp"
#include "melonet/corpus.hpp"
#include "melonet/metrics.hpp"
#include "melonet/network.hpp"

namespace props {

inline std::vector<std::string> random_labels(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(1, 80), alphabet(2, 25);
  const int a = alphabet(rng);
  std::uniform_int_distribution<int> pick(0, a - 1);
  std::vector<std::string> out(static_cast<std::size_t>(len(rng)));
  for (auto& l : out) {
    const int p = pick(rng);
    l = p == 0 ? "R:1/4" : "C" + std::to_string(p % 8) + ":1/" + std::to_string(1 << (p / 8));
  }
  return out;
}

/// Sum of in-degrees and of out-degrees both equal the edge count; in the
/// undirected projection total degrees sum to twice the edge count.
inline bool handshake(std::uint32_t seed) {
  std::mt19937 rng(seed);
  const auto net = melonet::build_network_from_labels(random_labels(rng));
  std::size_t in = 0, out = 0;
  for (const auto& d : melonet::degree_table(net)) {
    in += d.in_degree;
    out += d.out_degree;
  }
  const auto u = melonet::undirected_projection(net, seed % 2 == 0);
  std::size_t total = 0;
  for (const auto& d : melonet::degree_table(u)) total += d.total_degree;
  return in == net.edge_count() && out == net.edge_count() && total == 2 * u.edge_count();
}

inline bool weight_conservation(std::uint32_t seed) {
  std::mt19937 rng(seed);
  const auto labels = random_labels(rng);
  const auto net = melonet::build_network_from_labels(labels);
  return net.total_weight() == static_cast<double>(labels.size() - 1) &&
         melonet::undirected_projection(net, true).total_weight() == net.total_weight();
}

inline bool modularity_bounded(std::uint32_t seed) {
  std::mt19937 rng(seed);
  const auto net = melonet::build_network_from_labels(random_labels(rng));
  std::uniform_int_distribution<std::size_t> c(0, 1 + seed % 6);
  melonet::CommunityMap m;
  for (const auto& l : net.labels()) m[l] = c(rng);
  const double q = melonet::modularity_of(net, m);
  const double found = melonet::detect_communities(net, 1.0, seed).modularity_q;
  return q >= -1.0 && q <= 1.0 && found >= -1.0 && found <= 1.0;
}

inline std::vector<melonet::CorpusRow> random_rows(std::mt19937& rng) {
  std::uniform_int_distribution<int> count(1, 60), value(1, 40);
  std::vector<melonet::CorpusRow> rows(static_cast<std::size_t>(count(rng)));
  for (auto& r : rows) {
    r.length = static_cast<std::size_t>(value(rng));
    r.sigma = value(rng) / 7.0;
  }
  return rows;
}

inline bool cdf_monotone(std::uint32_t seed) {
  std::mt19937 rng(seed);
  const auto rows = random_rows(rng);
  const auto degree = melonet::degree_distribution(melonet::build_network_from_labels(random_labels(rng)));
  double cumulative = 0.0;
  for (const auto& [k, p] : degree) {
    if (p <= 0.0) return false;
    cumulative += p;
  }
  if (std::abs(cumulative - 1.0) > 1e-12) return false;
  for (const char* metric : {"length", "sigma"}) {
    const auto s = melonet::summarize(rows, metric, 1 + seed % 30);
    for (std::size_t i = 1; i < s.cdf.size(); ++i)
      if (!(s.cdf[i].first > s.cdf[i - 1].first && s.cdf[i].second > s.cdf[i - 1].second)) return false;
    if (s.cdf.back().second != 1.0) return false;
  }
  return true;
}

inline bool histogram_normalized(std::uint32_t seed) {
  std::mt19937 rng(seed);
  const auto rows = random_rows(rng);
  for (const char* metric : {"length", "sigma"}) {
    const auto s = melonet::summarize(rows, metric, 1 + seed % 30);
    double area = 0.0;
    for (const auto& b : s.histogram) area += b.density * b.width;
    if (std::abs(area - 1.0) > 1e-9) return false;
  }
  return true;
}

}  // namespace props
