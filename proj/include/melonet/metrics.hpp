#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "melonet/network.hpp"

namespace melonet {

/// Distinct-edge counts for one node. A self-loop adds one to both in and
/// out degree. For undirected networks in = out = number of incident edges
/// (loop once) and total counts edge endpoints (loop twice).
struct DegreeRecord {
  std::string node;
  std::size_t in_degree = 0;
  std::size_t out_degree = 0;
  std::size_t total_degree = 0;

  friend bool operator==(const DegreeRecord&, const DegreeRecord&) = default;
};

/// Degree k -> fraction of nodes with that degree.
using DegreeDistribution = std::map<std::size_t, double>;

struct PowerLawFit {
  std::optional<double> lambda;  // empty when support is insufficient
  double intercept = 0.0;        // of log P(k) = intercept - lambda * log k
  double r_squared = 0.0;
  double threshold = 0.80;
  bool scale_free = false;
  std::size_t support = 0;
  std::string note;  // "insufficient support" etc.
};

struct DistanceSummary {
  double average = 0.0;
  std::size_t diameter = 0;
  std::size_t reachable_pairs = 0;
  double reachable_fraction = 0.0;  // over ordered pairs u != v
};

struct ClusteringSummary {
  double global = 0.0;
  double average_local = 0.0;
  bool degenerate = false;  // fewer than three nodes
};

struct MetricsOptions {
  double r2_threshold = 0.80;
  bool normalize_betweenness = false;
  std::size_t top_n = 10;
};

struct RankedNode {
  std::string node;
  double value = 0.0;
};

struct MetricsReport {
  std::string name;
  std::size_t length = 0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double total_weight = 0.0;
  double avg_degree = 0.0;
  std::size_t max_degree = 0;
  double median_degree = 0.0;
  double density = 0.0;
  std::optional<DistanceSummary> directed_distances;
  std::optional<DistanceSummary> undirected_distances;
  ClusteringSummary clustering;
  std::vector<DegreeRecord> degrees;
  DegreeDistribution degree_distribution;
  DegreeDistribution in_degree_distribution;
  DegreeDistribution out_degree_distribution;
  PowerLawFit power_law;
  std::map<std::string, double> betweenness;
  bool betweenness_normalized = false;
  std::vector<RankedNode> top_by_degree;
  std::vector<RankedNode> top_by_betweenness;
};

std::vector<DegreeRecord> degree_table(const MelodyNetwork& net);

/// Distribution of total degree. Throws DomainError on an empty network.
DegreeDistribution degree_distribution(const MelodyNetwork& net);

/// Least squares of log P(k) on log k over k >= 1 with P(k) > 0.
PowerLawFit fit_power_law(const DegreeDistribution& dist, double r2_threshold = 0.80);

/// edge_count / node_count^2. Throws DomainError on an empty network.
double density(const MelodyNetwork& net);

enum class DistanceMode { Directed, Undirected };

/// Unweighted shortest paths averaged over ordered reachable pairs u != v.
/// Throws DomainError when fewer than two nodes or no pair is reachable.
DistanceSummary distances(const MelodyNetwork& net, DistanceMode mode);

/// Clustering of the undirected projection without self-loops. Nodes of
/// degree < 2 count as 0 in the local average.
ClusteringSummary clustering(const MelodyNetwork& net);

/// Shortest-path betweenness over ordered pairs, endpoints excluded.
/// `normalize` divides by (n-1)(n-2).
std::map<std::string, double> betweenness(const MelodyNetwork& net, bool normalize = false);

/// Every metric above. Throws DomainError on an empty network.
MetricsReport full_report(const MelodyNetwork& net, const MetricsOptions& options = {});

nlohmann::ordered_json to_json(const MetricsReport& report);
nlohmann::ordered_json to_json(const DegreeDistribution& dist);
nlohmann::ordered_json to_json(const PowerLawFit& fit);

/// Two-column CSV `degree,probability`.
std::string distribution_csv(const DegreeDistribution& dist);
/// Two-column CSV `degree,cumulative` with P(K <= k).
std::string cumulative_distribution_csv(const DegreeDistribution& dist);

}  // namespace melonet
