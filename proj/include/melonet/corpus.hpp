#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace melonet {

struct CorpusConfig {
  std::uint64_t seed = 42;
  std::size_t ensemble_size = 100;
  double r2_threshold = 0.80;
  double resolution = 1.0;
  std::uint64_t community_seed = 0;  // 0 = ascending label visit order
  bool remove_rests = false;
  bool normalize_betweenness = false;
  bool small_world = true;
  std::size_t bins = 20;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Scalar results for one track. Optional fields are empty when the metric
/// is undefined for that network (e.g. sigma on a two-node melody).
struct CorpusRow {
  std::string track;
  std::string path;
  std::size_t length = 0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double avg_degree = 0.0;
  std::size_t max_degree = 0;
  double median_degree = 0.0;
  double density = 0.0;
  std::optional<double> avg_distance_directed;
  std::optional<double> avg_distance_undirected;
  std::optional<double> diameter;
  double clustering_global = 0.0;
  double clustering_avg_local = 0.0;
  std::optional<double> power_law_lambda;
  double power_law_r2 = 0.0;
  bool scale_free = false;
  std::optional<double> sigma;
  std::optional<double> cc_rg;
  std::optional<double> l_rg;
  double modularity_q = 0.0;
  std::size_t communities = 0;
  std::size_t warnings = 0;
};

struct CorpusFailure {
  std::string path;
  std::string message;
};

struct CorpusResult {
  std::vector<CorpusRow> rows;          // sorted by track, then path
  std::vector<CorpusFailure> failures;  // sorted by path
};

struct DistributionSummary {
  struct Bin {
    double lower = 0.0;
    double width = 0.0;
    double density = 0.0;
  };
  std::string metric;
  std::vector<Bin> histogram;
  std::vector<std::pair<double, double>> cdf;  // (value, fraction <= value)
  std::size_t n = 0;
};

/// Files under `paths`, directories expanded one level to recognised score
/// extensions, sorted. Throws CorpusError("no inputs") when nothing is found.
std::vector<std::filesystem::path> collect_inputs(const std::vector<std::filesystem::path>& paths);

/// Full per-track pipeline: parse, build, metrics, small-world sigma,
/// communities. Unparseable files become failures; throws CorpusError when
/// nothing succeeds.
CorpusResult analyze_corpus(const std::vector<std::filesystem::path>& paths, const CorpusConfig& config);

/// Column names accepted by `summarize`.
const std::vector<std::string>& corpus_metric_names();
/// Metrics summarized when none are requested.
const std::vector<std::string>& default_summary_metrics();

std::optional<double> metric_value(const CorpusRow& row, const std::string& metric);

/// Equal-width histogram over [min, max] and the empirical CDF.
/// Throws DomainError for an unknown metric or when no row has a value.
DistributionSummary summarize(const std::vector<CorpusRow>& rows, const std::string& metric, std::size_t bins = 20);

std::string corpus_csv(const CorpusResult& result);
std::string failures_csv(const CorpusResult& result);
std::string histogram_csv(const DistributionSummary& summary);
std::string cdf_csv(const DistributionSummary& summary);

/// Writes corpus.csv, failures.csv and dist_/cdf_ files for `metrics` into
/// `out_dir`. Metrics without any value are skipped. Returns written paths.
std::vector<std::filesystem::path> write_corpus_outputs(const CorpusResult& result,
                                                        const std::filesystem::path& out_dir,
                                                        const std::vector<std::string>& metrics, std::size_t bins);

}  // namespace melonet
