#include "melonet/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "graph_internal.hpp"
#include "melonet/community.hpp"
#include "melonet/errors.hpp"
#include "melonet/ingest.hpp"
#include "melonet/metrics.hpp"
#include "melonet/small_world.hpp"
#include "text_util.hpp"

namespace melonet {

namespace fs = std::filesystem;

namespace {

using Getter = std::function<std::optional<double>(const CorpusRow&)>;

template <class T>
std::optional<double> as_value(const T& v) {
  if constexpr (std::is_same_v<T, std::optional<double>>) {
    return v;
  } else {
    return static_cast<double>(v);
  }
}

// Column order of corpus.csv after `track`.
const std::vector<std::pair<std::string, Getter>>& columns() {
  static const std::vector<std::pair<std::string, Getter>> kColumns = {
#define MELONET_COLUMN(field) {#field, [](const CorpusRow& r) { return as_value(r.field); }}
      MELONET_COLUMN(length),
      MELONET_COLUMN(node_count),
      MELONET_COLUMN(edge_count),
      MELONET_COLUMN(avg_degree),
      MELONET_COLUMN(max_degree),
      MELONET_COLUMN(median_degree),
      MELONET_COLUMN(density),
      MELONET_COLUMN(avg_distance_directed),
      MELONET_COLUMN(avg_distance_undirected),
      MELONET_COLUMN(diameter),
      MELONET_COLUMN(clustering_global),
      MELONET_COLUMN(clustering_avg_local),
      MELONET_COLUMN(power_law_lambda),
      MELONET_COLUMN(power_law_r2),
      MELONET_COLUMN(scale_free),
      MELONET_COLUMN(sigma),
      MELONET_COLUMN(cc_rg),
      MELONET_COLUMN(l_rg),
      MELONET_COLUMN(modularity_q),
      MELONET_COLUMN(communities),
      MELONET_COLUMN(warnings),
#undef MELONET_COLUMN
  };
  return kColumns;
}

CorpusRow analyze_track(const fs::path& path, const CorpusConfig& config) {
  auto loaded = load_network(path);
  const std::size_t length = loaded.network.sequence().size();
  MelodyNetwork net = std::move(loaded.network);
  if (config.remove_rests) {
    net = remove_rests(net);
    if (net.empty()) throw DomainError("network is empty after rest removal");
  }

  MetricsOptions options;
  options.r2_threshold = config.r2_threshold;
  options.normalize_betweenness = config.normalize_betweenness;
  const auto report = full_report(net, options);

  CorpusRow row;
  row.track = net.name();
  row.path = path.generic_string();
  // Rest removal clears the sequence; the track length is still the melody's.
  row.length = length;
  row.node_count = report.node_count;
  row.edge_count = report.edge_count;
  row.avg_degree = report.avg_degree;
  row.max_degree = report.max_degree;
  row.median_degree = report.median_degree;
  row.density = report.density;
  if (report.directed_distances) {
    row.avg_distance_directed = report.directed_distances->average;
    row.diameter = static_cast<double>(report.directed_distances->diameter);
  }
  if (report.undirected_distances) row.avg_distance_undirected = report.undirected_distances->average;
  row.clustering_global = report.clustering.global;
  row.clustering_avg_local = report.clustering.average_local;
  row.power_law_lambda = report.power_law.lambda;
  row.power_law_r2 = report.power_law.r_squared;
  row.scale_free = report.power_law.scale_free;

  if (config.small_world) {
    try {
      const auto sw = small_world_sigma(net, config.ensemble_size, config.seed, 1);
      if (sw.sigma_defined) row.sigma = sw.sigma;
      row.cc_rg = sw.cc_rg;
      row.l_rg = sw.l_rg;
    } catch (const DomainError&) {
      // Too small for a random-graph comparison; sigma stays empty.
    }
  }

  const auto communities = detect_communities(net, config.resolution, config.community_seed);
  row.modularity_q = communities.modularity_q;
  row.communities = communities.community_count();
  row.warnings = loaded.warnings.size();
  return row;
}

}  // namespace

std::vector<fs::path> collect_inputs(const std::vector<fs::path>& paths) {
  std::vector<fs::path> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && detect_format(entry.path())) out.push_back(entry.path());
      }
    } else {
      // Listed files are kept even when missing so they surface as failures.
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw CorpusError("no inputs");
  return out;
}

CorpusResult analyze_corpus(const std::vector<fs::path>& paths, const CorpusConfig& config) {
  const auto inputs = collect_inputs(paths);
  std::vector<std::optional<CorpusRow>> rows(inputs.size());
  std::vector<std::string> errors(inputs.size());
  detail::parallel_for(
      inputs.size(),
      [&](std::size_t i) {
        try {
          rows[i] = analyze_track(inputs[i], config);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      },
      config.threads);

  CorpusResult result;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (rows[i])
      result.rows.push_back(std::move(*rows[i]));
    else
      result.failures.push_back({inputs[i].generic_string(), errors[i]});
  }
  std::sort(result.rows.begin(), result.rows.end(), [](const CorpusRow& a, const CorpusRow& b) {
    return std::tie(a.track, a.path) < std::tie(b.track, b.path);
  });
  if (result.rows.empty()) {
    std::string message = "no input could be analyzed";
    if (!result.failures.empty()) message += " (first failure: " + result.failures.front().path + ": " + result.failures.front().message + ")";
    throw CorpusError(message);
  }
  return result;
}

const std::vector<std::string>& corpus_metric_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const auto& [name, getter] : columns()) names.push_back(name);
    return names;
  }();
  return kNames;
}

const std::vector<std::string>& default_summary_metrics() {
  static const std::vector<std::string> kNames = {"length", "node_count", "avg_degree", "avg_distance_undirected",
                                                  "clustering_avg_local", "sigma"};
  return kNames;
}

std::optional<double> metric_value(const CorpusRow& row, const std::string& metric) {
  for (const auto& [name, getter] : columns()) {
    if (name == metric) return getter(row);
  }
  throw DomainError("unknown corpus metric '" + metric + "'");
}

DistributionSummary summarize(const std::vector<CorpusRow>& rows, const std::string& metric, std::size_t bins) {
  if (bins == 0) throw DomainError("histogram needs at least one bin");
  std::vector<double> values;
  for (const auto& row : rows) {
    if (auto v = metric_value(row, metric); v && std::isfinite(*v)) values.push_back(*v);
  }
  if (values.empty()) throw DomainError("no values for metric '" + metric + "'");
  std::sort(values.begin(), values.end());

  DistributionSummary s;
  s.metric = metric;
  s.n = values.size();
  const double n = static_cast<double>(values.size());
  const double lo = values.front();
  const double hi = values.back();
  if (hi == lo) {
    // Zero range: a single unit-width bin holds everything.
    s.histogram.push_back({lo, 1.0, 1.0});
  } else {
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
      auto idx = static_cast<std::size_t>((v - lo) / width);
      counts[std::min(idx, bins - 1)]++;
    }
    for (std::size_t b = 0; b < bins; ++b)
      s.histogram.push_back({lo + static_cast<double>(b) * width, width, static_cast<double>(counts[b]) / (n * width)});
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    s.cdf.emplace_back(values[i], i + 1 == values.size() ? 1.0 : static_cast<double>(i + 1) / n);
  }
  return s;
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? detail::format_double(*v) : std::string(); }

}  // namespace

std::string corpus_csv(const CorpusResult& result) {
  std::ostringstream os;
  os << "track";
  for (const auto& [name, getter] : columns()) os << ',' << name;
  os << '\n';
  for (const auto& row : result.rows) {
    os << detail::csv_field(row.track);
    for (const auto& [name, getter] : columns()) os << ',' << cell(getter(row));
    os << '\n';
  }
  return os.str();
}

std::string failures_csv(const CorpusResult& result) {
  std::ostringstream os;
  os << "path,error\n";
  for (const auto& f : result.failures) os << detail::csv_field(f.path) << ',' << detail::csv_field(f.message) << '\n';
  return os.str();
}

std::string histogram_csv(const DistributionSummary& s) {
  std::ostringstream os;
  os << "bin_lower,bin_width,density\n";
  for (const auto& b : s.histogram)
    os << detail::format_double(b.lower) << ',' << detail::format_double(b.width) << ','
       << detail::format_double(b.density) << '\n';
  return os.str();
}

std::string cdf_csv(const DistributionSummary& s) {
  std::ostringstream os;
  os << "value,cumulative\n";
  for (const auto& [v, f] : s.cdf) os << detail::format_double(v) << ',' << detail::format_double(f) << '\n';
  return os.str();
}

std::vector<fs::path> write_corpus_outputs(const CorpusResult& result, const fs::path& out_dir,
                                           const std::vector<std::string>& metrics, std::size_t bins) {
  fs::create_directories(out_dir);
  std::vector<fs::path> written;
  auto write = [&](const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    written.push_back(path);
  };
  write(out_dir / "corpus.csv", corpus_csv(result));
  if (!result.failures.empty()) write(out_dir / "failures.csv", failures_csv(result));
  for (const auto& metric : metrics) {
    const bool any = std::any_of(result.rows.begin(), result.rows.end(), [&](const CorpusRow& r) {
      auto v = metric_value(r, metric);
      return v && std::isfinite(*v);
    });
    if (!any) continue;
    const auto summary = summarize(result.rows, metric, bins);
    write(out_dir / ("dist_" + metric + ".csv"), histogram_csv(summary));
    write(out_dir / ("cdf_" + metric + ".csv"), cdf_csv(summary));
  }
  return written;
}

}  // namespace melonet
