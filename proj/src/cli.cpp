#include "melonet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "melonet/community.hpp"
#include "melonet/corpus.hpp"
#include "melonet/errors.hpp"
#include "melonet/export.hpp"
#include "melonet/ingest.hpp"
#include "melonet/metrics.hpp"
#include "melonet/small_world.hpp"

namespace melonet {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  std::string format;  // empty = by extension
  std::uint64_t seed = 42;
  std::size_t ensemble = 100;
  double r2_threshold = 0.80;
  double resolution = 1.0;
  std::uint64_t community_seed = 0;
  bool remove_rests = false;
  bool undirected = false;
  bool normalize_betweenness = false;
  bool no_smallworld = false;
  std::string exports = "json";
  std::size_t bins = 20;
  std::string metrics;  // comma list for corpus summaries
  unsigned threads = 0;
  std::string output;  // convert target
};

nlohmann::ordered_json echo(const RunConfig& c, const std::string& subcommand) {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["inputs"] = c.inputs;
  j["seed"] = c.seed;
  j["ensemble"] = c.ensemble;
  j["r2_threshold"] = c.r2_threshold;
  j["resolution"] = c.resolution;
  j["community_seed"] = c.community_seed;
  j["remove_rests"] = c.remove_rests;
  j["undirected"] = c.undirected;
  j["normalize_betweenness"] = c.normalize_betweenness;
  j["small_world"] = !c.no_smallworld;
  j["bins"] = c.bins;
  return j;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Session {
 public:
  Session(const RunConfig& config, std::ostream& out) : config_(config), out_(out) {}

  void write(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    out_ << path.generic_string() << '\n';
  }

  fs::path out_path(const std::string& name) const { return fs::path(config_.out_dir) / name; }

  std::optional<InputFormat> format() const {
    if (config_.format.empty()) return std::nullopt;
    if (config_.format == "mel") return InputFormat::Mel;
    if (config_.format == "musicxml" || config_.format == "xml") return InputFormat::MusicXml;
    if (config_.format == "edges") return InputFormat::EdgeList;
    throw ParseError("unknown --format '" + config_.format + "'");
  }

  LoadedNetwork load_single() const {
    if (config_.inputs.size() != 1) throw ParseError("expected exactly one input path");
    const fs::path path = config_.inputs.front();
    if (!fs::exists(path)) throw ParseError("input not found: " + path.string());
    auto loaded = load_network(path, format());
    if (config_.remove_rests) loaded.network = remove_rests(loaded.network);
    if (config_.undirected) loaded.network = undirected_projection(loaded.network, true);
    return loaded;
  }

 private:
  const RunConfig& config_;
  std::ostream& out_;
};

void report_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

void cmd_build(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Session s(c, out);
  auto loaded = s.load_single();
  report_warnings(loaded.warnings, err);
  const auto& net = loaded.network;
  const std::set<std::string> formats = [&] {
    auto list = split_list(c.exports);
    return std::set<std::string>(list.begin(), list.end());
  }();
  for (const auto& f : formats) {
    if (f != "json" && f != "gexf" && f != "dot") throw ParseError("unknown export format '" + f + "'");
  }
  if (formats.contains("json")) s.write(s.out_path(net.name() + ".network.json"), network_to_json(net).dump(2) + "\n");
  if (formats.contains("gexf")) s.write(s.out_path(net.name() + ".gexf"), network_to_gexf(net));
  if (formats.contains("dot")) s.write(s.out_path(net.name() + ".dot"), network_to_dot(net));
}

void cmd_metrics(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Session s(c, out);
  auto loaded = s.load_single();
  report_warnings(loaded.warnings, err);
  const auto& net = loaded.network;
  if (net.empty()) throw DomainError("network is empty");

  MetricsOptions options;
  options.r2_threshold = c.r2_threshold;
  options.normalize_betweenness = c.normalize_betweenness;
  const auto report = full_report(net, options);

  auto j = to_json(report);
  if (!c.no_smallworld) {
    try {
      j["small_world"] = to_json(small_world_sigma(net, c.ensemble, c.seed, c.threads));
    } catch (const DomainError& e) {
      j["small_world"] = {{"error", e.what()}};
    }
  }
  j["warnings"] = loaded.warnings;
  j["config"] = echo(c, "metrics");
  s.write(s.out_path(net.name() + ".metrics.json"), j.dump(2) + "\n");
  s.write(s.out_path(net.name() + ".degree_distribution.csv"), distribution_csv(report.degree_distribution));
  s.write(s.out_path(net.name() + ".degree_cdf.csv"), cumulative_distribution_csv(report.degree_distribution));
}

void cmd_communities(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Session s(c, out);
  auto loaded = s.load_single();
  report_warnings(loaded.warnings, err);
  const auto& net = loaded.network;
  if (net.empty()) throw DomainError("network is empty after rest removal");
  const auto assignment = detect_communities(net, c.resolution, c.community_seed);
  auto j = to_json(assignment);
  j["config"] = echo(c, "communities");
  s.write(s.out_path(net.name() + ".communities.csv"), assignment_csv(assignment));
  s.write(s.out_path(net.name() + ".communities.gexf"), network_to_gexf(net, assignment.membership));
  s.write(s.out_path(net.name() + ".communities.json"), j.dump(2) + "\n");
}

void cmd_corpus(const RunConfig& c, std::ostream& out, std::ostream& err) {
  CorpusConfig config;
  config.seed = c.seed;
  config.ensemble_size = c.ensemble;
  config.r2_threshold = c.r2_threshold;
  config.resolution = c.resolution;
  config.community_seed = c.community_seed;
  config.remove_rests = c.remove_rests;
  config.normalize_betweenness = c.normalize_betweenness;
  config.small_world = !c.no_smallworld;
  config.bins = c.bins;
  config.threads = c.threads;

  std::vector<fs::path> paths(c.inputs.begin(), c.inputs.end());
  const auto result = analyze_corpus(paths, config);
  for (const auto& f : result.failures) err << "failed: " << f.path << ": " << f.message << '\n';
  const auto metrics = c.metrics.empty() ? default_summary_metrics() : split_list(c.metrics);
  for (const auto& m : metrics) metric_value(CorpusRow{}, m);  // validates the names up front
  for (const auto& path : write_corpus_outputs(result, c.out_dir, metrics, c.bins)) out << path.generic_string() << '\n';
  Session s(c, out);
  auto j = echo(c, "corpus");
  j["rows"] = result.rows.size();
  j["failures"] = result.failures.size();
  s.write(s.out_path("corpus_config.json"), j.dump(2) + "\n");
}

void cmd_convert(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.inputs.size() != 1) throw ParseError("expected exactly one input path");
  const fs::path path = c.inputs.front();
  std::ifstream in(path);
  if (!in) throw ParseError("input not found: " + path.string());
  const auto score = parse_musicxml(in);
  report_warnings(score.warnings, err);
  const auto text = serialize_mel(score.events);
  if (c.output.empty() || c.output == "-") {
    out << text;
    return;
  }
  Session(c, out).write(c.output, text);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Note-transition network analysis of symbolic melodies", "melonet"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool single_input) {
    if (single_input)
      sub->add_option("input", config.inputs, "Score (.mel, .musicxml/.xml) or edge list (.edges)")->required()->expected(1);
    sub->add_option("--out,-o", config.out_dir, "Output directory");
    sub->add_option("--format", config.format, "Input format override: mel, musicxml, edges");
    sub->add_flag("--remove-rests", config.remove_rests, "Delete rest nodes before analysis");
  };
  auto add_analysis = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Random-graph ensemble seed")->envname("MELONET_SEED");
    sub->add_option("--ensemble", config.ensemble, "Random graphs per small-world estimate")->check(CLI::PositiveNumber);
    sub->add_option("--r2-threshold", config.r2_threshold, "Scale-free r^2 threshold")->check(CLI::Range(0.0, 1.0));
    sub->add_flag("--normalize-betweenness", config.normalize_betweenness, "Divide betweenness by (n-1)(n-2)");
    sub->add_flag("--no-smallworld", config.no_smallworld, "Skip the small-world comparison");
    sub->add_option("--threads", config.threads, "Worker threads (0 = all cores)");
  };
  auto add_community = [&](CLI::App* sub) {
    sub->add_option("--resolution", config.resolution, "Modularity resolution");
    sub->add_option("--community-seed", config.community_seed, "Louvain visit-order seed (0 = label order)");
  };

  auto* build = app.add_subcommand("build", "Build the network and export it");
  add_common(build, true);
  build->add_flag("--undirected", config.undirected, "Export the undirected projection");
  build->add_option("--export", config.exports, "Comma list of json, gexf, dot");

  auto* metrics = app.add_subcommand("metrics", "Compute the metrics report");
  add_common(metrics, true);
  add_analysis(metrics);
  metrics->add_flag("--undirected", config.undirected, "Analyse the undirected projection");

  auto* communities = app.add_subcommand("communities", "Detect communities");
  add_common(communities, true);
  add_community(communities);

  auto* corpus = app.add_subcommand("corpus", "Analyse a set of scores");
  corpus->add_option("inputs", config.inputs, "Files or directories")->required();
  corpus->add_option("--out,-o", config.out_dir, "Output directory");
  corpus->add_flag("--remove-rests", config.remove_rests, "Delete rest nodes before analysis");
  add_analysis(corpus);
  add_community(corpus);
  corpus->add_option("--bins", config.bins, "Histogram bins")->check(CLI::PositiveNumber);
  corpus->add_option("--metrics", config.metrics, "Comma list of summarized columns");

  auto* convert = app.add_subcommand("convert", "Convert MusicXML to .mel");
  convert->add_option("input", config.inputs, "MusicXML file")->required()->expected(1);
  convert->add_option("--output", config.output, "Target .mel path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (build->parsed()) cmd_build(config, out, err);
    if (metrics->parsed()) cmd_metrics(config, out, err);
    if (communities->parsed()) cmd_communities(config, out, err);
    if (corpus->parsed()) cmd_corpus(config, out, err);
    if (convert->parsed()) cmd_convert(config, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const CorpusError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCorpusEmpty;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace melonet
