#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "melonet/community.hpp"
#include "melonet/corpus.hpp"
#include "melonet/errors.hpp"
#include "melonet/export.hpp"
#include "melonet/ingest.hpp"
#include "melonet/metrics.hpp"
#include "melonet/small_world.hpp"

namespace py = pybind11;
using namespace melonet;

namespace {

py::object to_python(const nlohmann::ordered_json& j) {
  // The module lookup is a cache hit; a static handle would outlive the interpreter.
  return py::module_::import("json").attr("loads")(j.dump());
}

ParsedScore parse_text(ParsedScore (*parser)(std::istream&), const std::string& text) {
  std::istringstream in(text);
  return parser(in);
}

py::dict event_dict(const MelodyEvent& e) {
  py::dict d;
  d["kind"] = std::string(to_string(e.kind));
  py::list pitches;
  for (const auto& p : e.pitches) pitches.append(p.to_string());
  d["pitches"] = pitches;
  d["duration"] = e.duration.to_string();
  d["position"] = e.position;
  d["label"] = node_label(e);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Note-transition networks of symbolic melodies";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CorpusError>(m, "CorpusError", PyExc_RuntimeError);

  py::class_<MelodyEvent>(m, "MelodyEvent")
      .def_property_readonly("kind", [](const MelodyEvent& e) { return std::string(to_string(e.kind)); })
      .def_property_readonly("pitches",
                             [](const MelodyEvent& e) {
                               std::vector<std::string> out;
                               for (const auto& p : e.pitches) out.push_back(p.to_string());
                               return out;
                             })
      .def_property_readonly("duration", [](const MelodyEvent& e) { return e.duration.to_string(); })
      .def_readonly("position", &MelodyEvent::position)
      .def_property_readonly("label", [](const MelodyEvent& e) { return node_label(e); })
      .def("as_dict", &event_dict)
      .def("__eq__", [](const MelodyEvent& a, const MelodyEvent& b) { return a == b; })
      .def("__repr__", [](const MelodyEvent& e) { return "<MelodyEvent " + node_label(e) + " @" + std::to_string(e.position) + ">"; });

  py::class_<ParsedScore>(m, "ParsedScore")
      .def_readonly("events", &ParsedScore::events)
      .def_readonly("warnings", &ParsedScore::warnings);

  py::class_<MelodyNetwork>(m, "MelodyNetwork")
      .def_property_readonly("name", &MelodyNetwork::name)
      .def_property_readonly("directed", &MelodyNetwork::directed)
      .def_property_readonly("node_count", &MelodyNetwork::node_count)
      .def_property_readonly("edge_count", &MelodyNetwork::edge_count)
      .def_property_readonly("nodes", &MelodyNetwork::labels)
      .def_property_readonly("sequence", &MelodyNetwork::sequence_labels)
      .def_property_readonly("edges",
                             [](const MelodyNetwork& net) {
                               std::vector<std::tuple<std::string, std::string, double>> out;
                               for (const auto& [key, w] : net.edges())
                                 out.emplace_back(net.label(key.first), net.label(key.second), w);
                               return out;
                             })
      .def("weight", py::overload_cast<std::string_view, std::string_view>(&MelodyNetwork::weight, py::const_),
           py::arg("source"), py::arg("target"))
      .def("total_weight", &MelodyNetwork::total_weight)
      .def("to_json", [](const MelodyNetwork& net) { return to_python(network_to_json(net)); })
      .def("to_gexf", [](const MelodyNetwork& net, const CommunityMap& c) { return network_to_gexf(net, c); },
           py::arg("communities") = CommunityMap{})
      .def("to_dot", &network_to_dot)
      .def("__repr__", [](const MelodyNetwork& net) {
        return "<MelodyNetwork '" + net.name() + "' nodes=" + std::to_string(net.node_count()) +
               " edges=" + std::to_string(net.edge_count()) + ">";
      });

  // Ingest
  m.def("parse_mel_text", [](const std::string& text) { return parse_text(&parse_mel_text, text); }, py::arg("text"));
  m.def("parse_musicxml", [](const std::string& text) { return parse_text(&parse_musicxml, text); }, py::arg("text"));
  m.def(
      "parse_edge_list",
      [](const std::string& text, std::string name) {
        std::istringstream in(text);
        return parse_edge_list(in, std::move(name));
      },
      py::arg("text"), py::arg("name") = "");
  m.def("serialize_mel", [](const std::vector<MelodyEvent>& events) { return serialize_mel(events); });
  m.def("load_network", [](const std::filesystem::path& p) { return load_network(p).network; }, py::arg("path"));

  // Graph model
  m.def("build_network", [](const std::vector<MelodyEvent>& events, std::string name) { return build_network(events, std::move(name)); },
        py::arg("events"), py::arg("name") = "");
  m.def("build_network_from_labels",
        [](const std::vector<std::string>& labels, std::string name) { return build_network_from_labels(labels, std::move(name)); },
        py::arg("labels"), py::arg("name") = "");
  m.def("reconstruct_events", &reconstruct_events);
  m.def("remove_rests", &remove_rests);
  m.def("undirected_projection", &undirected_projection, py::arg("net"), py::arg("keep_self_loops") = false);

  // Metrics
  m.def("degree_table", [](const MelodyNetwork& net) {
    py::list out;
    for (const auto& r : degree_table(net)) {
      py::dict d;
      d["node"] = r.node;
      d["in"] = r.in_degree;
      d["out"] = r.out_degree;
      d["total"] = r.total_degree;
      out.append(d);
    }
    return out;
  });
  m.def("degree_distribution", &degree_distribution);
  m.def("fit_power_law", [](const DegreeDistribution& d, double t) { return to_python(to_json(fit_power_law(d, t))); },
        py::arg("distribution"), py::arg("r2_threshold") = 0.80);
  m.def("density", &density);
  m.def(
      "distances",
      [](const MelodyNetwork& net, const std::string& mode) {
        if (mode != "directed" && mode != "undirected") throw DomainError("mode must be 'directed' or 'undirected'");
        const auto d = distances(net, mode == "directed" ? DistanceMode::Directed : DistanceMode::Undirected);
        py::dict out;
        out["average"] = d.average;
        out["diameter"] = d.diameter;
        out["reachable_pairs"] = d.reachable_pairs;
        out["reachable_fraction"] = d.reachable_fraction;
        return out;
      },
      py::arg("net"), py::arg("mode") = "directed");
  m.def("clustering", [](const MelodyNetwork& net) {
    const auto c = clustering(net);
    py::dict out;
    out["global"] = c.global;
    out["average_local"] = c.average_local;
    out["degenerate"] = c.degenerate;
    return out;
  });
  m.def("betweenness", &betweenness, py::arg("net"), py::arg("normalize") = false);
  m.def(
      "full_report",
      [](const MelodyNetwork& net, double r2_threshold, bool normalize) {
        MetricsOptions options;
        options.r2_threshold = r2_threshold;
        options.normalize_betweenness = normalize;
        return to_python(to_json(full_report(net, options)));
      },
      py::arg("net"), py::arg("r2_threshold") = 0.80, py::arg("normalize_betweenness") = false);

  // Small world
  m.def("random_graph", &random_graph, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("watts_strogatz", &watts_strogatz, py::arg("n"), py::arg("k"), py::arg("p"), py::arg("seed"));
  m.def(
      "small_world_sigma",
      [](const MelodyNetwork& net, std::size_t ensemble, std::uint64_t seed) {
        SmallWorldResult r;
        {
          py::gil_scoped_release release;
          r = small_world_sigma(net, ensemble, seed);
        }
        return to_python(to_json(r));
      },
      py::arg("net"), py::arg("ensemble_size") = 100, py::arg("seed") = 42);

  // Communities
  m.def("modularity_of", &modularity_of, py::arg("net"), py::arg("assignment"), py::arg("resolution") = 1.0);
  m.def(
      "detect_communities",
      [](const MelodyNetwork& net, double resolution, std::uint64_t seed, std::size_t refine_limit) {
        const auto a = detect_communities(net, resolution, seed, refine_limit);
        py::dict out = to_python(to_json(a));
        out["membership"] = a.membership;
        out["community_sizes"] = a.community_sizes;
        return out;
      },
      py::arg("net"), py::arg("resolution") = 1.0, py::arg("seed") = 0,
      py::arg("refine_limit") = kDefaultRefineLimit);

  // Corpus
  m.def(
      "analyze_corpus",
      [](const std::vector<std::filesystem::path>& paths, std::uint64_t seed, std::size_t ensemble, bool small_world,
         bool remove_rests) {
        CorpusConfig config;
        config.seed = seed;
        config.ensemble_size = ensemble;
        config.small_world = small_world;
        config.remove_rests = remove_rests;
        CorpusResult result;
        {
          py::gil_scoped_release release;
          result = analyze_corpus(paths, config);
        }
        return py::make_tuple(corpus_csv(result), failures_csv(result));
      },
      py::arg("paths"), py::arg("seed") = 42, py::arg("ensemble_size") = 100, py::arg("small_world") = true,
      py::arg("remove_rests") = false,
      "Returns (corpus.csv text, failures.csv text).");
}
