#include "melonet/export.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "text_util.hpp"

namespace melonet {

namespace {

// Node ids ordered by label.
std::vector<NodeId> sorted_nodes(const MelodyNetwork& net) {
  std::vector<NodeId> ids(net.node_count());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) { return net.label(a) < net.label(b); });
  return ids;
}

struct LabeledEdge {
  const std::string* source;
  const std::string* target;
  double weight;
};

std::vector<LabeledEdge> sorted_edges(const MelodyNetwork& net) {
  std::vector<LabeledEdge> edges;
  edges.reserve(net.edge_count());
  for (const auto& [key, w] : net.edges()) {
    const std::string* s = &net.label(key.first);
    const std::string* t = &net.label(key.second);
    if (!net.directed() && *t < *s) std::swap(s, t);
    edges.push_back({s, t, w});
  }
  std::sort(edges.begin(), edges.end(), [](const LabeledEdge& a, const LabeledEdge& b) {
    if (*a.source != *b.source) return *a.source < *b.source;
    return *a.target < *b.target;
  });
  return edges;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

nlohmann::ordered_json network_to_json(const MelodyNetwork& net) {
  nlohmann::ordered_json j;
  j["name"] = net.name();
  j["directed"] = net.directed();
  auto nodes = nlohmann::ordered_json::array();
  for (NodeId id : sorted_nodes(net)) nodes.push_back(net.label(id));
  j["nodes"] = std::move(nodes);
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : sorted_edges(net)) edges.push_back({{"source", *e.source}, {"target", *e.target}, {"weight", e.weight}});
  j["edges"] = std::move(edges);
  j["sequence"] = net.sequence_labels();
  return j;
}

std::string network_to_gexf(const MelodyNetwork& net, const CommunityMap& communities) {
  const auto order = sorted_nodes(net);
  std::vector<std::size_t> gexf_id(net.node_count());
  for (std::size_t i = 0; i < order.size(); ++i) gexf_id[order[i]] = i;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
     << "  <meta>\n    <description>" << xml_escape(net.name()) << "</description>\n  </meta>\n"
     << "  <graph mode=\"static\" defaultedgetype=\"" << (net.directed() ? "directed" : "undirected") << "\">\n";
  if (!communities.empty()) {
    os << "    <attributes class=\"node\">\n"
       << "      <attribute id=\"community\" title=\"community\" type=\"integer\"/>\n"
       << "    </attributes>\n";
  }
  os << "    <nodes>\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& label = net.label(order[i]);
    os << "      <node id=\"" << i << "\" label=\"" << xml_escape(label) << "\"";
    auto it = communities.find(label);
    if (it == communities.end()) {
      os << "/>\n";
    } else {
      os << ">\n        <attvalues><attvalue for=\"community\" value=\"" << it->second
         << "\"/></attvalues>\n      </node>\n";
    }
  }
  os << "    </nodes>\n    <edges>\n";
  std::size_t edge_id = 0;
  for (const auto& e : sorted_edges(net)) {
    os << "      <edge id=\"" << edge_id++ << "\" source=\"" << gexf_id[*net.find(*e.source)] << "\" target=\""
       << gexf_id[*net.find(*e.target)] << "\" weight=\"" << detail::format_double(e.weight) << "\"/>\n";
  }
  os << "    </edges>\n  </graph>\n</gexf>\n";
  return os.str();
}

std::string network_to_dot(const MelodyNetwork& net) {
  const char* arrow = net.directed() ? " -> " : " -- ";
  std::ostringstream os;
  os << (net.directed() ? "digraph " : "graph ") << dot_quote(net.name()) << " {\n";
  for (NodeId id : sorted_nodes(net)) os << "  " << dot_quote(net.label(id)) << ";\n";
  for (const auto& e : sorted_edges(net)) {
    const auto w = detail::format_double(e.weight);
    os << "  " << dot_quote(*e.source) << arrow << dot_quote(*e.target) << " [weight=" << w << ", penwidth=" << w
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace melonet
