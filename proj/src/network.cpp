#include "melonet/network.hpp"

#include <algorithm>

#include "melonet/errors.hpp"

namespace melonet {

namespace {

std::pair<NodeId, NodeId> edge_key(bool directed, NodeId u, NodeId v) {
  if (!directed && v < u) std::swap(u, v);
  return {u, v};
}

Pitch parse_label_pitch(std::string_view text, std::string_view whole) {
  // Letter, optional '#', then a single octave digit.
  if (text.size() < 2) throw ParseError("malformed label '" + std::string(whole) + "'");
  const char octave = text.back();
  if (octave < '0' || octave > '9') throw ParseError("malformed label '" + std::string(whole) + "'");
  auto pc = PitchClass::parse(text.substr(0, text.size() - 1));
  if (!pc || pc->second != (text.size() == 3 ? 1 : 0))
    throw ParseError("malformed label '" + std::string(whole) + "'");
  return Pitch{pc->first, octave - '0'};
}

}  // namespace

std::string node_label(const MelodyEvent& event) {
  std::string out;
  switch (event.kind) {
    case EventKind::Rest:
      out = "R";
      break;
    case EventKind::Note:
    case EventKind::Chord:
      for (std::size_t i = 0; i < event.pitches.size(); ++i) {
        if (i != 0) out += '+';
        out += event.pitches[i].to_string();
      }
      break;
  }
  out += ':';
  out += event.duration.to_string();
  return out;
}

MelodyEvent parse_label(std::string_view label) {
  const auto colon = label.rfind(':');
  if (colon == std::string_view::npos || colon == 0)
    throw ParseError("malformed label '" + std::string(label) + "'");
  auto duration = Duration::parse(label.substr(colon + 1));
  if (!duration) throw ParseError("bad duration in label '" + std::string(label) + "'");
  const auto head = label.substr(0, colon);
  if (head == "R") return MelodyEvent::rest(*duration);

  std::vector<Pitch> pitches;
  std::size_t start = 0;
  while (true) {
    const auto plus = head.find('+', start);
    pitches.push_back(parse_label_pitch(head.substr(start, plus - start), label));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  if (pitches.size() == 1) return MelodyEvent::note(pitches.front(), *duration);
  if (!std::is_sorted(pitches.begin(), pitches.end()))
    throw ParseError("chord label pitches not ascending: '" + std::string(label) + "'");
  try {
    return MelodyEvent::chord(std::move(pitches), *duration);
  } catch (const DomainError& e) {
    throw ParseError(std::string(e.what()) + " in label '" + std::string(label) + "'");
  }
}

bool is_rest_label(std::string_view label) noexcept { return label.starts_with("R:"); }

std::optional<NodeId> MelodyNetwork::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double MelodyNetwork::weight(NodeId source, NodeId target) const {
  auto it = edges_.find(edge_key(directed_, source, target));
  return it == edges_.end() ? 0.0 : it->second;
}

double MelodyNetwork::weight(std::string_view source, std::string_view target) const {
  auto u = find(source);
  auto v = find(target);
  return (u && v) ? weight(*u, *v) : 0.0;
}

double MelodyNetwork::total_weight() const {
  double total = 0.0;
  for (const auto& [key, w] : edges_) total += w;
  return total;
}

std::vector<std::string> MelodyNetwork::sequence_labels() const {
  std::vector<std::string> out;
  out.reserve(sequence_.size());
  for (NodeId id : sequence_) out.push_back(labels_[id]);
  return out;
}

NodeId MelodyNetwork::add_node(const std::string& label) {
  auto [it, inserted] = index_.try_emplace(label, labels_.size());
  if (inserted) labels_.push_back(label);
  return it->second;
}

void MelodyNetwork::add_edge(NodeId source, NodeId target, double weight) {
  if (source >= labels_.size() || target >= labels_.size()) throw DomainError("edge endpoint out of range");
  if (!(weight > 0.0)) throw DomainError("edge weight must be positive");
  edges_[edge_key(directed_, source, target)] += weight;
}

MelodyNetwork build_network_from_labels(std::span<const std::string> labels, std::string name) {
  if (labels.empty()) throw DomainError("empty melody");
  MelodyNetwork net(std::move(name), true);
  std::optional<NodeId> prev;
  for (const auto& label : labels) {
    const NodeId current = net.add_node(label);
    if (prev) net.add_edge(*prev, current, 1.0);
    net.append_to_sequence(current);
    prev = current;
  }
  return net;
}

MelodyNetwork build_network(std::span<const MelodyEvent> events, std::string name) {
  if (events.empty()) throw DomainError("empty melody");
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].position != i) throw DomainError("event positions are not consecutive from 0");
  }
  std::vector<std::string> labels;
  labels.reserve(events.size());
  for (const auto& e : events) labels.push_back(node_label(e));
  return build_network_from_labels(labels, std::move(name));
}

std::vector<std::string> reconstruct_events(const MelodyNetwork& net) {
  if (net.sequence().empty()) throw DomainError("no sequence stored");
  return net.sequence_labels();
}

MelodyNetwork remove_rests(const MelodyNetwork& net) {
  MelodyNetwork out(net.name(), net.directed());
  std::vector<std::optional<NodeId>> remap(net.node_count());
  for (NodeId id = 0; id < net.node_count(); ++id) {
    if (!is_rest_label(net.label(id))) remap[id] = out.add_node(net.label(id));
  }
  for (const auto& [key, w] : net.edges()) {
    const auto& [u, v] = key;
    if (remap[u] && remap[v]) out.add_edge(*remap[u], *remap[v], w);
  }
  return out;
}

MelodyNetwork undirected_projection(const MelodyNetwork& net, bool keep_self_loops) {
  MelodyNetwork out(net.name(), false);
  for (const auto& label : net.labels()) out.add_node(label);
  for (const auto& [key, w] : net.edges()) {
    const auto& [u, v] = key;
    if (u == v && !keep_self_loops) continue;
    out.add_edge(u, v, w);
  }
  return out;
}

}  // namespace melonet
