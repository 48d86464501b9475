#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "json.hpp"
#include "melonet/network.hpp"

namespace melonet {

/// Community id per node label; empty when no partition is attached.
using CommunityMap = std::map<std::string, std::size_t>;

/// `{name, directed, nodes, edges:[{source,target,weight}], sequence}` with
/// nodes and edges sorted by label.
nlohmann::ordered_json network_to_json(const MelodyNetwork& net);

/// GEXF 1.2 document. Nodes carry their label, edges their weight, and a
/// `community` node attribute is added when `communities` is non-empty.
std::string network_to_gexf(const MelodyNetwork& net, const CommunityMap& communities = {});

/// Graphviz document with the weight mirrored into `penwidth`.
std::string network_to_dot(const MelodyNetwork& net);

}  // namespace melonet
