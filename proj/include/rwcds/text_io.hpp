#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rwcds/cluster_tree.hpp"
#include "rwcds/graph.hpp"
#include "rwcds/heuristics.hpp"
#include "rwcds/roles.hpp"

namespace rwcds {

// Line-oriented text formats:
//   graph:    "n radio_range interference_range" header, then "node id x y"
//             and "edge u v" lines
//   roles:    "role <id> <D|E>" lines
//   channels: "chan <id> <c>" lines
//   clusters: "cluster <leader> <member...>" lines
//   config:   "key = value" lines, '#' comments

void save_graph(const NetworkGraph& g, std::ostream& os);
NetworkGraph load_graph(std::istream& is);
void save_graph_file(const NetworkGraph& g, const std::string& path);
NetworkGraph load_graph_file(const std::string& path);

void save_roles(const RoleAssignment& ra, std::ostream& os);
RoleAssignment load_roles(std::istream& is, int n);
void save_roles_file(const RoleAssignment& ra, const std::string& path);
RoleAssignment load_roles_file(const std::string& path, int n);

void save_channels(const ChannelAssignment& ca, std::ostream& os);
void save_clusters(const std::vector<Cluster>& clusters, std::ostream& os);

std::map<std::string, std::string> parse_config(std::istream& is);
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace rwcds
