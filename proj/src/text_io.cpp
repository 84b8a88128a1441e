#include "rwcds/text_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace rwcds {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

void save_graph(const NetworkGraph& g, std::ostream& os) {
  os << std::setprecision(17);
  os << g.size() << " " << g.radio_range() << " " << g.interference_range() << "\n";
  for (NodeId u = 0; u < g.size(); ++u)
    os << "node " << u << " " << g.position(u).x << " " << g.position(u).y << "\n";
  for (const Edge& e : g.edges()) os << "edge " << e.u << " " << e.v << "\n";
}

NetworkGraph load_graph(std::istream& is) {
  int n = 0;
  double radio = 0.0, interference = 0.0;
  if (!(is >> n >> radio >> interference)) fail(Errc::IoError, "graph header malformed");
  std::vector<Point> pos(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::string kind;
  while (is >> kind) {
    if (kind == "node") {
      NodeId id;
      double x, y;
      if (!(is >> id >> x >> y)) fail(Errc::IoError, "node line malformed");
      if (id < 0 || id >= n) fail(Errc::IoError, "node id out of range");
      pos[static_cast<std::size_t>(id)] = {x, y};
      seen[static_cast<std::size_t>(id)] = 1;
    } else if (kind == "edge") {
      NodeId u, v;
      if (!(is >> u >> v)) fail(Errc::IoError, "edge line malformed");
      edges.emplace_back(u, v);
    } else {
      fail(Errc::IoError, "unexpected token '" + kind + "' in graph file");
    }
  }
  for (int i = 0; i < n; ++i)
    if (!seen[static_cast<std::size_t>(i)])
      fail(Errc::IoError, "missing node line for id " + std::to_string(i));
  return NetworkGraph::from_edges(n, edges, std::move(pos), radio, interference);
}

void save_graph_file(const NetworkGraph& g, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(Errc::IoError, "cannot write " + path);
  save_graph(g, os);
}

NetworkGraph load_graph_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(Errc::IoError, "cannot read " + path);
  return load_graph(is);
}

void save_roles(const RoleAssignment& ra, std::ostream& os) {
  for (NodeId u = 0; u < ra.size(); ++u)
    os << "role " << u << " " << (ra.at(u) == Role::Dominator ? "D" : "E") << "\n";
}

RoleAssignment load_roles(std::istream& is, int n) {
  RoleAssignment ra(n);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::string kind;
  while (is >> kind) {
    if (kind != "role") fail(Errc::IoError, "unexpected token '" + kind + "' in roles file");
    NodeId id;
    std::string r;
    if (!(is >> id >> r)) fail(Errc::IoError, "role line malformed");
    if (id < 0 || id >= n) fail(Errc::IoError, "role id out of range");
    if (r != "D" && r != "E") fail(Errc::IoError, "role must be D or E");
    ra.set(id, r == "D" ? Role::Dominator : Role::Dominatee);
    seen[static_cast<std::size_t>(id)] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (!seen[static_cast<std::size_t>(i)])
      fail(Errc::PartialAssignment, "missing role for node " + std::to_string(i));
  return ra;
}

void save_roles_file(const RoleAssignment& ra, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(Errc::IoError, "cannot write " + path);
  save_roles(ra, os);
}

RoleAssignment load_roles_file(const std::string& path, int n) {
  std::ifstream is(path);
  if (!is) fail(Errc::IoError, "cannot read " + path);
  return load_roles(is, n);
}

void save_channels(const ChannelAssignment& ca, std::ostream& os) {
  for (const auto& [u, c] : ca.channel) os << "chan " << u << " " << c << "\n";
}

void save_clusters(const std::vector<Cluster>& clusters, std::ostream& os) {
  for (const Cluster& c : clusters) {
    os << "cluster " << c.leader;
    for (NodeId m : c.members) os << " " << m;
    os << "\n";
  }
}

std::map<std::string, std::string> parse_config(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(Errc::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(Errc::ConfigError, "line " + std::to_string(line_no) + ": empty key");
    out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(Errc::IoError, "cannot read " + path);
  return parse_config(is);
}

}  // namespace rwcds
