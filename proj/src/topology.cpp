#include "fiapower/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fiapower/rng.hpp"

namespace fiapower {

namespace {

// BFS over an adjacency list; returns hop counts, 0xffff for unreachable.
std::vector<uint16_t> bfs_dist(const std::vector<std::vector<NodeId>>& adj, NodeId src) {
  std::vector<uint16_t> dist(adj.size(), 0xffff);
  std::deque<NodeId> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop_front();
    for (NodeId v : adj[u]) {
      if (dist[v] == 0xffff) {
        dist[v] = static_cast<uint16_t>(dist[u] + 1);
        q.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

void PopGraph::validate() const {
  if (pops.empty()) throw std::invalid_argument("PopGraph: no pops");
  std::set<std::string> ids;
  for (const auto& p : pops) {
    if (!ids.insert(p.id).second) throw std::invalid_argument("PopGraph: duplicate pop id " + p.id);
  }
  std::set<std::pair<uint32_t, uint32_t>> seen;
  std::vector<std::vector<NodeId>> adj(pops.size());
  for (const auto& l : links) {
    if (l.a >= pops.size() || l.b >= pops.size())
      throw std::invalid_argument("PopGraph: link endpoint out of range");
    if (l.a == l.b) throw std::invalid_argument("PopGraph: self loop at " + pops[l.a].id);
    auto key = std::minmax(l.a, l.b);
    if (!seen.insert(key).second)
      throw std::invalid_argument("PopGraph: duplicate link " + pops[l.a].id + "-" + pops[l.b].id);
    adj[l.a].push_back(l.b);
    adj[l.b].push_back(l.a);
  }
  auto dist = bfs_dist(adj, 0);
  std::vector<std::string> unreachable;
  for (size_t i = 0; i < pops.size(); ++i)
    if (dist[i] == 0xffff) unreachable.push_back(pops[i].id);
  if (!unreachable.empty()) {
    std::string msg = "PopGraph: disconnected, unreachable pops:";
    for (const auto& s : unreachable) msg += " " + s;
    throw std::invalid_argument(msg);
  }
}

PopGraph load_pop_graph(std::istream& in) {
  PopGraph g;
  std::map<std::string, uint32_t> index;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    auto parse_error = [&](const std::string& what) {
      return std::invalid_argument("topology line " + std::to_string(lineno) + ": " + what);
    };
    if (kind == "pop") {
      Pop p;
      if (!(ls >> p.id >> p.city >> p.population)) throw parse_error("expected: pop <id> <city> <population>");
      if (index.count(p.id)) throw parse_error("duplicate pop id " + p.id);
      index[p.id] = static_cast<uint32_t>(g.pops.size());
      g.pops.push_back(std::move(p));
    } else if (kind == "link") {
      std::string a, b;
      double cap = 0.0;
      if (!(ls >> a >> b >> cap)) throw parse_error("expected: link <id_a> <id_b> <capacity_bps>");
      auto ia = index.find(a), ib = index.find(b);
      if (ia == index.end() || ib == index.end()) throw parse_error("link references unknown pop");
      g.links.push_back({ia->second, ib->second, cap});
    } else {
      throw parse_error("unknown record '" + kind + "'");
    }
  }
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("topology: ") + e.what());
  }
  return g;
}

PopGraph load_pop_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("topology: cannot open " + path);
  return load_pop_graph(in);
}

PopGraph synth_pop_graph(uint32_t n_pops, double avg_degree, uint64_t seed,
                         const PopulationModel& pop_model, double link_capacity_bps) {
  if (n_pops < 2) throw std::invalid_argument("synth_pop_graph: need at least 2 pops");
  if (avg_degree < 1.0) throw std::invalid_argument("synth_pop_graph: avg_degree must be >= 1");
  const uint64_t target_edges = static_cast<uint64_t>(n_pops * avg_degree / 2.0);
  const uint64_t max_edges = static_cast<uint64_t>(n_pops) * (n_pops - 1) / 2;
  if (target_edges > max_edges)
    throw std::invalid_argument("synth_pop_graph: avg_degree infeasible for pop count");

  Rng rng(mix_seed(seed, 0x706f7073ULL));
  PopGraph g;
  g.pops.reserve(n_pops);
  for (uint32_t i = 0; i < n_pops; ++i) {
    Pop p;
    p.id = "P" + std::to_string(i);
    p.city = "city" + std::to_string(i);
    double size = std::exp(pop_model.log_mean + pop_model.log_sigma * rng.next_gaussian());
    p.population = std::max<uint64_t>(1, static_cast<uint64_t>(size));
    g.pops.push_back(std::move(p));
  }

  std::set<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t i = 1; i < n_pops; ++i) {
    uint32_t j = static_cast<uint32_t>(rng.next_below(i));
    edges.insert(std::minmax(i, j));
  }
  while (edges.size() < target_edges) {
    uint32_t a = static_cast<uint32_t>(rng.next_below(n_pops));
    uint32_t b = static_cast<uint32_t>(rng.next_below(n_pops));
    if (a == b) continue;
    edges.insert(std::minmax(a, b));
  }
  for (const auto& e : edges) g.links.push_back({e.first, e.second, link_capacity_bps});
  g.validate();
  return g;
}

void AccessTreeSpec::validate() const {
  if (depth < 1 || arity < 1) throw std::invalid_argument("AccessTreeSpec: depth and arity must be >= 1");
}

uint64_t AccessTreeSpec::nodes_per_pop() const {
  uint64_t total = 0, level = 1;
  for (uint32_t i = 0; i < depth; ++i) {
    level *= arity;
    total += level;
  }
  return total;
}

uint64_t AccessTreeSpec::leaves_per_pop() const {
  uint64_t level = 1;
  for (uint32_t i = 0; i < depth; ++i) level *= arity;
  return level;
}

NetworkModel attach_access_trees(const PopGraph& graph, const AccessTreeSpec& spec,
                                 const std::map<RouterRole, RouterProfile>& profiles) {
  graph.validate();
  spec.validate();
  for (auto role : {RouterRole::core, RouterRole::edge, RouterRole::leaf})
    if (!profiles.count(role))
      throw std::invalid_argument(std::string("attach_access_trees: missing profile for role ") + to_string(role));

  NetworkModel m;
  m.pops = graph.pops;
  m.tree = spec;
  m.profiles = profiles;
  const uint32_t P = static_cast<uint32_t>(graph.pops.size());
  m.tree_block_ = spec.nodes_per_pop();
  m.level_offset_.assign(spec.depth + 1, 0);
  uint64_t off = 0, level = 1;
  for (uint32_t d = 1; d <= spec.depth; ++d) {
    m.level_offset_[d] = off;
    level *= spec.arity;
    off += level;
  }

  m.nodes.resize(P + P * m.tree_block_);
  m.core_adj.assign(P, {});
  m.leaves_of_pop.assign(P, {});
  for (uint32_t p = 0; p < P; ++p) {
    m.nodes[p] = {RouterRole::core, p, p, 0, p};
  }
  for (const auto& l : graph.links) {
    m.core_adj[l.a].push_back(l.b);
    m.core_adj[l.b].push_back(l.a);
  }
  for (auto& adj : m.core_adj) std::sort(adj.begin(), adj.end());

  for (uint32_t p = 0; p < P; ++p) {
    const NodeId base = P + static_cast<NodeId>(p * m.tree_block_);
    uint64_t level_size = 1;
    for (uint16_t d = 1; d <= spec.depth; ++d) {
      level_size *= spec.arity;
      for (uint32_t j = 0; j < level_size; ++j) {
        NodeId id = base + static_cast<NodeId>(m.level_offset_[d] + j);
        NodeId parent = d == 1 ? m.core_of_pop(p)
                               : base + static_cast<NodeId>(m.level_offset_[d - 1] + j / spec.arity);
        RouterRole role = d == spec.depth ? RouterRole::leaf : RouterRole::edge;
        m.nodes[id] = {role, p, parent, d, j};
        if (role == RouterRole::leaf) m.leaves_of_pop[p].push_back(id);
      }
    }
  }

  // all-pairs core distances
  m.core_dist.resize(P);
  for (uint32_t p = 0; p < P; ++p) m.core_dist[p] = bfs_dist(m.core_adj, p);

  m.validate();
  return m;
}

NodeId NetworkModel::tree_base_(uint32_t pop) const {
  return static_cast<NodeId>(pops.size() + pop * tree_block_);
}

std::vector<NodeId> NetworkModel::children(NodeId n) const {
  const Node& nd = nodes[n];
  if (nd.depth >= tree.depth) return {};
  std::vector<NodeId> out;
  const NodeId base = tree_base_(nd.pop);
  const uint32_t first = (nd.depth == 0 ? 0 : nd.index_in_level * tree.arity);
  const uint64_t child_off = level_offset_[nd.depth + 1];
  if (nd.depth == 0) {
    for (uint32_t j = 0; j < tree.arity; ++j) out.push_back(base + static_cast<NodeId>(child_off + j));
  } else {
    for (uint32_t j = 0; j < tree.arity; ++j)
      out.push_back(base + static_cast<NodeId>(child_off + first + j));
  }
  return out;
}

std::vector<NodeId> NetworkModel::neighbors(NodeId n) const {
  std::vector<NodeId> out;
  const Node& nd = nodes[n];
  if (nd.role == RouterRole::core) {
    out = core_adj[nd.pop];
  } else {
    out.push_back(nd.parent);
  }
  auto kids = children(n);
  out.insert(out.end(), kids.begin(), kids.end());
  std::sort(out.begin(), out.end());
  return out;
}

NodeId NetworkModel::ancestor_at_depth(NodeId n, uint16_t depth) const {
  NodeId cur = n;
  while (nodes[cur].depth > depth) cur = nodes[cur].parent;
  return cur;
}

uint32_t NetworkModel::hop_distance(NodeId from, NodeId to) const {
  const Node& a = nodes[from];
  const Node& b = nodes[to];
  if (from == to) return 0;
  if (a.pop == b.pop) {
    // walk both up to the lowest common ancestor
    NodeId x = from, y = to;
    uint32_t up_x = 0, up_y = 0;
    while (nodes[x].depth > nodes[y].depth) { x = nodes[x].parent; ++up_x; }
    while (nodes[y].depth > nodes[x].depth) { y = nodes[y].parent; ++up_y; }
    while (x != y) { x = nodes[x].parent; y = nodes[y].parent; ++up_x; ++up_y; }
    return up_x + up_y;
  }
  return a.depth + core_dist[a.pop][b.pop] + b.depth;
}

std::vector<NodeId> NetworkModel::shortest_path(NodeId from, NodeId to) const {
  if (from >= nodes.size() || to >= nodes.size())
    throw std::invalid_argument("shortest_path: node out of range");
  std::vector<NodeId> path{from};
  if (from == to) return path;

  const Node& a = nodes[from];
  const Node& b = nodes[to];
  if (a.pop == b.pop) {
    // unique tree route: up to the common ancestor, then down
    std::vector<NodeId> up1, up2;
    NodeId x = from, y = to;
    while (nodes[x].depth > nodes[y].depth) { up1.push_back(x); x = nodes[x].parent; }
    while (nodes[y].depth > nodes[x].depth) { up2.push_back(y); y = nodes[y].parent; }
    while (x != y) {
      up1.push_back(x); x = nodes[x].parent;
      up2.push_back(y); y = nodes[y].parent;
    }
    path.assign(up1.begin(), up1.end());
    path.push_back(x);
    path.insert(path.end(), up2.rbegin(), up2.rend());
    return path;
  }

  path.clear();
  NodeId cur = from;
  while (cur != core_of_pop(a.pop)) { path.push_back(cur); cur = nodes[cur].parent; }
  // lexicographic minimum-hop walk between cores: among neighbors one hop
  // closer to the target, take the smallest id
  const auto& dist_to_target = core_dist[b.pop];
  uint32_t pop_cur = a.pop;
  path.push_back(core_of_pop(pop_cur));
  while (pop_cur != b.pop) {
    uint16_t need = static_cast<uint16_t>(dist_to_target[pop_cur] - 1);
    NodeId next = 0;
    bool found = false;
    for (NodeId nb : core_adj[pop_cur]) {  // sorted, first match is smallest id
      if (dist_to_target[nb] == need) { next = nb; found = true; break; }
    }
    if (!found) throw std::runtime_error("shortest_path: target unreachable, model is corrupt");
    pop_cur = next;
    path.push_back(core_of_pop(pop_cur));
  }
  std::vector<NodeId> down;
  cur = to;
  while (cur != core_of_pop(b.pop)) { down.push_back(cur); cur = nodes[cur].parent; }
  path.insert(path.end(), down.rbegin(), down.rend());
  return path;
}

std::vector<std::pair<NodeId, NodeId>> NetworkModel::edge_list() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (uint32_t p = 0; p < pops.size(); ++p)
    for (NodeId nb : core_adj[p])
      if (p < nb) out.emplace_back(p, nb);
  for (NodeId n = static_cast<NodeId>(pops.size()); n < nodes.size(); ++n)
    out.emplace_back(nodes[n].parent, n);
  return out;
}

NodeId NetworkModel::origin_node(uint32_t content) const {
  if (content >= origin_of.size())
    throw std::invalid_argument("origin_node: content has no assigned origin");
  return origin_of[content];
}

const RouterProfile& NetworkModel::profile_of(RouterRole role) const {
  auto it = profiles.find(role);
  if (it == profiles.end())
    throw std::invalid_argument(std::string("NetworkModel: no profile for role ") + to_string(role));
  return it->second;
}

void NetworkModel::validate() const {
  const uint32_t P = static_cast<uint32_t>(pops.size());
  if (nodes.size() != P + P * tree_block_) throw std::runtime_error("NetworkModel: node count mismatch");
  for (uint32_t p = 0; p < P; ++p) {
    if (nodes[p].role != RouterRole::core) throw std::runtime_error("NetworkModel: core role mislabeled");
    if (leaves_of_pop[p].size() != tree.leaves_per_pop())
      throw std::runtime_error("NetworkModel: leaf count mismatch");
  }
  for (NodeId n = P; n < nodes.size(); ++n) {
    const auto& nd = nodes[n];
    RouterRole expect = nd.depth == tree.depth ? RouterRole::leaf : RouterRole::edge;
    if (nd.role != expect) throw std::runtime_error("NetworkModel: tree role mislabeled");
  }
  for (uint32_t p = 1; p < P; ++p)
    if (core_dist[0][p] == 0xffff) throw std::runtime_error("NetworkModel: core graph disconnected");
}

void assign_origins(NetworkModel& model, uint32_t num_contents, uint64_t seed) {
  if (num_contents == 0) throw std::invalid_argument("assign_origins: empty catalog");
  Rng rng(mix_seed(seed, 0x6f726967ULL));
  model.origin_of.resize(num_contents);
  const uint64_t p = model.num_pops();
  for (uint32_t c = 0; c < num_contents; ++c)
    model.origin_of[c] = model.core_of_pop(static_cast<uint32_t>(rng.next_below(p)));
}

}  // namespace fiapower
