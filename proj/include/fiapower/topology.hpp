#ifndef FIAPOWER_TOPOLOGY_HPP
#define FIAPOWER_TOPOLOGY_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fiapower/router.hpp"

namespace fiapower {

using NodeId = uint32_t;

struct Pop {
  std::string id;
  std::string city;
  uint64_t population = 0;
};

struct PopLink {
  uint32_t a = 0;
  uint32_t b = 0;
  double capacity_bps = 40e9;
};

// PoP-level core map: one router per PoP, undirected links.
struct PopGraph {
  std::vector<Pop> pops;
  std::vector<PopLink> links;

  void validate() const;  // connectivity, no self loops, no duplicate links
};

// Line-oriented text format:
//   pop <id> <city> <population>
//   link <id_a> <id_b> <capacity_bps>
// '#' starts a comment.
PopGraph load_pop_graph(std::istream& in);
PopGraph load_pop_graph_file(const std::string& path);

struct PopulationModel {
  double log_mean = std::log(1e5);  // lognormal city sizes
  double log_sigma = 1.0;
};

// Random connected graph: spanning tree plus extra edges up to
// floor(n*avg_degree/2) total. Deterministic per seed.
PopGraph synth_pop_graph(uint32_t n_pops, double avg_degree, uint64_t seed,
                         const PopulationModel& pop_model = {}, double link_capacity_bps = 40e9);

struct AccessTreeSpec {
  uint32_t depth = 3;
  uint32_t arity = 3;

  uint64_t nodes_per_pop() const;   // sum of arity^i, i=1..depth
  uint64_t leaves_per_pop() const;  // arity^depth
  void validate() const;
};

// Core graph plus one complete access tree per PoP. Core node ids are
// 0..P-1 in PoP order; tree nodes follow level by level per PoP.
struct NetworkModel {
  struct Node {
    RouterRole role = RouterRole::core;
    uint32_t pop = 0;
    NodeId parent = 0;        // own id for cores
    uint16_t depth = 0;       // 0 for cores
    uint32_t index_in_level = 0;
  };

  std::vector<Pop> pops;
  std::vector<Node> nodes;
  std::vector<std::vector<NodeId>> core_adj;
  std::vector<std::vector<NodeId>> leaves_of_pop;
  std::map<RouterRole, RouterProfile> profiles;
  AccessTreeSpec tree;
  std::vector<NodeId> origin_of;  // content id -> hosting core node

  // distances between cores, filled at construction
  std::vector<std::vector<uint16_t>> core_dist;

  size_t num_pops() const { return pops.size(); }
  NodeId core_of_pop(uint32_t pop) const { return static_cast<NodeId>(pop); }
  bool is_core(NodeId n) const { return n < pops.size(); }

  std::vector<NodeId> neighbors(NodeId n) const;
  std::vector<NodeId> children(NodeId n) const;

  // minimum-hop path, ties broken toward the smallest next node id;
  // path.front()==from, path.back()==to
  std::vector<NodeId> shortest_path(NodeId from, NodeId to) const;
  uint32_t hop_distance(NodeId from, NodeId to) const;

  std::vector<std::pair<NodeId, NodeId>> edge_list() const;
  NodeId origin_node(uint32_t content) const;
  const RouterProfile& profile_of(RouterRole role) const;

  void validate() const;

 private:
  friend NetworkModel attach_access_trees(const PopGraph&, const AccessTreeSpec&,
                                          const std::map<RouterRole, RouterProfile>&);
  std::vector<uint64_t> level_offset_;  // per-level offset inside one pop block
  uint64_t tree_block_ = 0;             // nodes per pop block
  NodeId tree_base_(uint32_t pop) const;
  NodeId ancestor_at_depth(NodeId n, uint16_t depth) const;
};

NetworkModel attach_access_trees(const PopGraph& graph, const AccessTreeSpec& spec,
                                 const std::map<RouterRole, RouterProfile>& profiles);

// Pins every content id to a uniformly chosen PoP's core router.
void assign_origins(NetworkModel& model, uint32_t num_contents, uint64_t seed);

}  // namespace fiapower

#endif
