#ifndef FIAPOWER_CACHE_SIM_HPP
#define FIAPOWER_CACHE_SIM_HPP

#include <cstdint>
#include <list>
#include <unordered_map>
#include <vector>

#include "fiapower/topology.hpp"
#include "fiapower/workload.hpp"

namespace fiapower {

// Byte-budgeted LRU over uniformly sized objects.
class LruCache {
 public:
  explicit LruCache(uint64_t capacity_bytes) : capacity_(capacity_bytes) {}

  // hit iff present; a hit moves the entry to the front
  bool get(uint32_t id);
  bool contains(uint32_t id) const { return index_.count(id) != 0; }

  struct PutResult {
    bool cached = false;  // false: object larger than the whole cache
    std::vector<uint32_t> evicted;
  };
  PutResult put(uint32_t id, uint64_t size);

  uint64_t capacity() const { return capacity_; }
  uint64_t occupancy() const { return occupancy_; }
  size_t entries() const { return index_.size(); }

 private:
  struct Entry {
    uint32_t id;
    uint64_t size;
  };
  uint64_t capacity_ = 0;
  uint64_t occupancy_ = 0;
  std::list<Entry> lru_;  // front = most recent
  std::unordered_map<uint32_t, std::list<Entry>::iterator> index_;
};

enum class CachePlacement { none, edge_leaf_only, pervasive_all_routers };

inline const char* to_string(CachePlacement p) {
  switch (p) {
    case CachePlacement::none: return "none";
    case CachePlacement::edge_leaf_only: return "edge";
    default: return "pervasive";
  }
}

struct CacheDeployment {
  CachePlacement placement = CachePlacement::none;
  double budget_ratio = 0.0;  // c = total cache bytes / total catalog bytes

  void validate() const;
};

enum class DiscoveryStrategy { simple_edge, cooperative_edge, on_path, nearest_copy };

inline const char* to_string(DiscoveryStrategy s) {
  switch (s) {
    case DiscoveryStrategy::simple_edge: return "simple_edge";
    case DiscoveryStrategy::cooperative_edge: return "cooperative_edge";
    case DiscoveryStrategy::on_path: return "on_path";
    default: return "nearest_copy";
  }
}

struct ServingDecision {
  NodeId serving_node = 0;
  bool from_cache = false;
  bool local_leaf_hit = false;          // served by the requesting leaf's own cache
  std::vector<NodeId> query_path;       // requesting leaf ... serving node
  std::vector<NodeId> inserted_at;      // caches that received the object
  uint32_t uncacheable = 0;             // object bigger than a target cache
};

struct NodeCacheStats {
  uint64_t hits = 0;
  uint64_t misses = 0;  // probes that did not find the object
  uint64_t evictions = 0;
  uint64_t bytes_served = 0;
};

// Per-node caches for one simulation run, plus a content -> holders index so
// cooperative and nearest-copy discovery stay cheap.
class CacheNetwork {
 public:
  CacheNetwork(const NetworkModel& model, const CacheDeployment& deployment, const Catalog& catalog);

  ServingDecision resolve(DiscoveryStrategy strategy, const NetworkModel& model, NodeId leaf,
                          uint32_t content);

  const std::vector<NodeId>& caching_nodes() const { return caching_nodes_; }
  uint64_t per_node_capacity() const { return per_node_capacity_; }
  bool has_cache(NodeId n) const { return cache_index_.count(n) != 0; }
  const LruCache& cache_at(NodeId n) const { return caches_[cache_index_.at(n)]; }
  const std::unordered_map<NodeId, NodeCacheStats>& stats() const { return stats_; }
  CachePlacement placement() const { return deployment_.placement; }

 private:
  LruCache* cache_ptr(NodeId n);
  void insert(NodeId n, uint32_t content, ServingDecision& decision);
  void drop_holder(uint32_t content, NodeId n);
  const std::vector<NodeId>& holders(uint32_t content) const;

  CacheDeployment deployment_;
  uint64_t object_bytes_ = 0;
  uint64_t per_node_capacity_ = 0;
  std::vector<NodeId> caching_nodes_;
  std::unordered_map<NodeId, size_t> cache_index_;
  std::vector<LruCache> caches_;
  std::unordered_map<uint32_t, std::vector<NodeId>> holders_;  // content -> sorted caching nodes
  std::unordered_map<NodeId, NodeCacheStats> stats_;
};

}  // namespace fiapower

#endif
