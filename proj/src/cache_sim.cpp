#include "fiapower/cache_sim.hpp"

#include <algorithm>
#include <stdexcept>

namespace fiapower {

bool LruCache::get(uint32_t id) {
  auto it = index_.find(id);
  if (it == index_.end()) return false;
  lru_.splice(lru_.begin(), lru_, it->second);
  return true;
}

LruCache::PutResult LruCache::put(uint32_t id, uint64_t size) {
  PutResult out;
  auto it = index_.find(id);
  if (it != index_.end()) {  // refresh only
    lru_.splice(lru_.begin(), lru_, it->second);
    out.cached = true;
    return out;
  }
  if (size > capacity_) return out;  // uncacheable, reported to the caller
  while (occupancy_ + size > capacity_) {
    const Entry& victim = lru_.back();
    out.evicted.push_back(victim.id);
    occupancy_ -= victim.size;
    index_.erase(victim.id);
    lru_.pop_back();
  }
  lru_.push_front({id, size});
  index_[id] = lru_.begin();
  occupancy_ += size;
  out.cached = true;
  return out;
}

void CacheDeployment::validate() const {
  if (budget_ratio < 0.0 || budget_ratio > 1.0)
    throw std::invalid_argument("CacheDeployment: budget_ratio must be in [0,1]");
}

CacheNetwork::CacheNetwork(const NetworkModel& model, const CacheDeployment& deployment,
                           const Catalog& catalog)
    : deployment_(deployment), object_bytes_(catalog.content_bytes) {
  deployment.validate();
  catalog.validate();
  if (deployment.placement == CachePlacement::none) return;

  if (deployment.placement == CachePlacement::edge_leaf_only) {
    for (const auto& leaves : model.leaves_of_pop)
      caching_nodes_.insert(caching_nodes_.end(), leaves.begin(), leaves.end());
  } else {
    caching_nodes_.resize(model.nodes.size());
    for (NodeId n = 0; n < model.nodes.size(); ++n) caching_nodes_[n] = n;
  }
  std::sort(caching_nodes_.begin(), caching_nodes_.end());

  const double total_budget =
      deployment.budget_ratio * static_cast<double>(catalog.num_contents) *
      static_cast<double>(catalog.content_bytes);
  per_node_capacity_ = static_cast<uint64_t>(total_budget / static_cast<double>(caching_nodes_.size()));
  if (per_node_capacity_ == 0) {
    caching_nodes_.clear();  // a zero budget deploys nothing
    return;
  }
  caches_.reserve(caching_nodes_.size());
  for (NodeId n : caching_nodes_) {
    cache_index_[n] = caches_.size();
    caches_.emplace_back(per_node_capacity_);
    stats_[n];
  }
}

LruCache* CacheNetwork::cache_ptr(NodeId n) {
  auto it = cache_index_.find(n);
  return it == cache_index_.end() ? nullptr : &caches_[it->second];
}

const std::vector<NodeId>& CacheNetwork::holders(uint32_t content) const {
  static const std::vector<NodeId> kEmpty;
  auto it = holders_.find(content);
  return it == holders_.end() ? kEmpty : it->second;
}

void CacheNetwork::drop_holder(uint32_t content, NodeId n) {
  auto it = holders_.find(content);
  if (it == holders_.end()) return;
  auto& h = it->second;
  auto pos = std::lower_bound(h.begin(), h.end(), n);
  if (pos != h.end() && *pos == n) h.erase(pos);
  if (h.empty()) holders_.erase(it);
}

void CacheNetwork::insert(NodeId n, uint32_t content, ServingDecision& decision) {
  LruCache* cache = cache_ptr(n);
  if (cache == nullptr) return;
  if (cache->contains(content)) {
    cache->put(content, object_bytes_);  // refresh
    return;
  }
  auto res = cache->put(content, object_bytes_);
  if (!res.cached) {
    ++decision.uncacheable;
    return;
  }
  for (uint32_t evicted : res.evicted) {
    drop_holder(evicted, n);
    ++stats_[n].evictions;
  }
  auto& h = holders_[content];
  h.insert(std::lower_bound(h.begin(), h.end(), n), n);
  decision.inserted_at.push_back(n);
}

ServingDecision CacheNetwork::resolve(DiscoveryStrategy strategy, const NetworkModel& model,
                                      NodeId leaf, uint32_t content) {
  if (model.nodes[leaf].role != RouterRole::leaf)
    throw std::invalid_argument("resolve: queries must enter at leaf routers");
  const bool edge_strategy =
      strategy == DiscoveryStrategy::simple_edge || strategy == DiscoveryStrategy::cooperative_edge;
  if (deployment_.placement == CachePlacement::edge_leaf_only && !edge_strategy)
    throw std::invalid_argument("resolve: on-path strategies need pervasive placement");
  if (deployment_.placement == CachePlacement::pervasive_all_routers && edge_strategy)
    throw std::invalid_argument("resolve: edge strategies need edge placement");
  if (deployment_.placement == CachePlacement::none)
    throw std::invalid_argument("resolve: no caches deployed");

  const NodeId origin = model.origin_node(content);
  ServingDecision d;

  auto serve_from = [&](NodeId node, bool cache_hit) {
    d.serving_node = node;
    d.from_cache = cache_hit;
    if (cache_hit) {
      ++stats_[node].hits;
      stats_[node].bytes_served += object_bytes_;
    }
  };

  switch (strategy) {
    case DiscoveryStrategy::simple_edge:
    case DiscoveryStrategy::cooperative_edge: {
      LruCache* local = cache_ptr(leaf);
      if (local != nullptr && local->get(content)) {
        serve_from(leaf, true);
        d.local_leaf_hit = true;
        d.query_path = {leaf};
        return d;
      }
      if (local != nullptr) ++stats_[leaf].misses;
      NodeId source = origin;
      bool cache_hit = false;
      if (strategy == DiscoveryStrategy::cooperative_edge) {
        // redirect to a leaf copy only when it is closer than the origin
        // server; ties at equal distance go to the origin
        uint32_t best_dist = model.hop_distance(leaf, origin);
        for (NodeId holder : holders(content)) {  // sorted: ties go to smaller id
          const uint32_t dist = model.hop_distance(leaf, holder);
          if (dist < best_dist) {
            source = holder;
            best_dist = dist;
            cache_hit = true;
          }
        }
      }
      if (cache_hit) cache_ptr(source)->get(content);  // refresh at the serving cache
      serve_from(source, cache_hit);
      d.query_path = model.shortest_path(leaf, source);
      insert(leaf, content, d);
      return d;
    }

    case DiscoveryStrategy::on_path: {
      const auto path = model.shortest_path(leaf, origin);
      size_t hit_index = path.size() - 1;
      bool cache_hit = false;
      for (size_t i = 0; i + 1 < path.size(); ++i) {
        LruCache* cache = cache_ptr(path[i]);
        if (cache == nullptr) continue;
        if (cache->get(content)) {
          hit_index = i;
          cache_hit = true;
          break;
        }
        ++stats_[path[i]].misses;
      }
      serve_from(path[hit_index], cache_hit);
      d.local_leaf_hit = cache_hit && hit_index == 0;
      d.query_path.assign(path.begin(), path.begin() + hit_index + 1);
      for (size_t i = hit_index; i-- > 0;) insert(path[i], content, d);
      return d;
    }

    case DiscoveryStrategy::nearest_copy:
    default: {
      // candidates are every holder plus the origin; minimum distance wins,
      // equal distances go to the smallest node id
      NodeId best = origin;
      uint32_t best_dist = model.hop_distance(leaf, origin);
      bool cache_hit = false;
      for (NodeId holder : holders(content)) {
        const uint32_t dist = model.hop_distance(leaf, holder);
        if (dist < best_dist || (dist == best_dist && holder < best)) {
          best = holder;
          best_dist = dist;
          cache_hit = true;
        }
      }
      if (cache_hit) cache_ptr(best)->get(content);
      serve_from(best, cache_hit);
      d.local_leaf_hit = cache_hit && best == leaf;
      d.query_path = model.shortest_path(leaf, best);
      for (size_t i = d.query_path.size() - 1; i-- > 0;) insert(d.query_path[i], content, d);
      return d;
    }
  }
}

}  // namespace fiapower
