#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <vector>

#include "fiapower/cache_sim.hpp"
#include "fiapower/rng.hpp"

using namespace fiapower;

namespace {

std::map<RouterRole, RouterProfile> test_profiles() {
  return {{RouterRole::core, profiles::crs1_core()},
          {RouterRole::edge, profiles::ars1013_edge()},
          {RouterRole::leaf, profiles::ars1013_edge()}};
}

// reference LRU, linear scan, same byte semantics
class RefLru {
 public:
  explicit RefLru(uint64_t cap) : cap_(cap) {}

  bool get(uint32_t id) {
    for (size_t i = 0; i < items_.size(); ++i) {
      if (items_[i].first == id) {
        auto item = items_[i];
        items_.erase(items_.begin() + static_cast<long>(i));
        items_.insert(items_.begin(), item);
        return true;
      }
    }
    return false;
  }

  LruCache::PutResult put(uint32_t id, uint64_t size) {
    LruCache::PutResult out;
    if (get(id)) {
      out.cached = true;
      return out;
    }
    if (size > cap_) return out;
    while (occ_ + size > cap_) {
      out.evicted.push_back(items_.back().first);
      occ_ -= items_.back().second;
      items_.pop_back();
    }
    items_.insert(items_.begin(), {id, size});
    occ_ += size;
    out.cached = true;
    return out;
  }

 private:
  uint64_t cap_;
  uint64_t occ_ = 0;
  std::vector<std::pair<uint32_t, uint64_t>> items_;
};

NetworkModel two_pop_model(AccessTreeSpec tree = {2, 2}) {
  PopGraph g;
  g.pops = {{"a", "x", 10}, {"b", "y", 10}};
  g.links = {{0, 1, 40e9}};
  return attach_access_trees(g, tree, test_profiles());
}

}  // namespace

TEST_CASE("lru basics") {
  LruCache c(2);
  CHECK_FALSE(c.get(1));  // empty cache misses

  // put A, put B, touch A, put C: B is the eviction victim
  c.put(1, 1);
  c.put(2, 1);
  CHECK(c.get(1));
  auto res = c.put(3, 1);
  REQUIRE(res.evicted.size() == 1);
  CHECK(res.evicted[0] == 2);

  for (int i = 0; i < 5; ++i) CHECK(c.get(1));
}

TEST_CASE("lru eviction order and uncacheable objects") {
  LruCache c(3);
  c.put(0, 1);
  c.put(1, 1);
  c.put(2, 1);
  auto res = c.put(3, 1);
  REQUIRE(res.evicted.size() == 1);
  CHECK(res.evicted[0] == 0);

  auto huge = c.put(9, 10);
  CHECK_FALSE(huge.cached);
  CHECK(c.entries() == 3);  // untouched

  // no eviction when there is room
  LruCache d(10);
  CHECK(d.put(1, 4).evicted.empty());
}

TEST_CASE("lru matches the reference on random operation streams") {
  Rng rng(555);
  for (int round = 0; round < 16; ++round) {
    const uint64_t cap = 1 + rng.next_below(16);
    LruCache fast(cap);
    RefLru ref(cap);
    const int ops = 100000 / 16;
    for (int i = 0; i < ops; ++i) {
      const uint32_t id = static_cast<uint32_t>(rng.next_below(32));
      if (rng.next_double() < 0.6) {
        CHECK(fast.get(id) == ref.get(id));
      } else {
        const uint64_t size = 1 + rng.next_below(std::min<uint64_t>(cap, 4));
        auto a = fast.put(id, size);
        auto b = ref.put(id, size);
        CHECK(a.cached == b.cached);
        REQUIRE(a.evicted.size() == b.evicted.size());
        for (size_t k = 0; k < a.evicted.size(); ++k) CHECK(a.evicted[k] == b.evicted[k]);
      }
      CHECK(fast.occupancy() <= cap);
    }
  }
}

TEST_CASE("cache placement budgets") {
  SUBCASE("100 pervasive nodes at c=0.05 hold 500 MB each") {
    PopGraph g = synth_pop_graph(25, 2.5, 8);
    NetworkModel m = attach_access_trees(g, {1, 3}, test_profiles());
    REQUIRE(m.nodes.size() == 100);
    Catalog cat{1000000, 1000000};
    CacheNetwork net(m, {CachePlacement::pervasive_all_routers, 0.05}, cat);
    CHECK(net.per_node_capacity() == 500000000ULL);
    CHECK(net.caching_nodes().size() == 100);
  }

  SUBCASE("zero budget deploys nothing") {
    NetworkModel m = two_pop_model();
    CacheNetwork net(m, {CachePlacement::edge_leaf_only, 0.0}, {1000, 1000});
    CHECK(net.caching_nodes().empty());
  }

  SUBCASE("full budget sums to the catalog size up to floor rounding") {
    NetworkModel m = two_pop_model({2, 3});
    Catalog cat{999, 1000};
    CacheNetwork net(m, {CachePlacement::edge_leaf_only, 1.0}, cat);
    const uint64_t total_budget = 999ULL * 1000ULL;
    const uint64_t nodes = net.caching_nodes().size();
    CHECK(net.per_node_capacity() == total_budget / nodes);
    CHECK(net.per_node_capacity() * nodes <= total_budget);
    CHECK(total_budget - net.per_node_capacity() * nodes < nodes);
  }

  SUBCASE("edge placement caches only leaves") {
    NetworkModel m = two_pop_model();
    CacheNetwork net(m, {CachePlacement::edge_leaf_only, 0.5}, {100, 1000});
    for (NodeId n : net.caching_nodes()) CHECK(m.nodes[n].role == RouterRole::leaf);
  }
}

TEST_CASE("query resolution") {
  NetworkModel m = two_pop_model();  // depth 2, arity 2: 4 leaves per pop
  Catalog cat{100, 1000};
  m.origin_of.assign(100, m.core_of_pop(1));  // all content lives at pop b

  const NodeId leaf_a = m.leaves_of_pop[0][0];

  SUBCASE("cold caches serve from the origin under every strategy") {
    for (auto [placement, strategy] :
         std::vector<std::pair<CachePlacement, DiscoveryStrategy>>{
             {CachePlacement::edge_leaf_only, DiscoveryStrategy::simple_edge},
             {CachePlacement::edge_leaf_only, DiscoveryStrategy::cooperative_edge},
             {CachePlacement::pervasive_all_routers, DiscoveryStrategy::on_path},
             {CachePlacement::pervasive_all_routers, DiscoveryStrategy::nearest_copy}}) {
      CacheNetwork net(m, {placement, 0.5}, cat);
      auto d = net.resolve(strategy, m, leaf_a, 7);
      CHECK_FALSE(d.from_cache);
      CHECK(d.serving_node == m.core_of_pop(1));
      CHECK(d.query_path.front() == leaf_a);
      CHECK(d.query_path.back() == m.core_of_pop(1));
    }
  }

  SUBCASE("on-path caching serves the repeat query at the leaf") {
    CacheNetwork net(m, {CachePlacement::pervasive_all_routers, 0.5}, cat);
    auto first = net.resolve(DiscoveryStrategy::on_path, m, leaf_a, 7);
    CHECK_FALSE(first.from_cache);
    // response installed the object at every router it traversed
    CHECK(std::find(first.inserted_at.begin(), first.inserted_at.end(), leaf_a) !=
          first.inserted_at.end());
    auto second = net.resolve(DiscoveryStrategy::on_path, m, leaf_a, 7);
    CHECK(second.from_cache);
    CHECK(second.local_leaf_hit);
    CHECK(second.serving_node == leaf_a);
    CHECK(second.query_path.size() == 1);
  }

  SUBCASE("edge hits stay at the leaf and insert only there") {
    CacheNetwork net(m, {CachePlacement::edge_leaf_only, 0.5}, cat);
    auto first = net.resolve(DiscoveryStrategy::simple_edge, m, leaf_a, 7);
    CHECK_FALSE(first.from_cache);
    REQUIRE(first.inserted_at.size() == 1);
    CHECK(first.inserted_at[0] == leaf_a);
    auto second = net.resolve(DiscoveryStrategy::simple_edge, m, leaf_a, 7);
    CHECK(second.local_leaf_hit);
  }

  SUBCASE("cooperative edge finds the nearest leaf copy") {
    CacheNetwork net(m, {CachePlacement::edge_leaf_only, 0.5}, cat);
    net.resolve(DiscoveryStrategy::cooperative_edge, m, leaf_a, 7);  // caches at leaf_a
    const NodeId sibling = m.leaves_of_pop[0][1];
    auto d = net.resolve(DiscoveryStrategy::cooperative_edge, m, sibling, 7);
    CHECK(d.from_cache);
    CHECK(d.serving_node == leaf_a);
    CHECK(d.query_path.front() == sibling);
    CHECK(d.query_path.back() == leaf_a);
    // remote hits install a copy at the requesting leaf only
    REQUIRE(d.inserted_at.size() == 1);
    CHECK(d.inserted_at[0] == sibling);
  }

  SUBCASE("nearest copy never travels farther than on-path") {
    CacheNetwork a(m, {CachePlacement::pervasive_all_routers, 0.5}, cat);
    CacheNetwork b(m, {CachePlacement::pervasive_all_routers, 0.5}, cat);
    Rng rng(99);
    for (int i = 0; i < 500; ++i) {
      const NodeId leaf = m.leaves_of_pop[rng.next_below(2)][rng.next_below(4)];
      const uint32_t content = static_cast<uint32_t>(rng.next_below(100));
      auto on_path = a.resolve(DiscoveryStrategy::on_path, m, leaf, content);
      auto nearest = b.resolve(DiscoveryStrategy::nearest_copy, m, leaf, content);
      CHECK(nearest.query_path.size() <= on_path.query_path.size());
      // neither walks beyond the direct origin route
      const uint32_t direct = m.hop_distance(leaf, m.origin_node(content));
      CHECK(on_path.query_path.size() - 1 <= direct);
    }
  }

  SUBCASE("strategies are tied to their placement") {
    CacheNetwork edge(m, {CachePlacement::edge_leaf_only, 0.5}, cat);
    CHECK_THROWS_AS(edge.resolve(DiscoveryStrategy::on_path, m, leaf_a, 1), std::invalid_argument);
    CacheNetwork perv(m, {CachePlacement::pervasive_all_routers, 0.5}, cat);
    CHECK_THROWS_AS(perv.resolve(DiscoveryStrategy::simple_edge, m, leaf_a, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("steady-state hit rate climbs toward one with a full budget") {
  PopGraph g;
  g.pops = {{"a", "x", 10}, {"b", "y", 10}};
  g.links = {{0, 1, 40e9}};
  NetworkModel m = attach_access_trees(g, {1, 1}, test_profiles());
  const uint32_t n_contents = 1000;
  Catalog cat{n_contents, 100};
  m.origin_of.assign(n_contents, m.core_of_pop(1));

  CacheNetwork net(m, {CachePlacement::pervasive_all_routers, 1.0}, cat);
  ZipfSampler zipf({1.5, n_contents});
  Rng rng(2024);
  const NodeId leaf = m.leaves_of_pop[0][0];
  uint64_t hits = 0, total = 0;
  for (int i = 0; i < 60000; ++i) {
    auto d = net.resolve(DiscoveryStrategy::on_path, m, leaf, zipf.draw(rng));
    if (i >= 20000) {
      ++total;
      hits += d.from_cache ? 1 : 0;
    }
  }
  CHECK(static_cast<double>(hits) / static_cast<double>(total) > 0.9);
}
