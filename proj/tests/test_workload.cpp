#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>

#include "fiapower/workload.hpp"

using namespace fiapower;

namespace {

std::map<RouterRole, RouterProfile> test_profiles() {
  return {{RouterRole::core, profiles::crs1_core()},
          {RouterRole::edge, profiles::ars1013_edge()},
          {RouterRole::leaf, profiles::ars1013_edge()}};
}

NetworkModel two_pop_model(uint64_t pop_a, uint64_t pop_b) {
  PopGraph g;
  g.pops = {{"a", "cityA", pop_a}, {"b", "cityB", pop_b}};
  g.links = {{0, 1, 40e9}};
  return attach_access_trees(g, {2, 2}, test_profiles());
}

}  // namespace

TEST_CASE("zipf sampler pmf") {
  ZipfSampler z({0.99, 1000});
  CHECK(z.pmf(0) / z.pmf(1) == doctest::Approx(std::pow(2.0, 0.99)).epsilon(1e-9));

  // uniform at exponent zero
  ZipfSampler u({0.0, 50});
  CHECK(u.pmf(0) == doctest::Approx(1.0 / 50).epsilon(1e-9));
  CHECK(u.pmf(49) == doctest::Approx(1.0 / 50).epsilon(1e-9));

  // degenerate support
  ZipfSampler one({0.99, 1});
  Rng rng(3);
  for (int i = 0; i < 10; ++i) CHECK(one.draw(rng) == 0);

  CHECK_THROWS_AS(ZipfSampler({0.99, 0}), std::invalid_argument);
}

TEST_CASE("zipf empirical frequencies match the pmf") {
  const uint32_t support = 10000;
  ZipfSampler z({0.99, support});
  Rng rng(20240312);
  const uint64_t n = 1000000;
  std::vector<uint64_t> counts(support, 0);
  for (uint64_t i = 0; i < n; ++i) counts[z.draw(rng)]++;
  for (uint32_t rank = 0; rank < 100; ++rank) {
    const double expected = z.pmf(rank) * static_cast<double>(n);
    CHECK(std::abs(counts[rank] - expected) / expected < 0.10);
  }
}

TEST_CASE("trace generation") {
  SUBCASE("single pop puts all events on its leaves") {
    PopGraph g;
    g.pops = {{"a", "x", 5}, {"b", "y", 0}};
    g.links = {{0, 1, 1e9}};
    NetworkModel m = attach_access_trees(g, {1, 1}, test_profiles());
    QueryTrace t = generate_trace(m, {100, 1000}, {0.99, 100}, 500, 11);
    REQUIRE(t.events.size() == 500);
    for (const auto& e : t.events) CHECK(m.nodes[e.leaf].pop == 0);
  }

  SUBCASE("population weighting") {
    NetworkModel m = two_pop_model(9000, 1000);
    QueryTrace t = generate_trace(m, {1000, 1000}, {0.99, 1000}, 100000, 17);
    uint64_t at_a = 0;
    for (const auto& e : t.events)
      if (m.nodes[e.leaf].pop == 0) ++at_a;
    const double share = static_cast<double>(at_a) / t.events.size();
    CHECK(share > 0.89);
    CHECK(share < 0.91);
  }

  SUBCASE("empty trace") {
    NetworkModel m = two_pop_model(1, 1);
    QueryTrace t = generate_trace(m, {10, 1000}, {0.99, 10}, 0, 3);
    CHECK(t.events.empty());
  }

  SUBCASE("zero population is rejected") {
    NetworkModel m = two_pop_model(0, 0);
    CHECK_THROWS_AS(generate_trace(m, {10, 1000}, {0.99, 10}, 10, 3), std::invalid_argument);
  }

  SUBCASE("reproducible: same inputs, byte-identical serialization") {
    NetworkModel m = two_pop_model(10, 20);
    QueryTrace a = generate_trace(m, {500, 2000}, {0.9, 500}, 5000, 77);
    QueryTrace b = generate_trace(m, {500, 2000}, {0.9, 500}, 5000, 77);
    std::ostringstream sa, sb;
    write_trace(a, sa);
    write_trace(b, sb);
    CHECK(sa.str() == sb.str());
    QueryTrace c = generate_trace(m, {500, 2000}, {0.9, 500}, 5000, 78);
    std::ostringstream sc;
    write_trace(c, sc);
    CHECK(sa.str() != sc.str());
  }
}

TEST_CASE("trace io") {
  NetworkModel m = two_pop_model(3, 4);
  QueryTrace t = generate_trace(m, {200, 1500}, {1.1, 200}, 1000, 5);

  SUBCASE("round trip") {
    std::ostringstream os;
    write_trace(t, os);
    std::istringstream is(os.str());
    QueryTrace back = read_trace(is);
    REQUIRE(back.events.size() == t.events.size());
    for (size_t i = 0; i < t.events.size(); ++i) {
      CHECK(back.events[i].leaf == t.events[i].leaf);
      CHECK(back.events[i].content == t.events[i].content);
    }
    CHECK(back.seed == t.seed);
    CHECK(back.zipf.exponent == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(back.catalog.content_bytes == 1500);
  }

  SUBCASE("header-only file is an empty trace") {
    std::istringstream is("# seed=1\n# alpha=0.99\n# contents=10\n# content_bytes=100\nseq,leaf_id,content_id\n");
    QueryTrace back = read_trace(is);
    CHECK(back.events.empty());
    CHECK(back.catalog.num_contents == 10);
  }

  SUBCASE("truncated line names its number") {
    std::istringstream is("# contents=10\n# content_bytes=100\nseq,leaf_id,content_id\n0,5\n");
    CHECK_THROWS_WITH_AS(read_trace(is), doctest::Contains("line 4"), std::invalid_argument);
  }
}
