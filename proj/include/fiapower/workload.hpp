#ifndef FIAPOWER_WORKLOAD_HPP
#define FIAPOWER_WORKLOAD_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fiapower/rng.hpp"
#include "fiapower/topology.hpp"

namespace fiapower {

struct Catalog {
  uint32_t num_contents = 4000000;
  uint64_t content_bytes = 8100;

  void validate() const;
};

struct ZipfSpec {
  double exponent = 0.99;
  uint32_t support = 4000000;

  void validate() const;
};

// Rank-frequency sampler: P(rank i) = i^-a / H. Rank r maps to content id
// r-1, so smaller ids are more popular.
class ZipfSampler {
 public:
  explicit ZipfSampler(const ZipfSpec& spec);

  uint32_t draw(Rng& rng) const;  // content id in [0, support)
  double pmf(uint32_t content_id) const;

 private:
  ZipfSpec spec_;
  std::vector<double> cdf_;
};

struct QueryEvent {
  NodeId leaf = 0;
  uint32_t content = 0;
};

struct QueryTrace {
  std::vector<QueryEvent> events;
  uint64_t seed = 0;
  ZipfSpec zipf;
  Catalog catalog;
};

// PoPs weighted by population, leaf uniform within the PoP, content Zipf.
QueryTrace generate_trace(const NetworkModel& model, const Catalog& catalog, const ZipfSpec& spec,
                          uint64_t n_queries, uint64_t seed);

// CSV with '#'-prefixed key=value metadata, then seq,leaf_id,content_id.
void write_trace(const QueryTrace& trace, std::ostream& out);
QueryTrace read_trace(std::istream& in);

}  // namespace fiapower

#endif
