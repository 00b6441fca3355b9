#include "fiapower/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fiapower {

void Catalog::validate() const {
  if (num_contents < 1) throw std::invalid_argument("Catalog: need at least one content");
  if (content_bytes == 0) throw std::invalid_argument("Catalog: content size must be > 0");
}

void ZipfSpec::validate() const {
  if (exponent < 0.0) throw std::invalid_argument("ZipfSpec: exponent must be >= 0");
  if (support < 1) throw std::invalid_argument("ZipfSpec: empty support");
}

ZipfSampler::ZipfSampler(const ZipfSpec& spec) : spec_(spec) {
  spec.validate();
  cdf_.resize(spec.support);
  double acc = 0.0;
  for (uint32_t i = 0; i < spec.support; ++i) {
    acc += std::pow(static_cast<double>(i + 1), -spec.exponent);
    cdf_[i] = acc;
  }
  const double norm = 1.0 / acc;
  for (auto& v : cdf_) v *= norm;
  cdf_.back() = 1.0;
}

uint32_t ZipfSampler::draw(Rng& rng) const {
  const double u = rng.next_double();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<uint32_t>(it - cdf_.begin());
}

double ZipfSampler::pmf(uint32_t content_id) const {
  if (content_id >= spec_.support) return 0.0;
  const double prev = content_id == 0 ? 0.0 : cdf_[content_id - 1];
  return cdf_[content_id] - prev;
}

QueryTrace generate_trace(const NetworkModel& model, const Catalog& catalog, const ZipfSpec& spec,
                          uint64_t n_queries, uint64_t seed) {
  catalog.validate();
  if (spec.support != catalog.num_contents)
    throw std::invalid_argument("generate_trace: zipf support must equal catalog size");
  if (model.leaves_of_pop.empty()) throw std::invalid_argument("generate_trace: model has no leaves");

  // population-weighted PoP cdf
  std::vector<double> pop_cdf(model.num_pops());
  double total = 0.0;
  for (size_t p = 0; p < model.num_pops(); ++p) {
    total += static_cast<double>(model.pops[p].population);
    pop_cdf[p] = total;
  }
  if (total <= 0.0) throw std::invalid_argument("generate_trace: zero total population");
  for (auto& v : pop_cdf) v /= total;
  pop_cdf.back() = 1.0;

  ZipfSampler zipf(spec);
  Rng rng(mix_seed(seed, 0x74726163ULL));
  QueryTrace trace;
  trace.seed = seed;
  trace.zipf = spec;
  trace.catalog = catalog;
  trace.events.reserve(n_queries);
  for (uint64_t i = 0; i < n_queries; ++i) {
    const double u = rng.next_double();
    auto it = std::upper_bound(pop_cdf.begin(), pop_cdf.end(), u);
    if (it == pop_cdf.end()) --it;
    const auto pop = static_cast<uint32_t>(it - pop_cdf.begin());
    const auto& leaves = model.leaves_of_pop[pop];
    const NodeId leaf = leaves[rng.next_below(leaves.size())];
    trace.events.push_back({leaf, zipf.draw(rng)});
  }
  return trace;
}

void write_trace(const QueryTrace& trace, std::ostream& out) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "# seed=%llu\n", static_cast<unsigned long long>(trace.seed));
  out << buf;
  std::snprintf(buf, sizeof buf, "# alpha=%.17g\n", trace.zipf.exponent);
  out << buf;
  std::snprintf(buf, sizeof buf, "# contents=%u\n", trace.zipf.support);
  out << buf;
  std::snprintf(buf, sizeof buf, "# content_bytes=%llu\n",
                static_cast<unsigned long long>(trace.catalog.content_bytes));
  out << buf;
  out << "seq,leaf_id,content_id\n";
  uint64_t seq = 0;
  for (const auto& e : trace.events) {
    std::snprintf(buf, sizeof buf, "%llu,%u,%u\n", static_cast<unsigned long long>(seq++), e.leaf,
                  e.content);
    out << buf;
  }
}

QueryTrace read_trace(std::istream& in) {
  QueryTrace trace;
  trace.catalog.num_contents = 0;
  std::string line;
  size_t lineno = 0;
  bool header_seen = false;
  auto parse_error = [&](const std::string& what) {
    return std::invalid_argument("trace line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      std::string key = body.substr(0, eq);
      key.erase(std::remove(key.begin(), key.end(), ' '), key.end());
      const std::string val = body.substr(eq + 1);
      try {
        if (key == "seed") trace.seed = std::stoull(val);
        else if (key == "alpha") trace.zipf.exponent = std::stod(val);
        else if (key == "contents") {
          trace.zipf.support = static_cast<uint32_t>(std::stoul(val));
          trace.catalog.num_contents = trace.zipf.support;
        } else if (key == "content_bytes") trace.catalog.content_bytes = std::stoull(val);
      } catch (const std::exception&) {
        throw parse_error("bad metadata value for " + key);
      }
      continue;
    }
    if (!header_seen) {
      if (line != "seq,leaf_id,content_id") throw parse_error("expected csv header");
      header_seen = true;
      continue;
    }
    uint64_t seq = 0;
    QueryEvent e;
    if (std::sscanf(line.c_str(), "%llu,%u,%u", reinterpret_cast<unsigned long long*>(&seq), &e.leaf,
                    &e.content) != 3)
      throw parse_error("expected seq,leaf_id,content_id");
    if (seq != trace.events.size()) throw parse_error("sequence number out of order");
    trace.events.push_back(e);
  }
  if (!header_seen) throw std::invalid_argument("trace: missing csv header");
  if (trace.catalog.num_contents == 0) throw std::invalid_argument("trace: missing contents metadata");
  return trace;
}

}  // namespace fiapower
