#ifndef FIAPOWER_SIMULATOR_HPP
#define FIAPOWER_SIMULATOR_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fiapower/cache_sim.hpp"
#include "fiapower/power_models.hpp"
#include "fiapower/topology.hpp"
#include "fiapower/workload.hpp"

namespace fiapower {

// Header growth model. Packet-carried-state schemes append per-AS-hop
// forwarding proofs, so their headers depend on the path.
struct HeaderModel {
  uint32_t fixed_bytes = 20;
  uint32_t per_hop_bytes = 0;
  uint32_t per_as_hop_bytes = 0;

  uint64_t bytes(uint32_t router_hops, uint32_t as_hops) const {
    return fixed_bytes + static_cast<uint64_t>(per_hop_bytes) * router_hops +
           static_cast<uint64_t>(per_as_hop_bytes) * as_hops;
  }
};

enum class ForwardingKind { rtl_tcam, rtl_lpmbf, pcs };

struct ArchSpec {
  ArchKind kind = ArchKind::IP;
  ForwardingKind forwarding = ForwardingKind::rtl_tcam;
  HeaderModel header;
  CachePlacement caching_mode = CachePlacement::edge_leaf_only;  // placement this arch may use
  ForwardingModels models;
};

// Built-in architecture profiles with default headers and hardware.
ArchSpec default_arch(ArchKind kind);

struct PacketizationSpec {
  uint64_t payload_bytes = 1350;
  uint64_t query_bytes = 40;

  void validate() const;
};

uint64_t packetize(uint64_t content_bytes, const PacketizationSpec& spec);

uint64_t header_bytes(const ArchSpec& arch, uint32_t router_hops, uint32_t as_hops);

struct SimParams {
  double utilization = 0.18;
  double reference_lookup_rate = 1.0e6;  // amortizes table power into per-packet energy
  PacketizationSpec packets;
  double aggregate_qps = 135.0;  // converts static watts into per-run joules
  double warmup_fraction = 0.2;
  EdgeCacheModel edge_cache;
  bool edge_static_power = true;  // charge edge appliances their standby draw
  KvScheme kv = kv::silt();
  StorageTech pervasive_index = storage::sram();
  StorageTech pervasive_storage = storage::dram();
  StorageTech edge_index = storage::dram();
  StorageTech edge_storage = storage::dram();

  void validate() const;
};

struct EnergyReport {
  struct Totals {
    double baseline_j = 0.0;
    double forwarding_j = 0.0;
    double cache_j = 0.0;
    double transmission_j = 0.0;
    double total() const { return baseline_j + forwarding_j + cache_j + transmission_j; }
  };

  // per node, indexed by NodeId
  std::vector<double> baseline_j;
  std::vector<double> forwarding_j;
  std::vector<double> cache_j;
  std::vector<double> transmission_j;
  std::vector<uint64_t> bits_tx;
  std::vector<uint64_t> packets_tx;

  Totals totals;
  uint64_t total_bits_tx = 0;
  uint64_t queries_accounted = 0;
  uint64_t cache_hits = 0;
  uint64_t uncacheable = 0;
  double hit_rate = 0.0;
  double duration_s = 0.0;
  uint64_t seed = 0;
  uint64_t config_hash = 0;
  std::string arch;
  std::string deployment;
  std::string strategy;

  void write_json(std::ostream& out) const;
};

// Replays a trace against one (architecture, deployment, strategy) choice.
// Cache state is updated for every query; energy is accounted only after the
// warm-up prefix.
EnergyReport simulate(const NetworkModel& model, const QueryTrace& trace, const ArchSpec& arch,
                      const CacheDeployment& deployment, DiscoveryStrategy strategy,
                      const SimParams& params);

// report.total / baseline.total for each report
std::vector<double> normalize(const std::vector<EnergyReport>& reports, const EnergyReport& baseline);

}  // namespace fiapower

#endif
