#include "fiapower/simulator.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fiapower {

ArchSpec default_arch(ArchKind kind) {
  ArchSpec a;
  a.kind = kind;
  switch (kind) {
    case ArchKind::IP:
      a.forwarding = ForwardingKind::rtl_tcam;
      a.header = {20, 0, 0};
      a.caching_mode = CachePlacement::edge_leaf_only;
      break;
    case ArchKind::NDN:
      a.forwarding = ForwardingKind::rtl_lpmbf;
      a.header = {48, 0, 0};  // name-bearing header
      a.caching_mode = CachePlacement::pervasive_all_routers;
      break;
    case ArchKind::NEBULA:
      a.forwarding = ForwardingKind::pcs;
      a.header = {16, 0, 42};  // consent + provenance proofs per AS
      a.caching_mode = CachePlacement::edge_leaf_only;
      break;
    case ArchKind::SCION:
      a.forwarding = ForwardingKind::pcs;
      a.header = {8, 0, 8};  // one hop field per AS
      a.caching_mode = CachePlacement::edge_leaf_only;
      break;
  }
  return a;
}

void PacketizationSpec::validate() const {
  if (payload_bytes == 0) throw std::invalid_argument("PacketizationSpec: payload must be > 0");
}

uint64_t packetize(uint64_t content_bytes, const PacketizationSpec& spec) {
  spec.validate();
  if (content_bytes == 0) throw std::invalid_argument("packetize: empty content");
  return (content_bytes + spec.payload_bytes - 1) / spec.payload_bytes;
}

uint64_t header_bytes(const ArchSpec& arch, uint32_t router_hops, uint32_t as_hops) {
  return arch.header.bytes(router_hops, as_hops);
}

void SimParams::validate() const {
  if (utilization <= 0.0 || utilization > 1.0)
    throw std::invalid_argument("SimParams: utilization must be in (0,1]");
  if (reference_lookup_rate <= 0.0)
    throw std::invalid_argument("SimParams: reference_lookup_rate must be > 0");
  if (aggregate_qps <= 0.0) throw std::invalid_argument("SimParams: aggregate_qps must be > 0");
  if (warmup_fraction < 0.0 || warmup_fraction >= 1.0)
    throw std::invalid_argument("SimParams: warmup_fraction must be in [0,1)");
  packets.validate();
}

namespace {

struct PerRole {
  double idle_per_bit = 0.0;  // idle watts amortized over carried bits
  double marg_per_bit = 0.0;  // slope of the affine power curve
};

uint32_t count_as_hops(const NetworkModel& model, const std::vector<NodeId>& path) {
  uint32_t as_hops = 0;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (model.is_core(path[i]) && model.is_core(path[i + 1])) ++as_hops;
  return as_hops;
}

}  // namespace

EnergyReport simulate(const NetworkModel& model, const QueryTrace& trace, const ArchSpec& arch,
                      const CacheDeployment& deployment, DiscoveryStrategy strategy,
                      const SimParams& params) {
  params.validate();
  deployment.validate();
  if (deployment.placement != CachePlacement::none && deployment.placement != arch.caching_mode) {
    std::ostringstream os;
    os << "simulate: " << to_string(arch.kind) << " does not support " << to_string(deployment.placement)
       << " caching";
    throw std::invalid_argument(os.str());
  }

  const size_t n_nodes = model.nodes.size();
  EnergyReport rep;
  rep.baseline_j.assign(n_nodes, 0.0);
  rep.forwarding_j.assign(n_nodes, 0.0);
  rep.cache_j.assign(n_nodes, 0.0);
  rep.transmission_j.assign(n_nodes, 0.0);
  rep.bits_tx.assign(n_nodes, 0);
  rep.packets_tx.assign(n_nodes, 0);
  rep.seed = trace.seed;
  rep.arch = to_string(arch.kind);
  rep.deployment = to_string(deployment.placement);
  rep.strategy = deployment.placement == CachePlacement::none ? "-" : to_string(strategy);

  PerRole per_role[3];
  for (RouterRole role : {RouterRole::core, RouterRole::edge, RouterRole::leaf}) {
    const RouterProfile& prof = model.profile_of(role);
    prof.validate();
    const double carried = params.utilization * prof.max_throughput_bps;
    per_role[static_cast<int>(role)] = {prof.idle_w / carried,
                                        (prof.nameplate_w - prof.idle_w) / prof.max_throughput_bps};
  }

  // forwarding energy per packet per hop
  const bool pcs = arch.forwarding == ForwardingKind::pcs;
  double rtl_pkt_j = 0.0;
  double pcs_verif_j = 0.0;
  if (pcs) {
    pcs_verif_j = pcs_verif_energy(arch.kind == ArchKind::NEBULA ? arch.models.nebula
                                                                 : arch.models.scion);
  } else {
    rtl_pkt_j = fwd_power(arch.kind, params.reference_lookup_rate, arch.models) /
                params.reference_lookup_rate;
  }

  const uint64_t content_bytes = trace.catalog.content_bytes;
  const uint64_t content_bits = content_bytes * 8;
  const uint64_t n_resp_packets = packetize(content_bytes, params.packets);

  CacheNetwork caches(model, deployment, trace.catalog);
  const bool caching = deployment.placement != CachePlacement::none && !caches.caching_nodes().empty();

  const uint64_t warmup = static_cast<uint64_t>(std::floor(
      static_cast<double>(trace.events.size()) * params.warmup_fraction));

  // transmit `bits` of `packets` packets along consecutive hops of `path`
  auto account_path = [&](const std::vector<NodeId>& path, uint64_t bits, uint64_t packets) {
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      const NodeId tx = path[i];
      const int role = static_cast<int>(model.nodes[tx].role);
      rep.baseline_j[tx] += static_cast<double>(bits) * per_role[role].idle_per_bit;
      rep.transmission_j[tx] += static_cast<double>(bits) * per_role[role].marg_per_bit;
      rep.bits_tx[tx] += bits;
      rep.packets_tx[tx] += packets;
      if (pcs) {
        if (model.is_core(tx) && model.is_core(path[i + 1]))
          rep.forwarding_j[tx] += static_cast<double>(packets) * pcs_verif_j;
      } else {
        rep.forwarding_j[tx] += static_cast<double>(packets) * rtl_pkt_j;
      }
    }
  };

  // a leaf cache hit is still pushed through the leaf router once
  auto account_local_serve = [&](NodeId leaf, uint64_t bits, uint64_t packets) {
    const int role = static_cast<int>(model.nodes[leaf].role);
    rep.baseline_j[leaf] += static_cast<double>(bits) * per_role[role].idle_per_bit;
    rep.transmission_j[leaf] += static_cast<double>(bits) * per_role[role].marg_per_bit;
    rep.bits_tx[leaf] += bits;
    rep.packets_tx[leaf] += packets;
    if (!pcs) rep.forwarding_j[leaf] += static_cast<double>(packets) * rtl_pkt_j;
  };

  uint64_t index = 0;
  for (const auto& ev : trace.events) {
    const bool accounted = index++ >= warmup;

    ServingDecision decision;
    if (caching) {
      decision = caches.resolve(strategy, model, ev.leaf, ev.content);
    } else {
      decision.serving_node = model.origin_node(ev.content);
      decision.from_cache = false;
      decision.query_path = model.shortest_path(ev.leaf, decision.serving_node);
    }
    if (!accounted) continue;
    ++rep.queries_accounted;
    if (decision.from_cache) ++rep.cache_hits;
    rep.uncacheable += decision.uncacheable;

    const bool edge_placement = deployment.placement == CachePlacement::edge_leaf_only;

    if (decision.from_cache && decision.local_leaf_hit) {
      if (edge_placement) {
        const uint64_t hdr = header_bytes(arch, 0, 0);
        account_local_serve(ev.leaf, content_bits + n_resp_packets * hdr * 8, n_resp_packets);
        rep.cache_j[ev.leaf] +=
            static_cast<double>(content_bits) * params.edge_cache.serve_j_per_bit;
      }
      // a pervasive hit at the requesting router moves nothing
      continue;
    }

    const auto& qpath = decision.query_path;
    const uint32_t router_hops = static_cast<uint32_t>(qpath.size() - 1);
    const uint32_t as_hops = count_as_hops(model, qpath);
    const uint64_t hdr = header_bytes(arch, router_hops, as_hops);
    const uint64_t query_bits = (params.packets.query_bytes + hdr) * 8;
    const uint64_t resp_bits = content_bits + n_resp_packets * hdr * 8;

    account_path(qpath, query_bits, 1);
    std::vector<NodeId> rpath(qpath.rbegin(), qpath.rend());
    account_path(rpath, resp_bits, n_resp_packets);

    if (decision.from_cache && edge_placement) {
      rep.cache_j[decision.serving_node] +=
          static_cast<double>(content_bits) * params.edge_cache.serve_j_per_bit;
    }
  }

  // standby draw of deployed caches over the accounted interval
  rep.duration_s = static_cast<double>(rep.queries_accounted) / params.aggregate_qps;
  if (caching) {
    const bool edge_placement = deployment.placement == CachePlacement::edge_leaf_only;
    if (!edge_placement || params.edge_static_power) {
      CacheHardware hw;
      hw.index_tech = edge_placement ? params.edge_index : params.pervasive_index;
      hw.storage_tech = edge_placement ? params.edge_storage : params.pervasive_storage;
      hw.storage_capacity_bits = static_cast<double>(caches.per_node_capacity()) * 8.0;
      hw.object_bytes = static_cast<double>(content_bytes);
      const double watts = cache_power(params.kv, hw);
      for (NodeId n : caches.caching_nodes()) rep.cache_j[n] += watts * rep.duration_s;
    }
  }

  for (size_t n = 0; n < n_nodes; ++n) {
    rep.totals.baseline_j += rep.baseline_j[n];
    rep.totals.forwarding_j += rep.forwarding_j[n];
    rep.totals.cache_j += rep.cache_j[n];
    rep.totals.transmission_j += rep.transmission_j[n];
    rep.total_bits_tx += rep.bits_tx[n];
  }
  rep.hit_rate = rep.queries_accounted == 0
                     ? 0.0
                     : static_cast<double>(rep.cache_hits) / static_cast<double>(rep.queries_accounted);
  return rep;
}

void EnergyReport::write_json(std::ostream& out) const {
  nlohmann::json j;
  j["arch"] = arch;
  j["deployment"] = deployment;
  j["strategy"] = strategy;
  j["seed"] = seed;
  j["config_hash"] = config_hash;
  j["duration_s"] = duration_s;
  j["queries_accounted"] = queries_accounted;
  j["cache_hits"] = cache_hits;
  j["hit_rate"] = hit_rate;
  j["uncacheable"] = uncacheable;
  j["total_bits_tx"] = total_bits_tx;
  j["totals"] = {{"baseline_j", totals.baseline_j},
                 {"forwarding_j", totals.forwarding_j},
                 {"cache_j", totals.cache_j},
                 {"transmission_j", totals.transmission_j},
                 {"total_j", totals.total()}};
  j["per_node"] = {{"baseline_j", baseline_j},
                   {"forwarding_j", forwarding_j},
                   {"cache_j", cache_j},
                   {"transmission_j", transmission_j},
                   {"bits_tx", bits_tx},
                   {"packets_tx", packets_tx}};
  out << j.dump(2) << "\n";
}

std::vector<double> normalize(const std::vector<EnergyReport>& reports, const EnergyReport& baseline) {
  const double base = baseline.totals.total();
  if (base <= 0.0) throw std::invalid_argument("normalize: baseline total must be > 0");
  std::vector<double> out;
  out.reserve(reports.size());
  for (const auto& r : reports) out.push_back(r.totals.total() / base);
  return out;
}

}  // namespace fiapower
