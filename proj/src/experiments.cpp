#include "fiapower/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fiapower {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min<int>(jobs, static_cast<int>(n));
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

KvScheme kv_by_name(const std::string& name) {
  if (name == "silt") return kv::silt();
  if (name == "hc_setmem") return kv::hc_setmem();
  if (name == "hc_loglru") return kv::hc_loglru();
  throw std::invalid_argument("unknown kv scheme: " + name);
}

RunRow make_row(const EnergyReport& rep, double c, double alpha, const std::string& run_id) {
  RunRow row;
  row.arch = rep.arch;
  row.deployment = rep.deployment;
  row.strategy = rep.strategy;
  row.c = c;
  row.alpha = alpha;
  row.total_j = rep.totals.total();
  row.base_j = rep.totals.baseline_j;
  row.fwd_j = rep.totals.forwarding_j;
  row.cache_j = rep.totals.cache_j;
  row.tx_j = rep.totals.transmission_j;
  row.hit_rate = rep.hit_rate;
  row.run_id = run_id;
  return row;
}

struct SimJob {
  ArchKind kind;
  CachePlacement placement;
  DiscoveryStrategy strategy = DiscoveryStrategy::simple_edge;
  double c = 0.0;
  double alpha = 0.99;
  const NetworkModel* model = nullptr;
  const QueryTrace* trace = nullptr;
  std::string run_id = "-";
};

SimSuite run_jobs(const ExperimentConfig& cfg, const std::vector<SimJob>& jobs) {
  SimSuite suite;
  suite.rows.resize(jobs.size());
  suite.reports.resize(jobs.size());
  const SimParams params = cfg.sim_params();
  const uint64_t hash = cfg.config_hash();
  parallel_for(jobs.size(), cfg.jobs, [&](size_t i) {
    const SimJob& j = jobs[i];
    CacheDeployment dep{j.placement, j.placement == CachePlacement::none ? 0.0 : j.c};
    EnergyReport rep = simulate(*j.model, *j.trace, cfg.arch(j.kind), dep, j.strategy, params);
    rep.config_hash = hash;
    suite.rows[i] = make_row(rep, dep.budget_ratio, j.alpha, j.run_id);
    suite.reports[i] = std::move(rep);
  });
  return suite;
}

void normalize_rows(std::vector<RunRow>& rows, const std::function<bool(const RunRow&)>& is_baseline,
                    const std::function<bool(const RunRow&, const RunRow&)>& same_group) {
  for (auto& row : rows) {
    const RunRow* base = nullptr;
    for (const auto& cand : rows)
      if (is_baseline(cand) && same_group(row, cand)) {
        base = &cand;
        break;
      }
    if (base == nullptr || base->total_j <= 0.0)
      throw std::runtime_error("normalize_rows: missing or zero baseline");
    row.normalized = row.total_j / base->total_j;
  }
}

void write_svg_series(const std::string& path, const std::vector<double>& xs,
                      const std::vector<std::string>& names,
                      const std::vector<std::vector<double>>& series, const std::string& x_label,
                      bool log_y) {
  const double W = 720, H = 420, ml = 70, mr = 160, mt = 20, mb = 50;
  double xmin = xs.front(), xmax = xs.back();
  double ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (double v : s) {
      double y = log_y ? std::log10(std::max(v, 1e-12)) : v;
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (ymax <= ymin) ymax = ymin + 1.0;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double v) {
    double y = log_y ? std::log10(std::max(v, 1e-12)) : v;
    return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
  };
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
  std::ofstream out(path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
      << "' stroke='black'/>\n";
  out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
      << "' stroke='black'/>\n";
  out << "<text x='" << (W - mr + ml) / 2 << "' y='" << H - 12 << "' text-anchor='middle'>" << x_label
      << "</text>\n";
  for (size_t s = 0; s < series.size(); ++s) {
    out << "<polyline fill='none' stroke='" << colors[s % 6] << "' stroke-width='2' points='";
    for (size_t i = 0; i < xs.size(); ++i) out << px(xs[i]) << "," << py(series[s][i]) << " ";
    out << "'/>\n";
    out << "<text x='" << W - mr + 8 << "' y='" << mt + 16 + 18 * s << "' fill='" << colors[s % 6]
        << "'>" << names[s] << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace

ExperimentConfig ExperimentConfig::from(const KeyValueConfig& kv) {
  static const std::set<std::string> known = {
      "out_dir", "seed", "jobs", "svg",
      "topology.file", "topology.n_pops", "topology.avg_degree", "topology.n_topologies",
      "topology.tree_depth", "topology.tree_arity", "topology.pop_log_mean",
      "topology.pop_log_sigma", "topology.core_link_bps",
      "profiles.idle_fraction", "profiles.leaf_nameplate_w", "profiles.leaf_max_bps",
      "workload.num_contents", "workload.content_bytes", "workload.zipf_alpha",
      "workload.n_queries", "workload.warmup_fraction", "workload.aggregate_qps",
      "sim.utilization", "sim.reference_lookup_rate", "sim.payload_bytes", "sim.query_bytes",
      "sim.budget_ratio", "sim.edge_static_power", "sim.kv_scheme", "sim.edge_serve_j_per_bit",
      "hw.bloom_filters", "hw.ndn_fib_entries", "hw.ndn_sram_bits", "hw.ndn_fib_entry_bits",
      "hw.ndn_load_factor", "hw.hash_energy_j", "hw.dram_access_fraction", "hw.ip_fib_entries",
      "hw.ip_entry_bits", "hw.as_path_len", "hw.aes_energy_j",
      "hdr.ip_fixed", "hdr.ndn_fixed", "hdr.scion_fixed", "hdr.scion_per_as", "hdr.nebula_fixed",
      "hdr.nebula_per_as",
      "fig3.gbps", "fig3.packet_bytes", "fig3.ndn_fibs",
      "fig6.core_cache_bytes", "fig6.edge_cache_bytes", "fig6.object_bytes",
      "sweep.budget_grid", "sweep.zipf_grid",
  };
  for (const auto& [key, value] : kv.values())
    if (!known.count(key)) throw std::invalid_argument("config: unknown key " + key);

  ExperimentConfig c;
  c.out_dir = kv.get_string("out_dir", c.out_dir);
  c.seed = static_cast<uint64_t>(kv.get_int("seed", static_cast<int64_t>(c.seed)));
  c.jobs = static_cast<int>(kv.get_int("jobs", c.jobs));
  c.svg = kv.get_bool("svg", c.svg);
  c.topology_file = kv.get_string("topology.file", c.topology_file);
  c.n_pops = static_cast<uint32_t>(kv.get_int("topology.n_pops", c.n_pops));
  c.avg_degree = kv.get_double("topology.avg_degree", c.avg_degree);
  c.n_topologies = static_cast<uint32_t>(kv.get_int("topology.n_topologies", c.n_topologies));
  c.tree_depth = static_cast<uint32_t>(kv.get_int("topology.tree_depth", c.tree_depth));
  c.tree_arity = static_cast<uint32_t>(kv.get_int("topology.tree_arity", c.tree_arity));
  c.pop_log_mean = kv.get_double("topology.pop_log_mean", c.pop_log_mean);
  c.pop_log_sigma = kv.get_double("topology.pop_log_sigma", c.pop_log_sigma);
  c.core_link_bps = kv.get_double("topology.core_link_bps", c.core_link_bps);
  c.idle_fraction = kv.get_double("profiles.idle_fraction", c.idle_fraction);
  c.leaf_nameplate_w = kv.get_double("profiles.leaf_nameplate_w", c.leaf_nameplate_w);
  c.leaf_max_bps = kv.get_double("profiles.leaf_max_bps", c.leaf_max_bps);
  c.num_contents = static_cast<uint32_t>(kv.get_int("workload.num_contents", c.num_contents));
  c.content_bytes = static_cast<uint64_t>(kv.get_int("workload.content_bytes", static_cast<int64_t>(c.content_bytes)));
  c.zipf_alpha = kv.get_double("workload.zipf_alpha", c.zipf_alpha);
  c.n_queries = static_cast<uint64_t>(kv.get_int("workload.n_queries", static_cast<int64_t>(c.n_queries)));
  c.warmup_fraction = kv.get_double("workload.warmup_fraction", c.warmup_fraction);
  c.aggregate_qps = kv.get_double("workload.aggregate_qps", c.aggregate_qps);
  c.utilization = kv.get_double("sim.utilization", c.utilization);
  c.reference_lookup_rate = kv.get_double("sim.reference_lookup_rate", c.reference_lookup_rate);
  c.payload_bytes = static_cast<uint64_t>(kv.get_int("sim.payload_bytes", static_cast<int64_t>(c.payload_bytes)));
  c.query_bytes = static_cast<uint64_t>(kv.get_int("sim.query_bytes", static_cast<int64_t>(c.query_bytes)));
  c.budget_ratio = kv.get_double("sim.budget_ratio", c.budget_ratio);
  c.edge_static_power = kv.get_bool("sim.edge_static_power", c.edge_static_power);
  c.kv_scheme = kv.get_string("sim.kv_scheme", c.kv_scheme);
  c.edge_serve_j_per_bit = kv.get_double("sim.edge_serve_j_per_bit", c.edge_serve_j_per_bit);
  c.bloom_filters = kv.get_double("hw.bloom_filters", c.bloom_filters);
  c.ndn_fib_entries = kv.get_double("hw.ndn_fib_entries", c.ndn_fib_entries);
  c.ndn_sram_bits = kv.get_double("hw.ndn_sram_bits", c.ndn_sram_bits);
  c.ndn_fib_entry_bits = kv.get_double("hw.ndn_fib_entry_bits", c.ndn_fib_entry_bits);
  c.ndn_load_factor = kv.get_double("hw.ndn_load_factor", c.ndn_load_factor);
  c.hash_energy_j = kv.get_double("hw.hash_energy_j", c.hash_energy_j);
  c.dram_access_fraction = kv.get_double("hw.dram_access_fraction", c.dram_access_fraction);
  c.ip_fib_entries = kv.get_double("hw.ip_fib_entries", c.ip_fib_entries);
  c.ip_entry_bits = kv.get_double("hw.ip_entry_bits", c.ip_entry_bits);
  c.as_path_len = kv.get_double("hw.as_path_len", c.as_path_len);
  c.aes_energy_j = kv.get_double("hw.aes_energy_j", c.aes_energy_j);
  c.hdr_ip_fixed = static_cast<uint32_t>(kv.get_int("hdr.ip_fixed", c.hdr_ip_fixed));
  c.hdr_ndn_fixed = static_cast<uint32_t>(kv.get_int("hdr.ndn_fixed", c.hdr_ndn_fixed));
  c.hdr_scion_fixed = static_cast<uint32_t>(kv.get_int("hdr.scion_fixed", c.hdr_scion_fixed));
  c.hdr_scion_per_as = static_cast<uint32_t>(kv.get_int("hdr.scion_per_as", c.hdr_scion_per_as));
  c.hdr_nebula_fixed = static_cast<uint32_t>(kv.get_int("hdr.nebula_fixed", c.hdr_nebula_fixed));
  c.hdr_nebula_per_as = static_cast<uint32_t>(kv.get_int("hdr.nebula_per_as", c.hdr_nebula_per_as));
  c.fig3_gbps = kv.get_list("fig3.gbps", c.fig3_gbps);
  c.fig3_packet_bytes = kv.get_double("fig3.packet_bytes", c.fig3_packet_bytes);
  c.fig3_ndn_fibs = kv.get_list("fig3.ndn_fibs", c.fig3_ndn_fibs);
  c.fig6_core_cache_bytes = kv.get_double("fig6.core_cache_bytes", c.fig6_core_cache_bytes);
  c.fig6_edge_cache_bytes = kv.get_double("fig6.edge_cache_bytes", c.fig6_edge_cache_bytes);
  c.fig6_object_bytes = kv.get_double("fig6.object_bytes", c.fig6_object_bytes);
  c.budget_grid = kv.get_list("sweep.budget_grid", c.budget_grid);
  c.zipf_grid = kv.get_list("sweep.zipf_grid", c.zipf_grid);
  return c;
}

std::string ExperimentConfig::canonical_dump() const {
  std::map<std::string, std::string> m;
  m["out_dir"] = out_dir;
  m["seed"] = std::to_string(seed);
  m["jobs"] = std::to_string(jobs);
  m["svg"] = svg ? "true" : "false";
  m["topology.file"] = topology_file;
  m["topology.n_pops"] = std::to_string(n_pops);
  m["topology.avg_degree"] = fmt(avg_degree);
  m["topology.n_topologies"] = std::to_string(n_topologies);
  m["topology.tree_depth"] = std::to_string(tree_depth);
  m["topology.tree_arity"] = std::to_string(tree_arity);
  m["topology.pop_log_mean"] = fmt(pop_log_mean);
  m["topology.pop_log_sigma"] = fmt(pop_log_sigma);
  m["topology.core_link_bps"] = fmt(core_link_bps);
  m["profiles.idle_fraction"] = fmt(idle_fraction);
  m["profiles.leaf_nameplate_w"] = fmt(leaf_nameplate_w);
  m["profiles.leaf_max_bps"] = fmt(leaf_max_bps);
  m["workload.num_contents"] = std::to_string(num_contents);
  m["workload.content_bytes"] = std::to_string(content_bytes);
  m["workload.zipf_alpha"] = fmt(zipf_alpha);
  m["workload.n_queries"] = std::to_string(n_queries);
  m["workload.warmup_fraction"] = fmt(warmup_fraction);
  m["workload.aggregate_qps"] = fmt(aggregate_qps);
  m["sim.utilization"] = fmt(utilization);
  m["sim.reference_lookup_rate"] = fmt(reference_lookup_rate);
  m["sim.payload_bytes"] = std::to_string(payload_bytes);
  m["sim.query_bytes"] = std::to_string(query_bytes);
  m["sim.budget_ratio"] = fmt(budget_ratio);
  m["sim.edge_static_power"] = edge_static_power ? "true" : "false";
  m["sim.kv_scheme"] = kv_scheme;
  m["sim.edge_serve_j_per_bit"] = fmt(edge_serve_j_per_bit);
  m["hw.bloom_filters"] = fmt(bloom_filters);
  m["hw.ndn_fib_entries"] = fmt(ndn_fib_entries);
  m["hw.ndn_sram_bits"] = fmt(ndn_sram_bits);
  m["hw.ndn_fib_entry_bits"] = fmt(ndn_fib_entry_bits);
  m["hw.ndn_load_factor"] = fmt(ndn_load_factor);
  m["hw.hash_energy_j"] = fmt(hash_energy_j);
  m["hw.dram_access_fraction"] = fmt(dram_access_fraction);
  m["hw.ip_fib_entries"] = fmt(ip_fib_entries);
  m["hw.ip_entry_bits"] = fmt(ip_entry_bits);
  m["hw.as_path_len"] = fmt(as_path_len);
  m["hw.aes_energy_j"] = fmt(aes_energy_j);
  m["hdr.ip_fixed"] = std::to_string(hdr_ip_fixed);
  m["hdr.ndn_fixed"] = std::to_string(hdr_ndn_fixed);
  m["hdr.scion_fixed"] = std::to_string(hdr_scion_fixed);
  m["hdr.scion_per_as"] = std::to_string(hdr_scion_per_as);
  m["hdr.nebula_fixed"] = std::to_string(hdr_nebula_fixed);
  m["hdr.nebula_per_as"] = std::to_string(hdr_nebula_per_as);
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    return s;
  };
  m["fig3.gbps"] = list(fig3_gbps);
  m["fig3.packet_bytes"] = fmt(fig3_packet_bytes);
  m["fig3.ndn_fibs"] = list(fig3_ndn_fibs);
  m["fig6.core_cache_bytes"] = fmt(fig6_core_cache_bytes);
  m["fig6.edge_cache_bytes"] = fmt(fig6_edge_cache_bytes);
  m["fig6.object_bytes"] = fmt(fig6_object_bytes);
  m["sweep.budget_grid"] = list(budget_grid);
  m["sweep.zipf_grid"] = list(zipf_grid);

  std::string out;
  for (const auto& [k, v] : m) out += k + " = " + v + "\n";
  return out;
}

ForwardingModels ExperimentConfig::forwarding_models() const {
  ForwardingModels fm;
  fm.tcam.entry_bits = ip_entry_bits;
  fm.tcam.num_entries = ip_fib_entries;
  fm.tcam.tech = storage::tcam_array(ip_entry_bits * ip_fib_entries);
  fm.lpmbf.num_filters = bloom_filters;
  fm.lpmbf.sram_bits = ndn_sram_bits;
  fm.lpmbf.num_prefixes = ndn_fib_entries;
  fm.lpmbf.fib_entry_bits = ndn_fib_entry_bits;
  fm.lpmbf.load_factor = ndn_load_factor;
  fm.lpmbf.hash_energy_j = hash_energy_j;
  fm.lpmbf.dram_access_fraction = dram_access_fraction;
  fm.lpmbf.sram = storage::sram_array(ndn_sram_bits);
  fm.lpmbf.dram = storage::dram_array(fm.lpmbf.fib_dram_bits());
  fm.nebula = {PcsScheme::NEBULA, as_path_len, aes_energy_j, hash_energy_j};
  fm.scion = {PcsScheme::SCION, as_path_len, aes_energy_j, hash_energy_j};
  return fm;
}

std::map<RouterRole, RouterProfile> ExperimentConfig::router_profiles() const {
  return {{RouterRole::core, profiles::crs1_core(idle_fraction)},
          {RouterRole::edge, profiles::ars1013_edge(idle_fraction)},
          {RouterRole::leaf, profiles::access_leaf(idle_fraction, leaf_nameplate_w, leaf_max_bps)}};
}

ArchSpec ExperimentConfig::arch(ArchKind kind) const {
  ArchSpec a = default_arch(kind);
  switch (kind) {
    case ArchKind::IP: a.header = {hdr_ip_fixed, 0, 0}; break;
    case ArchKind::NDN: a.header = {hdr_ndn_fixed, 0, 0}; break;
    case ArchKind::SCION: a.header = {hdr_scion_fixed, 0, hdr_scion_per_as}; break;
    case ArchKind::NEBULA: a.header = {hdr_nebula_fixed, 0, hdr_nebula_per_as}; break;
  }
  a.models = forwarding_models();
  return a;
}

SimParams ExperimentConfig::sim_params() const {
  SimParams p;
  p.utilization = utilization;
  p.reference_lookup_rate = reference_lookup_rate;
  p.packets = {payload_bytes, query_bytes};
  p.aggregate_qps = aggregate_qps;
  p.warmup_fraction = warmup_fraction;
  p.edge_cache.serve_j_per_bit = edge_serve_j_per_bit;
  p.edge_static_power = edge_static_power;
  p.kv = kv_by_name(kv_scheme);
  p.pervasive_index = storage::sram();
  p.pervasive_storage = storage::dram();
  p.edge_index = storage::dram();
  p.edge_storage = storage::dram();
  return p;
}

NetworkModel ExperimentConfig::build_model(uint64_t topo_seed) const {
  PopGraph graph;
  if (!topology_file.empty()) {
    graph = load_pop_graph_file(topology_file);
  } else {
    graph = synth_pop_graph(n_pops, avg_degree, topo_seed, {pop_log_mean, pop_log_sigma},
                            core_link_bps);
  }
  NetworkModel model = attach_access_trees(graph, {tree_depth, tree_arity}, router_profiles());
  assign_origins(model, num_contents, mix_seed(seed, topo_seed));
  return model;
}

QueryTrace ExperimentConfig::build_trace(const NetworkModel& model, double alpha,
                                         uint64_t stream) const {
  return generate_trace(model, catalog(), {alpha, num_contents}, n_queries, mix_seed(seed, stream));
}

Fig3Result run_fig3(const ExperimentConfig& cfg) {
  Fig3Result out;
  out.gbps = cfg.fig3_gbps;
  const ForwardingModels base = cfg.forwarding_models();
  const double pkt_bits = cfg.fig3_packet_bytes * 8.0;

  out.columns.push_back("IP");
  std::vector<ForwardingModels> ndn_models;
  for (double n : cfg.fig3_ndn_fibs) {
    char name[48];
    std::snprintf(name, sizeof name, "NDN-%gM", n / 1e6);
    out.columns.push_back(name);
    ForwardingModels fm = base;
    fm.lpmbf.num_prefixes = n;
    fm.lpmbf.sram_bits = 10.0 * n;  // keep the per-prefix bit budget of the reference design
    fm.lpmbf.sram = storage::sram_array(fm.lpmbf.sram_bits);
    fm.lpmbf.dram = storage::dram_array(fm.lpmbf.fib_dram_bits());
    ndn_models.push_back(fm);
  }
  out.columns.push_back("NEBULA");
  out.columns.push_back("SCION");
  out.watts.assign(out.columns.size(), std::vector<double>(out.gbps.size(), 0.0));

  for (size_t s = 0; s < out.gbps.size(); ++s) {
    const double rate = out.gbps[s] * 1e9 / pkt_bits;
    size_t col = 0;
    out.watts[col++][s] = fwd_power(ArchKind::IP, rate, base);
    for (const auto& fm : ndn_models) out.watts[col++][s] = fwd_power(ArchKind::NDN, rate, fm);
    out.watts[col++][s] = fwd_power(ArchKind::NEBULA, rate, base);
    out.watts[col++][s] = fwd_power(ArchKind::SCION, rate, base);
  }
  return out;
}

Fig6Result run_fig6(const ExperimentConfig& cfg) {
  Fig6Result out;
  const ForwardingModels fm = cfg.forwarding_models();
  const auto profiles = cfg.router_profiles();
  const double pkt_bits = static_cast<double>(cfg.payload_bytes) * 8.0;
  const KvScheme scheme = kv_by_name(cfg.kv_scheme);

  for (ArchKind kind : {ArchKind::IP, ArchKind::NDN, ArchKind::NEBULA, ArchKind::SCION}) {
    for (RouterRole role : {RouterRole::core, RouterRole::edge}) {
      CacheAttachment cache;
      const CacheAttachment* attach = nullptr;
      if (kind == ArchKind::NDN) {
        const double bytes =
            role == RouterRole::core ? cfg.fig6_core_cache_bytes : cfg.fig6_edge_cache_bytes;
        cache.scheme = scheme;
        cache.hw.index_tech = storage::sram();
        cache.hw.storage_tech = storage::dram_array(bytes * 8.0);
        cache.hw.storage_capacity_bits = bytes * 8.0;
        cache.hw.object_bytes = cfg.fig6_object_bytes;
        attach = &cache;
      }
      EnergyPerBit e = energy_per_bit(kind, role, fm, profiles.at(role), cfg.utilization, pkt_bits,
                                      attach);
      out.rows.push_back({to_string(kind), to_string(role), e});
    }
  }
  return out;
}

SimSuite run_fig8(const ExperimentConfig& cfg) {
  SimSuite suite;
  for (uint32_t t = 0; t < cfg.n_topologies; ++t) {
    const NetworkModel model = cfg.build_model(cfg.seed + t);
    const QueryTrace trace = cfg.build_trace(model, cfg.zipf_alpha, 1000 + t);
    const std::string run_id = "topo" + std::to_string(t);
    std::vector<SimJob> jobs;
    for (ArchKind kind : {ArchKind::IP, ArchKind::NDN, ArchKind::NEBULA, ArchKind::SCION})
      jobs.push_back({kind, CachePlacement::none, DiscoveryStrategy::simple_edge, 0.0,
                      cfg.zipf_alpha, &model, &trace, run_id});
    SimSuite part = run_jobs(cfg, jobs);
    suite.rows.insert(suite.rows.end(), part.rows.begin(), part.rows.end());
    suite.reports.insert(suite.reports.end(), std::make_move_iterator(part.reports.begin()),
                         std::make_move_iterator(part.reports.end()));
  }
  normalize_rows(
      suite.rows, [](const RunRow& r) { return r.arch == "IP"; },
      [](const RunRow& a, const RunRow& b) { return a.run_id == b.run_id; });
  return suite;
}

SimSuite run_fig9(const ExperimentConfig& cfg) {
  const NetworkModel model = cfg.build_model(cfg.seed);
  const QueryTrace trace = cfg.build_trace(model, cfg.zipf_alpha, 9000);
  std::vector<SimJob> jobs;
  for (ArchKind kind : {ArchKind::IP, ArchKind::NDN, ArchKind::NEBULA, ArchKind::SCION})
    jobs.push_back({kind, CachePlacement::none, DiscoveryStrategy::simple_edge, 0.0, cfg.zipf_alpha,
                    &model, &trace, "-"});
  for (ArchKind kind : {ArchKind::IP, ArchKind::NEBULA, ArchKind::SCION})
    jobs.push_back({kind, CachePlacement::edge_leaf_only, DiscoveryStrategy::simple_edge,
                    cfg.budget_ratio, cfg.zipf_alpha, &model, &trace, "-"});
  jobs.push_back({ArchKind::NDN, CachePlacement::pervasive_all_routers, DiscoveryStrategy::on_path,
                  cfg.budget_ratio, cfg.zipf_alpha, &model, &trace, "-"});
  SimSuite suite = run_jobs(cfg, jobs);
  normalize_rows(
      suite.rows,
      [](const RunRow& r) { return r.arch == "SCION" && r.deployment == "none"; },
      [](const RunRow&, const RunRow&) { return true; });
  return suite;
}

SimSuite sweep_cache_budget(const ExperimentConfig& cfg) {
  const NetworkModel model = cfg.build_model(cfg.seed);
  const QueryTrace trace = cfg.build_trace(model, cfg.zipf_alpha, 8000);
  std::vector<SimJob> jobs;
  jobs.push_back({ArchKind::SCION, CachePlacement::none, DiscoveryStrategy::simple_edge, 0.0,
                  cfg.zipf_alpha, &model, &trace, "-"});
  for (double c : cfg.budget_grid) {
    for (ArchKind kind : {ArchKind::IP, ArchKind::NEBULA, ArchKind::SCION})
      jobs.push_back({kind, CachePlacement::edge_leaf_only, DiscoveryStrategy::simple_edge, c,
                      cfg.zipf_alpha, &model, &trace, "-"});
    jobs.push_back({ArchKind::NDN, CachePlacement::pervasive_all_routers,
                    DiscoveryStrategy::on_path, c, cfg.zipf_alpha, &model, &trace, "-"});
  }
  SimSuite suite = run_jobs(cfg, jobs);
  normalize_rows(
      suite.rows,
      [](const RunRow& r) { return r.arch == "SCION" && r.deployment == "none"; },
      [](const RunRow&, const RunRow&) { return true; });
  return suite;
}

SimSuite sweep_zipf(const ExperimentConfig& cfg) {
  const NetworkModel model = cfg.build_model(cfg.seed);
  std::vector<QueryTrace> traces;
  traces.reserve(cfg.zipf_grid.size());
  for (size_t i = 0; i < cfg.zipf_grid.size(); ++i)
    traces.push_back(cfg.build_trace(model, cfg.zipf_grid[i], 7000 + i));
  std::vector<SimJob> jobs;
  for (size_t i = 0; i < cfg.zipf_grid.size(); ++i) {
    const double alpha = cfg.zipf_grid[i];
    jobs.push_back({ArchKind::SCION, CachePlacement::none, DiscoveryStrategy::simple_edge, 0.0,
                    alpha, &model, &traces[i], "-"});
    for (ArchKind kind : {ArchKind::IP, ArchKind::NEBULA, ArchKind::SCION})
      jobs.push_back({kind, CachePlacement::edge_leaf_only, DiscoveryStrategy::simple_edge,
                      cfg.budget_ratio, alpha, &model, &traces[i], "-"});
    jobs.push_back({ArchKind::NDN, CachePlacement::pervasive_all_routers,
                    DiscoveryStrategy::on_path, cfg.budget_ratio, alpha, &model, &traces[i], "-"});
  }
  SimSuite suite = run_jobs(cfg, jobs);
  normalize_rows(
      suite.rows,
      [](const RunRow& r) { return r.arch == "SCION" && r.deployment == "none"; },
      [](const RunRow& a, const RunRow& b) { return a.alpha == b.alpha; });
  return suite;
}

SimSuite sweep_discovery(const ExperimentConfig& cfg) {
  const NetworkModel model = cfg.build_model(cfg.seed);
  const QueryTrace trace = cfg.build_trace(model, cfg.zipf_alpha, 6000);
  std::vector<SimJob> jobs;
  for (ArchKind kind : {ArchKind::IP, ArchKind::NEBULA, ArchKind::SCION})
    for (DiscoveryStrategy strat :
         {DiscoveryStrategy::simple_edge, DiscoveryStrategy::cooperative_edge})
      jobs.push_back({kind, CachePlacement::edge_leaf_only, strat, cfg.budget_ratio, cfg.zipf_alpha,
                      &model, &trace, "-"});
  for (DiscoveryStrategy strat : {DiscoveryStrategy::on_path, DiscoveryStrategy::nearest_copy})
    jobs.push_back({ArchKind::NDN, CachePlacement::pervasive_all_routers, strat, cfg.budget_ratio,
                    cfg.zipf_alpha, &model, &trace, "-"});
  SimSuite suite = run_jobs(cfg, jobs);
  normalize_rows(
      suite.rows,
      [](const RunRow& r) { return r.arch == "SCION" && r.strategy == "simple_edge"; },
      [](const RunRow&, const RunRow&) { return true; });
  return suite;
}

void write_summary_csv(const std::string& path, const std::vector<RunRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "arch,deployment,strategy,c,alpha,total_J,base_J,fwd_J,cache_J,tx_J,hit_rate,normalized,run\n";
  for (const auto& r : rows) {
    out << r.arch << ',' << r.deployment << ',' << r.strategy << ',' << fmt(r.c) << ','
        << fmt(r.alpha) << ',' << fmt(r.total_j) << ',' << fmt(r.base_j) << ',' << fmt(r.fwd_j)
        << ',' << fmt(r.cache_j) << ',' << fmt(r.tx_j) << ',' << fmt(r.hit_rate) << ','
        << fmt(r.normalized) << ',' << r.run_id << "\n";
  }
}

void write_fig3_csv(const std::string& path, const Fig3Result& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "link_gbps";
  for (const auto& c : result.columns) out << ',' << c << "_w";
  out << "\n";
  for (size_t s = 0; s < result.gbps.size(); ++s) {
    out << fmt(result.gbps[s]);
    for (size_t c = 0; c < result.columns.size(); ++c) out << ',' << fmt(result.watts[c][s]);
    out << "\n";
  }
}

void write_fig6_csv(const std::string& path, const Fig6Result& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "arch,role,base_j_per_bit,fwd_j_per_bit,cache_j_per_bit,total_j_per_bit\n";
  for (const auto& r : result.rows) {
    out << r.arch << ',' << r.role << ',' << fmt(r.e.base) << ',' << fmt(r.e.fwd) << ','
        << fmt(r.e.cache) << ',' << fmt(r.e.total()) << "\n";
  }
}

std::vector<std::string> run_and_write(const std::string& experiment, const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  std::vector<std::string> files;

  auto emit_config = [&] {
    const std::string path = cfg.out_dir + "/config_echo.txt";
    std::ofstream out(path);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(cfg.config_hash()));
    out << "# experiment = " << experiment << "\n# config_hash = " << buf << "\n"
        << cfg.canonical_dump();
    files.push_back(path);
  };
  emit_config();

  auto summary_path = [&](const std::string& name) { return cfg.out_dir + "/" + name + "_summary.csv"; };

  auto emit_reports = [&](const std::string& name, const SimSuite& suite) {
    fs::create_directories(cfg.out_dir + "/reports");
    for (size_t i = 0; i < suite.reports.size(); ++i) {
      char nn[16];
      std::snprintf(nn, sizeof nn, "%03zu", i);
      const std::string path = cfg.out_dir + "/reports/" + name + "_" + nn + ".json";
      std::ofstream out(path);
      suite.reports[i].write_json(out);
      files.push_back(path);
    }
  };

  auto emit_suite_svg = [&](const std::string& name, const SimSuite& suite) {
    if (!cfg.svg) return;
    // normalized bars, one per row
    const std::string path = cfg.out_dir + "/" + name + ".svg";
    std::vector<double> xs;
    std::vector<double> ys;
    for (size_t i = 0; i < suite.rows.size(); ++i) {
      xs.push_back(static_cast<double>(i));
      ys.push_back(suite.rows[i].normalized);
    }
    std::vector<std::string> names = {"normalized"};
    write_svg_series(path, xs, names, {ys}, name + " run index", false);
    files.push_back(path);
  };

  if (experiment == "fig3") {
    Fig3Result r = run_fig3(cfg);
    const std::string path = cfg.out_dir + "/fig3.csv";
    write_fig3_csv(path, r);
    files.push_back(path);
    if (cfg.svg) {
      const std::string svg = cfg.out_dir + "/fig3.svg";
      write_svg_series(svg, r.gbps, r.columns, r.watts, "link speed (Gbps)", true);
      files.push_back(svg);
    }
  } else if (experiment == "fig6") {
    Fig6Result r = run_fig6(cfg);
    const std::string path = cfg.out_dir + "/fig6.csv";
    write_fig6_csv(path, r);
    files.push_back(path);
  } else if (experiment == "fig8") {
    SimSuite suite = run_fig8(cfg);
    write_summary_csv(summary_path("fig8"), suite.rows);
    files.push_back(summary_path("fig8"));
    emit_reports("fig8", suite);
    emit_suite_svg("fig8", suite);
  } else if (experiment == "fig9") {
    SimSuite suite = run_fig9(cfg);
    write_summary_csv(summary_path("fig9"), suite.rows);
    files.push_back(summary_path("fig9"));
    emit_reports("fig9", suite);
    emit_suite_svg("fig9", suite);
  } else if (experiment == "sweep_budget") {
    SimSuite suite = sweep_cache_budget(cfg);
    write_summary_csv(summary_path("sweep_budget"), suite.rows);
    files.push_back(summary_path("sweep_budget"));
    emit_reports("sweep_budget", suite);
    emit_suite_svg("sweep_budget", suite);
  } else if (experiment == "sweep_zipf") {
    SimSuite suite = sweep_zipf(cfg);
    write_summary_csv(summary_path("sweep_zipf"), suite.rows);
    files.push_back(summary_path("sweep_zipf"));
    emit_reports("sweep_zipf", suite);
    emit_suite_svg("sweep_zipf", suite);
  } else if (experiment == "sweep_discovery") {
    SimSuite suite = sweep_discovery(cfg);
    write_summary_csv(summary_path("sweep_discovery"), suite.rows);
    files.push_back(summary_path("sweep_discovery"));
    emit_reports("sweep_discovery", suite);
    emit_suite_svg("sweep_discovery", suite);
  } else {
    throw std::invalid_argument("unknown experiment: " + experiment);
  }

  const std::string manifest = cfg.out_dir + "/manifest.txt";
  std::ofstream mf(manifest);
  for (const auto& f : files) mf << f << "\n";
  files.push_back(manifest);
  return files;
}

}  // namespace fiapower
