#ifndef FIAPOWER_EXPERIMENTS_HPP
#define FIAPOWER_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fiapower/config.hpp"
#include "fiapower/simulator.hpp"

namespace fiapower {

// Everything an experiment run can tune, with the documented defaults.
struct ExperimentConfig {
  std::string out_dir = "out";
  uint64_t seed = 1;
  int jobs = 1;
  bool svg = false;

  // topology
  std::string topology_file;  // empty: synthesize
  uint32_t n_pops = 25;
  double avg_degree = 3.0;
  uint32_t n_topologies = 3;  // independent synthetic maps for fig8
  uint32_t tree_depth = 3;
  uint32_t tree_arity = 3;
  double pop_log_mean = 11.5129254649702;  // ln(1e5)
  double pop_log_sigma = 1.0;
  double core_link_bps = 40e9;
  double idle_fraction = 0.75;
  double leaf_nameplate_w = 15.0;
  double leaf_max_bps = 1e9;

  // workload
  uint32_t num_contents = 4000000;
  uint64_t content_bytes = 8100;
  double zipf_alpha = 0.99;
  uint64_t n_queries = 500000;
  double warmup_fraction = 0.2;
  double aggregate_qps = 510.0;

  // simulation
  double utilization = 0.18;
  double reference_lookup_rate = 1.2e6;
  uint64_t payload_bytes = 1350;
  uint64_t query_bytes = 40;
  double budget_ratio = 0.05;
  bool edge_static_power = true;
  std::string kv_scheme = "silt";
  double edge_serve_j_per_bit = 60e-9;

  // forwarding hardware
  double bloom_filters = 144.0;
  double ndn_fib_entries = 20e6;
  double ndn_sram_bits = 200e6;
  double ndn_fib_entry_bits = 320.0;
  double ndn_load_factor = 0.8;
  double hash_energy_j = 50e-9;
  double dram_access_fraction = 0.46;
  double ip_fib_entries = 500e3;
  double ip_entry_bits = 64.0;
  double as_path_len = 4.4;
  double aes_energy_j = 250e-9;

  // headers (bytes)
  uint32_t hdr_ip_fixed = 20;
  uint32_t hdr_ndn_fixed = 48;
  uint32_t hdr_scion_fixed = 8;
  uint32_t hdr_scion_per_as = 8;
  uint32_t hdr_nebula_fixed = 16;
  uint32_t hdr_nebula_per_as = 42;

  // fig3: forwarding power vs link speed
  std::vector<double> fig3_gbps = {1, 2, 5, 10, 20, 40};
  double fig3_packet_bytes = 440.0;
  std::vector<double> fig3_ndn_fibs = {500e3, 5e6, 50e6};

  // fig6: per-bit router energy
  double fig6_core_cache_bytes = 1e12;
  double fig6_edge_cache_bytes = 256e9;
  double fig6_object_bytes = 1e6;

  // sweeps
  std::vector<double> budget_grid = {0.0, 0.05, 0.1, 0.25, 0.5, 0.76, 1.0};
  std::vector<double> zipf_grid = {0.6, 0.8, 0.99, 1.1, 1.3, 1.5};

  static ExperimentConfig from(const KeyValueConfig& kv);
  std::string canonical_dump() const;
  uint64_t config_hash() const { return fnv1a64(canonical_dump()); }

  ForwardingModels forwarding_models() const;
  std::map<RouterRole, RouterProfile> router_profiles() const;
  ArchSpec arch(ArchKind kind) const;
  SimParams sim_params() const;
  Catalog catalog() const { return {num_contents, content_bytes}; }
  NetworkModel build_model(uint64_t topo_seed) const;
  QueryTrace build_trace(const NetworkModel& model, double alpha, uint64_t stream) const;
};

// one summary line per simulation run
struct RunRow {
  std::string arch;
  std::string deployment;
  std::string strategy;
  double c = 0.0;
  double alpha = 0.0;
  double total_j = 0.0;
  double base_j = 0.0;
  double fwd_j = 0.0;
  double cache_j = 0.0;
  double tx_j = 0.0;
  double hit_rate = 0.0;
  double normalized = 0.0;
  std::string run_id = "-";
};

struct Fig3Result {
  std::vector<double> gbps;
  std::vector<std::string> columns;              // arch variants
  std::vector<std::vector<double>> watts;        // [column][speed]
};

struct Fig6Row {
  std::string arch;
  std::string role;
  EnergyPerBit e;
};

struct Fig6Result {
  std::vector<Fig6Row> rows;
};

struct SimSuite {
  std::vector<RunRow> rows;
  std::vector<EnergyReport> reports;  // aligned with rows
};

Fig3Result run_fig3(const ExperimentConfig& cfg);
Fig6Result run_fig6(const ExperimentConfig& cfg);
SimSuite run_fig8(const ExperimentConfig& cfg);
SimSuite run_fig9(const ExperimentConfig& cfg);
SimSuite sweep_cache_budget(const ExperimentConfig& cfg);
SimSuite sweep_zipf(const ExperimentConfig& cfg);
SimSuite sweep_discovery(const ExperimentConfig& cfg);

// Runs the named experiment and writes csv outputs, a config echo and a
// manifest under cfg.out_dir. Returns the list of files written.
std::vector<std::string> run_and_write(const std::string& experiment, const ExperimentConfig& cfg);

void write_summary_csv(const std::string& path, const std::vector<RunRow>& rows);
void write_fig3_csv(const std::string& path, const Fig3Result& result);
void write_fig6_csv(const std::string& path, const Fig6Result& result);

}  // namespace fiapower

#endif
