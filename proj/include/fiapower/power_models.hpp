#ifndef FIAPOWER_POWER_MODELS_HPP
#define FIAPOWER_POWER_MODELS_HPP

#include <string>
#include <vector>

#include "fiapower/router.hpp"
#include "fiapower/storage.hpp"

namespace fiapower {

enum class ArchKind { IP, NDN, NEBULA, SCION };

inline const char* to_string(ArchKind a) {
  switch (a) {
    case ArchKind::IP: return "IP";
    case ArchKind::NDN: return "NDN";
    case ArchKind::NEBULA: return "NEBULA";
    default: return "SCION";
  }
}

// ---------------------------------------------------------------- baseline

// Affine router power between idle and nameplate as throughput rises.
double baseline_power(const RouterProfile& profile, double throughput_bps);

// -------------------------------------------------------------- TCAM (IP)

struct TcamConfig {
  double entry_bits = 64.0;
  double num_entries = 500e3;
  StorageTech tech = storage::tcam();

  void validate() const;
};

// Static TCAM power: every stored bit burns power regardless of lookup rate.
double tcam_power(const TcamConfig& cfg);

// ------------------------------------------------------------ LPM-BF (NDN)

struct BloomParams {
  double hashes;          // k, real-valued
  double false_positive;  // f
};

BloomParams bloom_params(double sram_bits, double num_prefixes);

struct LpmBfConfig {
  double num_filters = 144.0;     // one Bloom filter per prefix length
  double sram_bits = 200e6;
  double num_prefixes = 20e6;
  double fib_entry_bits = 320.0;  // content-name FIB records are long
  double load_factor = 0.8;
  double hash_energy_j = 50e-9;   // per-hash energy, SRAM probe folded in
  StorageTech sram = storage::sram();
  StorageTech dram = storage::dram();
  double dram_access_fraction = 0.46;

  double fib_dram_bits() const { return fib_entry_bits * num_prefixes / load_factor; }
  void validate() const;
};

double lpmbf_compute_power(const LpmBfConfig& cfg, double lookup_rate);
double lpmbf_storage_power(const LpmBfConfig& cfg, double lookup_rate);

// -------------------------------------------------- PCS verification (FIA)

enum class PcsScheme { NEBULA, SCION };

struct PcsConfig {
  PcsScheme scheme = PcsScheme::SCION;
  double avg_as_path_len = 4.4;
  double aes_energy_j = 250e-9;
  double hash_energy_j = 50e-9;

  void validate() const;
};

// Energy to check (and, where required, extend) the forwarding proof carried
// by one packet.
double pcs_verif_energy(const PcsConfig& cfg);

// ------------------------------------------------------------- dispatcher

struct ForwardingModels {
  TcamConfig tcam;
  LpmBfConfig lpmbf;
  PcsConfig nebula{PcsScheme::NEBULA};
  PcsConfig scion{PcsScheme::SCION};
};

double fwd_power(ArchKind arch, double packet_rate, const ForwardingModels& models);

// --------------------------------------------------------- content caches

struct KvScheme {
  std::string name;
  double index_bytes_per_object = 1.0;  // kappa
  double read_amp = 1.0;
  double write_amp = 1.0;

  void validate() const;
};

namespace kv {
inline KvScheme silt() { return {"SILT", 1.0, 1.01, 4.0}; }
inline KvScheme hc_setmem() { return {"HC-SetMem", 11.0 / 8.0, 1.0, 1.0}; }
inline KvScheme hc_loglru() { return {"HC-LogLRU", 31.0 / 8.0, 1.0, 1.0}; }
}  // namespace kv

struct CacheHardware {
  StorageTech index_tech = storage::sram();
  StorageTech storage_tech = storage::dram();
  double storage_capacity_bits = 0.0;
  double object_bytes = 1500.0;

  double index_bits(const KvScheme& scheme) const {
    const double objects = (storage_capacity_bits / 8.0) / object_bytes;
    return 8.0 * scheme.index_bytes_per_object * objects;
  }
  void validate() const;
};

// Static power of a two-layer key-value store sized to hold its full
// storage layer plus the per-object index.
double cache_power(const KvScheme& scheme, const CacheHardware& hw);

struct CacheWorkload {
  double arrival_rate = 0.0;    // packets/s hitting the cache subsystem
  double query_fraction = 0.5;  // share of arrivals that are queries
  double hit_rate = 0.1;
  double write_prob = 0.01;

  void validate() const;
};

struct Feasibility {
  bool feasible = true;
  std::vector<std::string> violations;
};

// Checks capacity and transaction-rate constraints; reports every violated
// constraint rather than stopping at the first.
Feasibility kv_feasibility(const KvScheme& scheme, const CacheHardware& hw, const CacheWorkload& wl);

// ------------------------------------------------------------- edge cache

// CDN-appliance serving energy, per bit handed to clients.
struct EdgeCacheModel {
  double serve_j_per_bit = 60e-9;  // 600 W appliance pushing 10 Gbps
};

inline double edge_cache_energy_per_bit(const EdgeCacheModel& m = {}) { return m.serve_j_per_bit; }

// ------------------------------------------------------------ per-bit view

struct EnergyPerBit {
  double base = 0.0;
  double fwd = 0.0;
  double cache = 0.0;
  double total() const { return base + fwd + cache; }
};

struct CacheAttachment {
  KvScheme scheme;
  CacheHardware hw;
};

// Joules per forwarded bit for one router of the given class, split into
// baseline, forwarding-decision and content-cache components. Forwarding
// rate is derived from throughput at the given packet size. PCS schemes do
// their verification at border (edge) routers only.
EnergyPerBit energy_per_bit(ArchKind arch, RouterRole role, const ForwardingModels& models,
                            const RouterProfile& profile, double utilization,
                            double packet_bits = 1350.0 * 8.0,
                            const CacheAttachment* cache = nullptr);

}  // namespace fiapower

#endif
