#include "fiapower/power_models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fiapower {

double baseline_power(const RouterProfile& profile, double throughput_bps) {
  profile.validate();
  if (throughput_bps < 0.0) throw std::invalid_argument("baseline_power: negative throughput");
  if (throughput_bps > profile.max_throughput_bps) {
    std::ostringstream os;
    os << "baseline_power: throughput " << throughput_bps << " bps exceeds " << profile.name
       << " capacity " << profile.max_throughput_bps << " bps";
    throw std::invalid_argument(os.str());
  }
  const double util = throughput_bps / profile.max_throughput_bps;
  return profile.idle_w + util * (profile.nameplate_w - profile.idle_w);
}

void TcamConfig::validate() const {
  tech.validate();
  if (entry_bits <= 0.0 || num_entries < 0.0)
    throw std::invalid_argument("TcamConfig: entry_bits must be > 0 and num_entries >= 0");
  if (entry_bits * num_entries > tech.max_capacity_bits) {
    std::ostringstream os;
    os << "TcamConfig: " << entry_bits * num_entries << " bits exceed " << tech.name
       << " capacity " << tech.max_capacity_bits << " bits";
    throw std::invalid_argument(os.str());
  }
}

double tcam_power(const TcamConfig& cfg) {
  cfg.validate();
  return cfg.entry_bits * cfg.num_entries * cfg.tech.power_per_bit_w;
}

BloomParams bloom_params(double sram_bits, double num_prefixes) {
  if (num_prefixes <= 0.0) throw std::invalid_argument("bloom_params: num_prefixes must be > 0");
  if (sram_bits < 0.0) throw std::invalid_argument("bloom_params: negative sram_bits");
  const double k = sram_bits / num_prefixes * std::log(2.0);
  return {k, std::pow(0.5, k)};
}

void LpmBfConfig::validate() const {
  sram.validate();
  dram.validate();
  if (num_filters <= 0.0 || num_prefixes <= 0.0 || fib_entry_bits <= 0.0)
    throw std::invalid_argument("LpmBfConfig: counts and sizes must be > 0");
  if (load_factor <= 0.0 || load_factor > 1.0)
    throw std::invalid_argument("LpmBfConfig: load_factor must be in (0,1]");
  if (dram_access_fraction < 0.0 || dram_access_fraction > 1.0)
    throw std::invalid_argument("LpmBfConfig: dram_access_fraction must be in [0,1]");
  if (hash_energy_j <= 0.0) throw std::invalid_argument("LpmBfConfig: hash_energy must be > 0");
  if (sram_bits > sram.max_capacity_bits)
    throw std::invalid_argument("LpmBfConfig: Bloom filters exceed SRAM capacity");
  if (fib_dram_bits() > dram.max_capacity_bits)
    throw std::invalid_argument("LpmBfConfig: FIB hash table exceeds DRAM capacity");
}

double lpmbf_compute_power(const LpmBfConfig& cfg, double lookup_rate) {
  cfg.validate();
  if (lookup_rate < 0.0) throw std::invalid_argument("lpmbf_compute_power: negative rate");
  const BloomParams bp = bloom_params(cfg.sram_bits, cfg.num_prefixes);
  const double hashes_per_lookup =
      cfg.num_filters * bp.hashes + cfg.num_filters * bp.false_positive + 1.0;
  return hashes_per_lookup * lookup_rate * cfg.hash_energy_j;
}

double lpmbf_storage_power(const LpmBfConfig& cfg, double lookup_rate) {
  cfg.validate();
  if (lookup_rate < 0.0) throw std::invalid_argument("lpmbf_storage_power: negative rate");
  const BloomParams bp = bloom_params(cfg.sram_bits, cfg.num_prefixes);
  const double fib_bits = cfg.fib_dram_bits();
  const double sram_static = cfg.sram_bits * cfg.sram.power_per_bit_w;
  const double dram_accesses = lookup_rate * (cfg.num_filters * bp.false_positive + 1.0);
  const double dram_max_rate = cfg.dram.max_rate_hz.value_or(0.0);
  if (dram_max_rate <= 0.0) throw std::invalid_argument("lpmbf_storage_power: DRAM tech has no access rate");
  const double dram_dynamic = dram_accesses / dram_max_rate * cfg.dram_access_fraction * fib_bits *
                              cfg.dram.power_per_bit_w;
  const double dram_background =
      (1.0 - cfg.dram_access_fraction) * fib_bits * cfg.dram.power_per_bit_w;
  return sram_static + dram_dynamic + dram_background;
}

void PcsConfig::validate() const {
  if (avg_as_path_len < 0.0) throw std::invalid_argument("PcsConfig: negative AS path length");
  if (aes_energy_j <= 0.0 || hash_energy_j <= 0.0)
    throw std::invalid_argument("PcsConfig: energies must be > 0");
}

double pcs_verif_energy(const PcsConfig& cfg) {
  cfg.validate();
  if (cfg.scheme == PcsScheme::SCION) return cfg.aes_energy_j;
  const double l = cfg.avg_as_path_len;
  return cfg.hash_energy_j + (l * l + l + 2.0) * cfg.aes_energy_j;
}

double fwd_power(ArchKind arch, double packet_rate, const ForwardingModels& models) {
  if (packet_rate < 0.0) throw std::invalid_argument("fwd_power: negative packet rate");
  switch (arch) {
    case ArchKind::IP:
      return tcam_power(models.tcam);
    case ArchKind::NDN:
      return lpmbf_compute_power(models.lpmbf, packet_rate) +
             lpmbf_storage_power(models.lpmbf, packet_rate);
    case ArchKind::NEBULA:
      return packet_rate * pcs_verif_energy(models.nebula);
    default:
      return packet_rate * pcs_verif_energy(models.scion);
  }
}

void KvScheme::validate() const {
  if (index_bytes_per_object <= 0.0) throw std::invalid_argument("KvScheme: kappa must be > 0");
  if (read_amp < 1.0 || write_amp < 1.0)
    throw std::invalid_argument("KvScheme: amplification factors must be >= 1");
}

void CacheHardware::validate() const {
  index_tech.validate();
  storage_tech.validate();
  if (object_bytes <= 0.0) throw std::invalid_argument("CacheHardware: object_bytes must be > 0");
  if (storage_capacity_bits < 0.0)
    throw std::invalid_argument("CacheHardware: negative storage capacity");
}

double cache_power(const KvScheme& scheme, const CacheHardware& hw) {
  scheme.validate();
  hw.validate();
  const double idx_bits = hw.index_bits(scheme);
  if (idx_bits > hw.index_tech.max_capacity_bits) {
    std::ostringstream os;
    os << "cache_power: index needs " << idx_bits << " bits, " << hw.index_tech.name
       << " holds at most " << hw.index_tech.max_capacity_bits;
    throw std::invalid_argument(os.str());
  }
  return hw.storage_tech.power_per_bit_w * hw.storage_capacity_bits +
         hw.index_tech.power_per_bit_w * idx_bits;
}

void CacheWorkload::validate() const {
  if (arrival_rate < 0.0) throw std::invalid_argument("CacheWorkload: negative arrival rate");
  auto ratio = [](double v, const char* what) {
    if (v < 0.0 || v > 1.0) throw std::invalid_argument(std::string("CacheWorkload: ") + what + " must be in [0,1]");
  };
  ratio(query_fraction, "query_fraction");
  ratio(hit_rate, "hit_rate");
  ratio(write_prob, "write_prob");
}

Feasibility kv_feasibility(const KvScheme& scheme, const CacheHardware& hw, const CacheWorkload& wl) {
  scheme.validate();
  hw.validate();
  wl.validate();
  Feasibility out;
  auto fail = [&out](const std::string& msg) {
    out.feasible = false;
    out.violations.push_back(msg);
  };

  const double idx_bits = hw.index_bits(scheme);
  if (idx_bits > hw.index_tech.max_capacity_bits)
    fail("index capacity: needs " + std::to_string(idx_bits) + " bits of " + hw.index_tech.name);
  if (hw.storage_capacity_bits > hw.storage_tech.max_capacity_bits)
    fail("storage capacity: needs " + std::to_string(hw.storage_capacity_bits) + " bits of " +
         hw.storage_tech.name);

  if (wl.arrival_rate > 0.0) {
    if (!hw.index_tech.max_rate_hz)
      fail("index rate: " + hw.index_tech.name + " has no specified access rate");
    else if (wl.arrival_rate > *hw.index_tech.max_rate_hz)
      fail("index rate: " + std::to_string(wl.arrival_rate) + "/s exceeds " + hw.index_tech.name);

    const double storage_accesses =
        wl.arrival_rate * (wl.query_fraction * wl.hit_rate * scheme.read_amp +
                           (1.0 - wl.query_fraction) * wl.write_prob * scheme.write_amp);
    if (storage_accesses > 0.0) {
      if (!hw.storage_tech.max_rate_hz)
        fail("storage rate: " + hw.storage_tech.name + " has no specified access rate");
      else if (storage_accesses > *hw.storage_tech.max_rate_hz)
        fail("storage rate: " + std::to_string(storage_accesses) + "/s exceeds " +
             hw.storage_tech.name);
    }
  }
  return out;
}

EnergyPerBit energy_per_bit(ArchKind arch, RouterRole role, const ForwardingModels& models,
                            const RouterProfile& profile, double utilization, double packet_bits,
                            const CacheAttachment* cache) {
  if (utilization <= 0.0 || utilization > 1.0)
    throw std::invalid_argument("energy_per_bit: utilization must be in (0,1]");
  if (packet_bits <= 0.0) throw std::invalid_argument("energy_per_bit: packet_bits must be > 0");
  const double throughput = utilization * profile.max_throughput_bps;
  const double packet_rate = throughput / packet_bits;

  EnergyPerBit out;
  out.base = baseline_power(profile, throughput) / throughput;

  const bool pcs = arch == ArchKind::NEBULA || arch == ArchKind::SCION;
  if (pcs && role == RouterRole::core) {
    out.fwd = 0.0;  // verification happens at border routers
  } else {
    out.fwd = fwd_power(arch, packet_rate, models) / throughput;
  }
  if (cache != nullptr) out.cache = cache_power(cache->scheme, cache->hw) / throughput;
  return out;
}

}  // namespace fiapower
