#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "fiapower/power_models.hpp"
#include "fiapower/rng.hpp"

using namespace fiapower;

namespace {

ForwardingModels default_models() {
  ForwardingModels fm;
  fm.tcam = {64.0, 500e3, storage::tcam()};
  fm.lpmbf.num_filters = 144;
  fm.lpmbf.sram_bits = 200e6;
  fm.lpmbf.num_prefixes = 20e6;
  return fm;
}

// plain bit-array Bloom filter used as the empirical counterpart of the
// closed-form false-positive rate
class SimBloom {
 public:
  SimBloom(size_t bits, int k) : bits_(bits), k_(k), table_((bits + 63) / 64, 0) {}

  void insert(uint64_t key) {
    for (int i = 0; i < k_; ++i) set(index(key, i));
  }
  bool maybe_contains(uint64_t key) const {
    for (int i = 0; i < k_; ++i)
      if (!test(index(key, i))) return false;
    return true;
  }

 private:
  size_t index(uint64_t key, int i) const {
    return splitmix64(key + 0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(i + 1)) % bits_;
  }
  void set(size_t i) { table_[i / 64] |= 1ULL << (i % 64); }
  bool test(size_t i) const { return table_[i / 64] & (1ULL << (i % 64)); }
  size_t bits_;
  int k_;
  std::vector<uint64_t> table_;
};

}  // namespace

TEST_CASE("baseline power endpoints and midpoint") {
  RouterProfile p{"core", 16.8e3, 8.4e3, 6.4e12};
  CHECK(baseline_power(p, 0.0) == doctest::Approx(8.4e3).epsilon(1e-12));
  CHECK(baseline_power(p, 6.4e12) == doctest::Approx(16.8e3).epsilon(1e-12));
  CHECK(baseline_power(p, 3.2e12) == doctest::Approx(12.6e3).epsilon(1e-12));
  CHECK_THROWS_AS(baseline_power(p, 6.5e12), std::invalid_argument);
  CHECK_THROWS_AS(baseline_power(p, -1.0), std::invalid_argument);
}

TEST_CASE("baseline power is affine in throughput") {
  RouterProfile p = profiles::crs1_core(0.75);
  const double a = baseline_power(p, 1e12);
  const double b = baseline_power(p, 2e12);
  const double c = baseline_power(p, 3e12);
  CHECK(c - b == doctest::Approx(b - a).epsilon(1e-12));
  CHECK(b >= a);
}

TEST_CASE("tcam power is static and capacity checked") {
  TcamConfig cfg{64.0, 500e3, storage::tcam()};
  CHECK(tcam_power(cfg) == doctest::Approx(96.0).epsilon(1e-12));

  TcamConfig empty{64.0, 0.0, storage::tcam()};
  CHECK(tcam_power(empty) == 0.0);

  TcamConfig too_big{64.0, 1e6, storage::tcam()};
  CHECK_THROWS_AS(tcam_power(too_big), std::invalid_argument);
}

TEST_CASE("bloom parameters") {
  auto bp = bloom_params(200e6, 20e6);
  CHECK(bp.hashes == doctest::Approx(10.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(bp.false_positive == doctest::Approx(0.0081926).epsilon(1e-4));

  auto one = bloom_params(1.0 / std::log(2.0), 1.0);
  CHECK(one.hashes == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.false_positive == doctest::Approx(0.5).epsilon(1e-12));

  auto eq = bloom_params(1e6, 1e6);
  CHECK(eq.hashes == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(eq.false_positive == doctest::Approx(0.6185).epsilon(1e-3));

  CHECK_THROWS_AS(bloom_params(1e6, 0.0), std::invalid_argument);

  // f strictly decreasing in M/N
  double prev = 1.1;
  for (double ratio : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    double f = bloom_params(ratio * 1e6, 1e6).false_positive;
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("lpm-bf compute power") {
  LpmBfConfig cfg;
  cfg.num_filters = 32;
  cfg.sram_bits = 200e6;
  cfg.num_prefixes = 20e6;

  CHECK(lpmbf_compute_power(cfg, 0.0) == 0.0);

  // (32k + 32f + 1) * r * E_hash with k = 10 ln2, f = 2^-k
  const auto bp = bloom_params(cfg.sram_bits, cfg.num_prefixes);
  const double expected = (32.0 * bp.hashes + 32.0 * bp.false_positive + 1.0) * 1e6 * 50e-9;
  CHECK(expected == doctest::Approx(11.1535).epsilon(1e-3));
  CHECK(lpmbf_compute_power(cfg, 1e6) == doctest::Approx(expected).epsilon(1e-12));

  // exact linearity in rate
  CHECK(lpmbf_compute_power(cfg, 2e6) == doctest::Approx(2.0 * lpmbf_compute_power(cfg, 1e6)).epsilon(1e-12));
}

TEST_CASE("lpm-bf storage power") {
  LpmBfConfig cfg;
  cfg.num_filters = 32;
  cfg.sram_bits = 200e6;
  cfg.num_prefixes = 20e6;
  cfg.fib_entry_bits = 320;
  cfg.load_factor = 0.8;

  CHECK(cfg.fib_dram_bits() == doctest::Approx(8e9).epsilon(1e-12));

  // static terms only: 200 Mbit * 40 nW + 0.54 * 8 Gbit * 250 pW
  const double static_w = lpmbf_storage_power(cfg, 0.0);
  CHECK(static_w == doctest::Approx(8.0 + 1.08).epsilon(1e-9));

  // dynamic DRAM term at 3.7e6 lookups/s, evaluated from the formula
  const auto bp = bloom_params(cfg.sram_bits, cfg.num_prefixes);
  const double dyn = 3.7e6 * (32.0 * bp.false_positive + 1.0) / 1.333e9 * 0.46 * 8e9 * 250e-12;
  CHECK(dyn == doctest::Approx(3.223e-3).epsilon(1e-3));
  CHECK(lpmbf_storage_power(cfg, 3.7e6) - static_w == doctest::Approx(dyn).epsilon(1e-9));

  // all-dynamic split leaves no background power
  LpmBfConfig all_dyn = cfg;
  all_dyn.dram_access_fraction = 1.0;
  CHECK(lpmbf_storage_power(all_dyn, 0.0) == doctest::Approx(8.0).epsilon(1e-9));

  // FIB too large for DRAM
  LpmBfConfig too_big = cfg;
  too_big.num_prefixes = 2e9;
  too_big.sram_bits = 200e6;
  CHECK_THROWS_AS(lpmbf_storage_power(too_big, 0.0), std::invalid_argument);
}

TEST_CASE("empirical bloom filter matches the closed form") {
  const uint32_t n_keys = 100000;
  const size_t m_bits = 10 * n_keys;
  const auto bp = bloom_params(static_cast<double>(m_bits), n_keys);
  const int k = static_cast<int>(std::lround(bp.hashes));
  CHECK(k == 7);

  SimBloom filter(m_bits, k);
  Rng rng(20240817);
  for (uint32_t i = 0; i < n_keys; ++i) filter.insert(rng.next_u64());

  const int probes = 100000;
  int positives = 0;
  Rng probe_rng(987654321);
  for (int i = 0; i < probes; ++i)
    if (filter.maybe_contains(probe_rng.next_u64() | 0x8000000000000000ULL)) ++positives;
  const double empirical = static_cast<double>(positives) / probes;
  CHECK(std::abs(empirical - bp.false_positive) / bp.false_positive < 0.30);
}

TEST_CASE("pcs verification energy") {
  PcsConfig scion{PcsScheme::SCION};
  CHECK(pcs_verif_energy(scion) == doctest::Approx(250e-9).epsilon(1e-12));

  PcsConfig nebula{PcsScheme::NEBULA};
  CHECK(pcs_verif_energy(nebula) == doctest::Approx(6.49e-6).epsilon(1e-9));

  PcsConfig zero_hops{PcsScheme::NEBULA, 0.0};
  CHECK(pcs_verif_energy(zero_hops) == doctest::Approx(550e-9).epsilon(1e-12));

  // NEBULA always costs more than SCION
  for (double l : {0.0, 1.0, 4.4, 10.0}) {
    PcsConfig n{PcsScheme::NEBULA, l};
    CHECK(pcs_verif_energy(n) > pcs_verif_energy(scion));
  }
}

TEST_CASE("fwd_power dispatch") {
  ForwardingModels fm = default_models();
  fm.lpmbf.num_filters = 32;

  const double rate_10g = 10e9 / (1350.0 * 8.0);
  CHECK(fwd_power(ArchKind::SCION, rate_10g, fm) == doctest::Approx(0.2315).epsilon(1e-3));
  CHECK(fwd_power(ArchKind::IP, rate_10g, fm) == doctest::Approx(96.0).epsilon(1e-12));
  CHECK(fwd_power(ArchKind::IP, rate_10g / 10.0, fm) == doctest::Approx(96.0).epsilon(1e-12));

  const double ratio_10g = fwd_power(ArchKind::IP, rate_10g, fm) / fwd_power(ArchKind::SCION, rate_10g, fm);
  CHECK(ratio_10g == doctest::Approx(414.72).epsilon(1e-3));
  const double rate_1g = 1e9 / (1350.0 * 8.0);
  const double ratio_1g = fwd_power(ArchKind::IP, rate_1g, fm) / fwd_power(ArchKind::SCION, rate_1g, fm);
  CHECK(ratio_1g > 1000.0);

  // NDN = compute + storage
  CHECK(fwd_power(ArchKind::NDN, 1e6, fm) ==
        doctest::Approx(lpmbf_compute_power(fm.lpmbf, 1e6) + lpmbf_storage_power(fm.lpmbf, 1e6))
            .epsilon(1e-12));

  // PCS power is exactly linear in packet rate
  const double one = fwd_power(ArchKind::NEBULA, 1e5, fm);
  CHECK(fwd_power(ArchKind::NEBULA, 3e5, fm) == doctest::Approx(3.0 * one).epsilon(1e-12));
}

TEST_CASE("cache power") {
  KvScheme silt = kv::silt();
  CacheHardware hw;
  hw.index_tech = storage::sram_array(6e9);  // enough for the packet-sized index
  hw.storage_tech = storage::dram_array(8e12);
  hw.storage_capacity_bits = 8e12;  // 1 TB
  hw.object_bytes = 1500;

  // 2000 W of DRAM plus 213.3 W of index
  CHECK(cache_power(silt, hw) == doctest::Approx(2213.33).epsilon(1e-4));

  CacheHardware empty = hw;
  empty.storage_capacity_bits = 0.0;
  CHECK(cache_power(silt, empty) == 0.0);

  // index power scales linearly with kappa
  CacheHardware big_objects = hw;
  big_objects.object_bytes = 1e6;
  const double silt_idx = cache_power(silt, big_objects) - 2000.0;
  const double hc_idx = cache_power(kv::hc_setmem(), big_objects) - 2000.0;
  CHECK(silt_idx / hc_idx == doctest::Approx(8.0 / 11.0).epsilon(1e-9));

  // packet-sized objects overflow a single standard SRAM index chip
  CacheHardware overflow = hw;
  overflow.index_tech = storage::sram();
  CHECK_THROWS_AS(cache_power(silt, overflow), std::invalid_argument);
}

TEST_CASE("kv feasibility") {
  KvScheme silt = kv::silt();
  CacheHardware hw;
  hw.index_tech = storage::sram();
  hw.storage_tech = storage::dram_array(8e11);
  hw.storage_capacity_bits = 3e11;  // 37.5 GB
  hw.object_bytes = 1500;

  SUBCASE("zero arrivals leave only capacity constraints") {
    CacheWorkload idle;
    idle.arrival_rate = 0.0;
    CHECK(kv_feasibility(silt, hw, idle).feasible);
  }

  SUBCASE("index capacity binds at 37.5 GB for packet-sized objects") {
    CacheWorkload idle;
    idle.arrival_rate = 0.0;
    CHECK(kv_feasibility(silt, hw, idle).feasible);
    CacheHardware bigger = hw;
    bigger.storage_capacity_bits = 3.1e11;
    auto verdict = kv_feasibility(silt, bigger, idle);
    CHECK_FALSE(verdict.feasible);
    CHECK(verdict.violations.size() == 1);
  }

  SUBCASE("write amplification caps SILT arrivals below HashCache") {
    StorageTech ssd{"SSD", 0.3e-12, 1.6e13, 1e5};
    CacheHardware drive;
    drive.index_tech = storage::dram();
    drive.storage_tech = ssd;
    drive.storage_capacity_bits = 1e12;
    drive.object_bytes = 1500;
    CacheWorkload wl{0.0, 0.5, 0.1, 0.01};

    auto max_rate = [&](const KvScheme& scheme) {
      double lo = 0.0, hi = 1e12;
      for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        CacheWorkload w = wl;
        w.arrival_rate = mid;
        if (kv_feasibility(scheme, drive, w).feasible)
          lo = mid;
        else
          hi = mid;
      }
      return lo;
    };
    const double silt_max = max_rate(silt);
    const double hc_max = max_rate(kv::hc_setmem());
    CHECK(silt_max < hc_max);
    CHECK(silt_max / hc_max == doctest::Approx(0.055 / 0.0705).epsilon(1e-3));
  }

  SUBCASE("flash storage has no specified rate and fails rate checks") {
    CacheHardware flash_store;
    flash_store.index_tech = storage::dram();
    flash_store.storage_tech = storage::flash();
    flash_store.storage_capacity_bits = 1e12;
    flash_store.object_bytes = 1500;
    CacheWorkload wl{1e4, 0.5, 0.1, 0.01};
    auto verdict = kv_feasibility(kv::silt(), flash_store, wl);
    CHECK_FALSE(verdict.feasible);
    bool mentions_rate = false;
    for (const auto& v : verdict.violations)
      if (v.find("no specified access rate") != std::string::npos) mentions_rate = true;
    CHECK(mentions_rate);
  }

  SUBCASE("feasible region is downward closed") {
    Rng rng(1234);
    CacheWorkload wl{5e5, 0.5, 0.1, 0.01};
    for (int i = 0; i < 200; ++i) {
      CacheHardware h = hw;
      h.storage_capacity_bits = rng.next_double() * 3e11;
      CacheWorkload w = wl;
      w.arrival_rate = rng.next_double() * 6e8;
      if (kv_feasibility(silt, h, w).feasible) {
        CacheHardware smaller = h;
        smaller.storage_capacity_bits *= rng.next_double();
        CacheWorkload slower = w;
        slower.arrival_rate *= rng.next_double();
        CHECK(kv_feasibility(silt, smaller, slower).feasible);
      }
    }
  }
}

TEST_CASE("edge cache serving energy") {
  CHECK(edge_cache_energy_per_bit() == doctest::Approx(60e-9).epsilon(1e-12));
  // one gigabyte served
  CHECK(8e9 * edge_cache_energy_per_bit() == doctest::Approx(480.0).epsilon(1e-12));
  CHECK(0.0 * edge_cache_energy_per_bit() == 0.0);
}

TEST_CASE("energy per bit") {
  ForwardingModels fm = default_models();
  const RouterProfile core{"core", 16.8e3, 12.6e3, 6.4e12};

  auto full = energy_per_bit(ArchKind::IP, RouterRole::core, fm, core, 1.0);
  CHECK(full.base == doctest::Approx(16.8e3 / 6.4e12).epsilon(1e-12));

  // PCS core routers make no forwarding decisions
  auto scion_core = energy_per_bit(ArchKind::SCION, RouterRole::core, fm, core, 0.5);
  CHECK(scion_core.fwd == 0.0);
  CHECK(scion_core.cache == 0.0);

  auto scion_edge = energy_per_bit(ArchKind::SCION, RouterRole::edge, fm,
                                   profiles::ars1013_edge(0.75), 0.5);
  CHECK(scion_edge.fwd > 0.0);
  CHECK(scion_edge.cache == 0.0);

  // breakdown sums to total
  CHECK(scion_edge.total() ==
        doctest::Approx(scion_edge.base + scion_edge.fwd + scion_edge.cache).epsilon(1e-12));

  CHECK_THROWS_AS(energy_per_bit(ArchKind::IP, RouterRole::core, fm, core, 0.0),
                  std::invalid_argument);
}
