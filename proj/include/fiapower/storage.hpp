#ifndef FIAPOWER_STORAGE_HPP
#define FIAPOWER_STORAGE_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace fiapower {

// A memory technology: static power per stored bit plus capacity and
// access-rate ceilings. max_rate_hz is absent for technologies whose
// datasheets give no access rate (raw flash); rate checks against such a
// technology report an explicit violation instead of passing silently.
struct StorageTech {
  std::string name;
  double power_per_bit_w = 0.0;
  double max_capacity_bits = 0.0;
  std::optional<double> max_rate_hz;

  void validate() const {
    if (power_per_bit_w <= 0.0) throw std::invalid_argument("StorageTech " + name + ": power_per_bit must be > 0");
    if (max_capacity_bits <= 0.0) throw std::invalid_argument("StorageTech " + name + ": max_capacity must be > 0");
    if (max_rate_hz && *max_rate_hz <= 0.0) throw std::invalid_argument("StorageTech " + name + ": max_rate must be > 0");
  }
};

namespace storage {

inline StorageTech tcam() { return {"TCAM", 3e-6, 32e6, 360e6}; }
inline StorageTech sram() { return {"SRAM", 40e-9, 200e6, 633e6}; }
inline StorageTech dram() { return {"DRAM", 250e-12, 5.12e11, 1.333e9}; }  // 64 GB
inline StorageTech flash() { return {"Flash", 0.3e-12, 1.6e13, std::nullopt}; }  // 2 TB, no rate spec

// Multi-chip arrays: same cell power and frequency, capacity ganged up to
// whatever the configuration needs (at least one chip).
inline StorageTech sram_array(double bits) {
  StorageTech t = sram();
  if (bits > t.max_capacity_bits) t.max_capacity_bits = bits;
  return t;
}
inline StorageTech dram_array(double bits) {
  StorageTech t = dram();
  if (bits > t.max_capacity_bits) t.max_capacity_bits = bits;
  return t;
}
inline StorageTech tcam_array(double bits) {
  StorageTech t = tcam();
  if (bits > t.max_capacity_bits) t.max_capacity_bits = bits;
  return t;
}

}  // namespace storage
}  // namespace fiapower

#endif
