#ifndef FIAPOWER_ROUTER_HPP
#define FIAPOWER_ROUTER_HPP

#include <stdexcept>
#include <string>

namespace fiapower {

enum class RouterRole { core, edge, leaf };

inline const char* to_string(RouterRole r) {
  switch (r) {
    case RouterRole::core: return "core";
    case RouterRole::edge: return "edge";
    default: return "leaf";
  }
}

// Nameplate, idle and peak throughput of one router class. Vendors do not
// publish idle draw, so presets derive it from a configurable fraction of
// nameplate.
struct RouterProfile {
  std::string name;
  double nameplate_w = 0.0;
  double idle_w = 0.0;
  double max_throughput_bps = 0.0;

  void validate() const {
    if (idle_w < 0.0 || idle_w > nameplate_w)
      throw std::invalid_argument("RouterProfile " + name + ": need 0 <= idle <= nameplate");
    if (max_throughput_bps <= 0.0)
      throw std::invalid_argument("RouterProfile " + name + ": max_throughput must be > 0");
  }
};

namespace profiles {

inline RouterProfile crs1_core(double idle_fraction = 0.75) {
  return {"CRS-1", 16.8e3, 16.8e3 * idle_fraction, 6.4e12};
}

inline RouterProfile ars1013_edge(double idle_fraction = 0.75) {
  return {"ARS-1013", 4.0e3, 4.0e3 * idle_fraction, 0.28e12};
}

// small access router terminating an aggregation-tree leaf
inline RouterProfile access_leaf(double idle_fraction = 0.75, double nameplate_w = 18.0,
                                 double max_bps = 1e9) {
  return {"AR-1G", nameplate_w, nameplate_w * idle_fraction, max_bps};
}

}  // namespace profiles
}  // namespace fiapower

#endif
