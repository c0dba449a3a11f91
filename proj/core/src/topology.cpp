#include "tokendcf/topology.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tokendcf {

Topology::Topology(std::vector<Position> positions, double tx_range_m, double cs_range_m,
                   double area_side_m)
    : positions_(std::move(positions)),
      tx_range_(tx_range_m),
      cs_range_(cs_range_m),
      area_side_(area_side_m) {
  if (!(tx_range_ > 0.0) || !(cs_range_ > 0.0)) {
    throw std::invalid_argument("Topology: ranges must be positive");
  }
  if (tx_range_ > cs_range_) {
    throw std::invalid_argument("Topology: tx_range must not exceed cs_range");
  }
}

const Position& Topology::position(StationId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= positions_.size()) {
    throw std::out_of_range("Topology: unknown station " + std::to_string(id));
  }
  return positions_[static_cast<std::size_t>(id)];
}

LinkGeometry Topology::link_geometry(StationId a, StationId b) const {
  const Position& pa = position(a);
  const Position& pb = position(b);
  const double d = std::hypot(pa.x - pb.x, pa.y - pb.y);
  return LinkGeometry{d, d <= tx_range_, d <= cs_range_};
}

bool Topology::is_clique() const {
  const auto n = static_cast<StationId>(size());
  for (StationId a = 0; a < n; ++a) {
    for (StationId b = a + 1; b < n; ++b) {
      if (!link_geometry(a, b).in_cs_range) return false;
    }
  }
  return true;
}

}  // namespace tokendcf
