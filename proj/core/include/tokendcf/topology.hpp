#pragma once

#include <vector>

#include "tokendcf/sim_time.hpp"

namespace tokendcf {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

struct LinkGeometry {
  double distance_m;
  bool in_tx_range;
  bool in_cs_range;

  friend bool operator==(const LinkGeometry&, const LinkGeometry&) = default;
};

/// Station positions plus the two fixed radii of the protocol interference
/// model. Range predicates are inclusive at the boundary.
class Topology {
 public:
  Topology(std::vector<Position> positions, double tx_range_m, double cs_range_m,
           double area_side_m);

  std::size_t size() const { return positions_.size(); }
  const Position& position(StationId id) const;
  const std::vector<Position>& positions() const { return positions_; }
  double tx_range() const { return tx_range_; }
  double cs_range() const { return cs_range_; }
  double area_side() const { return area_side_; }

  /// Throws std::out_of_range for an unknown station.
  LinkGeometry link_geometry(StationId a, StationId b) const;

  bool is_clique() const;

 private:
  std::vector<Position> positions_;
  double tx_range_;
  double cs_range_;
  double area_side_;
};

}  // namespace tokendcf
