#pragma once

#include "wildrisk/geo.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wildrisk {

struct Bus {
  int id = 0;
  GeoPoint location;

  friend bool operator==(const Bus&, const Bus&) = default;
};

enum class BranchKind { kLine, kLink };

/// A network edge. Lines carry a geographic route and can ignite or burn;
/// links (transformers, zero-geography ties) carry no route.
struct Branch {
  int id = 0;
  BranchKind kind = BranchKind::kLine;
  int from_bus = 0;
  int to_bus = 0;
  std::vector<GeoPoint> route;
  double length_miles = 0.0;

  bool is_line() const { return kind == BranchKind::kLine; }
  friend bool operator==(const Branch&, const Branch&) = default;
};

class GridNetwork {
 public:
  GridNetwork() = default;
  /// Validates topology and geometry and computes line lengths.
  GridNetwork(std::vector<Bus> buses, std::vector<Branch> branches);

  const std::vector<Bus>& buses() const { return buses_; }
  const std::vector<Branch>& branches() const { return branches_; }
  const Branch& branch(int id) const;
  const Bus& bus(int id) const;
  bool has_branch(int id) const { return branch_index_.contains(id); }

  friend bool operator==(const GridNetwork& l, const GridNetwork& r) {
    return l.buses_ == r.buses_ && l.branches_ == r.branches_;
  }

 private:
  std::vector<Bus> buses_;
  std::vector<Branch> branches_;  // ascending id
  std::map<int, std::size_t> branch_index_;
  std::map<int, std::size_t> bus_index_;
};

GridNetwork load_network(const std::filesystem::path& json);
GridNetwork parse_network(const std::string& json_text);
std::string network_to_json(const GridNetwork& network);
void write_network(const GridNetwork& network, const std::filesystem::path& json);

/// Lines only, ascending id.
std::vector<const Branch*> ignitable_lines(const GridNetwork& network);

/// Route rasterized segment by segment, de-duplicated, route order kept.
std::vector<GridIndex> line_cells(const Branch& line, const RasterFrame& frame);

/// Route vertices in the raster's planar frame.
std::vector<PlanarPoint> planar_route(const Branch& line, const RasterFrame& frame);

}  // namespace wildrisk
