#include "wildrisk/grid_network.hpp"

#include "text_util.hpp"
#include "wildrisk/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace wildrisk {

namespace {

constexpr double kEndpointToleranceDeg = 1e-6;

bool near(const GeoPoint& a, const GeoPoint& b) {
  return std::abs(a.lat - b.lat) <= kEndpointToleranceDeg && std::abs(a.lon - b.lon) <= kEndpointToleranceDeg;
}

}  // namespace

GridNetwork::GridNetwork(std::vector<Bus> buses, std::vector<Branch> branches)
    : buses_(std::move(buses)), branches_(std::move(branches)) {
  std::sort(buses_.begin(), buses_.end(), [](const Bus& a, const Bus& b) { return a.id < b.id; });
  std::sort(branches_.begin(), branches_.end(), [](const Branch& a, const Branch& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < buses_.size(); ++i) {
    validate(buses_[i].location);
    if (!bus_index_.emplace(buses_[i].id, i).second) {
      fail(ErrorKind::kTopology, "duplicate bus id " + std::to_string(buses_[i].id));
    }
  }
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    Branch& b = branches_[i];
    const std::string who = "branch " + std::to_string(b.id);
    if (!branch_index_.emplace(b.id, i).second) fail(ErrorKind::kTopology, "duplicate branch id " + std::to_string(b.id));
    for (int end : {b.from_bus, b.to_bus}) {
      if (!bus_index_.contains(end)) fail(ErrorKind::kTopology, who + " references missing bus " + std::to_string(end));
    }
    if (!b.is_line()) {
      if (!b.route.empty()) fail(ErrorKind::kGeometry, who + " is a link but carries a route");
      b.length_miles = 0.0;
      continue;
    }
    if (b.route.size() < 2) {
      fail(ErrorKind::kGeometry, who + " is a line with " + std::to_string(b.route.size()) + " route point(s); need >= 2");
    }
    if (!near(b.route.front(), bus(b.from_bus).location) || !near(b.route.back(), bus(b.to_bus).location)) {
      fail(ErrorKind::kGeometry, who + " route endpoints do not coincide with its buses");
    }
    b.length_miles = polyline_length(b.route);
    if (!(b.length_miles > 0.0)) fail(ErrorKind::kGeometry, who + " has zero length");
  }
}

const Branch& GridNetwork::branch(int id) const {
  const auto it = branch_index_.find(id);
  if (it == branch_index_.end()) fail(ErrorKind::kTopology, "unknown branch id " + std::to_string(id));
  return branches_[it->second];
}

const Bus& GridNetwork::bus(int id) const {
  const auto it = bus_index_.find(id);
  if (it == bus_index_.end()) fail(ErrorKind::kTopology, "unknown bus id " + std::to_string(id));
  return buses_[it->second];
}

GridNetwork parse_network(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::kInvalidInput, std::string("network JSON: ") + e.what());
  }
  std::vector<Bus> buses;
  std::vector<Branch> branches;
  try {
    for (const json& jb : doc.at("buses")) {
      buses.push_back({jb.at("id").get<int>(), {jb.at("lat").get<double>(), jb.at("lon").get<double>()}});
    }
    for (const json& jb : doc.at("branches")) {
      Branch b;
      b.id = jb.at("id").get<int>();
      const std::string kind = jb.at("kind").get<std::string>();
      if (kind == "line") b.kind = BranchKind::kLine;
      else if (kind == "link") b.kind = BranchKind::kLink;
      else fail(ErrorKind::kInvalidInput, "branch " + std::to_string(b.id) + " has unknown kind '" + kind + "'");
      b.from_bus = jb.at("from").get<int>();
      b.to_bus = jb.at("to").get<int>();
      if (jb.contains("route")) {
        for (const json& p : jb.at("route")) {
          if (!p.is_array() || p.size() != 2) fail(ErrorKind::kInvalidInput, "route point must be [lat, lon]");
          b.route.push_back({p[0].get<double>(), p[1].get<double>()});
        }
      }
      branches.push_back(std::move(b));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kInvalidInput, std::string("network JSON: ") + e.what());
  }
  return GridNetwork(std::move(buses), std::move(branches));
}

GridNetwork load_network(const std::filesystem::path& path) {
  return parse_network(detail::read_file(path));
}

std::string network_to_json(const GridNetwork& network) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["buses"] = ordered_json::array();
  for (const Bus& b : network.buses()) {
    doc["buses"].push_back({{"id", b.id}, {"lat", b.location.lat}, {"lon", b.location.lon}});
  }
  doc["branches"] = ordered_json::array();
  for (const Branch& b : network.branches()) {
    ordered_json jb{{"id", b.id}, {"kind", b.is_line() ? "line" : "link"}, {"from", b.from_bus}, {"to", b.to_bus}};
    if (b.is_line()) {
      jb["route"] = ordered_json::array();
      for (const GeoPoint& p : b.route) jb["route"].push_back({p.lat, p.lon});
    }
    doc["branches"].push_back(std::move(jb));
  }
  return doc.dump(1) + "\n";
}

void write_network(const GridNetwork& network, const std::filesystem::path& path) {
  detail::write_file(path, network_to_json(network));
}

std::vector<const Branch*> ignitable_lines(const GridNetwork& network) {
  std::vector<const Branch*> out;
  for (const Branch& b : network.branches()) {
    if (b.is_line()) out.push_back(&b);
  }
  return out;
}

std::vector<PlanarPoint> planar_route(const Branch& line, const RasterFrame& frame) {
  std::vector<PlanarPoint> pts;
  pts.reserve(line.route.size());
  for (const GeoPoint& p : line.route) pts.push_back(frame.to_planar(p));
  return pts;
}

std::vector<GridIndex> line_cells(const Branch& line, const RasterFrame& frame) {
  if (!line.is_line()) fail(ErrorKind::kInvalidInput, "branch " + std::to_string(line.id) + " is a link");
  const std::vector<PlanarPoint> pts = planar_route(line, frame);
  std::vector<GridIndex> out;
  std::set<GridIndex> seen;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    std::vector<GridIndex> seg;
    try {
      seg = traverse_cells(pts[i], pts[i + 1], frame.grid());
    } catch (const Error& e) {
      fail(ErrorKind::kOutOfBounds, "line " + std::to_string(line.id) + " route leaves the raster: " + e.what());
    }
    for (GridIndex g : seg) {
      if (seen.insert(g).second) out.push_back(g);
    }
  }
  return out;
}

}  // namespace wildrisk
