#include "betti/report.hpp"

#include <limits>

#include "betti/errors.hpp"

namespace betti::report {

json cell_to_json(const CellId& cell) {
  json j;
  j["dim"] = cell.dim;
  j["row"] = cell.row;
  j["col"] = cell.col;
  if (cell.dim == 1) j["orientation"] = cell.orientation == Orientation::Horizontal ? "h" : "v";
  return j;
}

CellId cell_from_json(const json& j) {
  CellId c;
  c.dim = j.at("dim").get<int>();
  c.row = j.at("row").get<std::uint32_t>();
  c.col = j.at("col").get<std::uint32_t>();
  if (c.dim == 1 && j.at("orientation").get<std::string>() == "v") {
    c.orientation = Orientation::Vertical;
  }
  return c;
}

namespace {

json pixel_json(const CubicalGrid& grid, const CellId& cell) {
  const auto px = grid.critical_pixel(grid.key_of(cell));
  if (!px) return json{{"frame", true}};
  return json{{"row", px->row}, {"col", px->col}};
}

}  // namespace

json interval_to_json(const Interval& iv, const CubicalGrid* grid) {
  json j;
  j["dim"] = iv.dim;
  j["birth"] = iv.birth_value;
  j["birth_index"] = iv.birth_index;
  j["birth_cell"] = cell_to_json(iv.birth_cell);
  if (iv.essential()) {
    j["death"] = nullptr;
    j["death_index"] = nullptr;
    j["death_cell"] = nullptr;
  } else {
    j["death"] = iv.death_value;
    j["death_index"] = *iv.death_index;
    j["death_cell"] = cell_to_json(*iv.death_cell);
  }
  if (grid) {
    j["birth_pixel"] = pixel_json(*grid, iv.birth_cell);
    j["death_pixel"] = iv.essential() ? json(nullptr) : pixel_json(*grid, *iv.death_cell);
  }
  return j;
}

Interval interval_from_json(const json& j, Direction direction) {
  Interval iv;
  iv.dim = j.at("dim").get<int>();
  iv.birth_value = j.at("birth").get<double>();
  iv.birth_index = j.at("birth_index").get<std::uint32_t>();
  iv.birth_cell = cell_from_json(j.at("birth_cell"));
  if (j.at("death").is_null()) {
    const double inf = std::numeric_limits<double>::infinity();
    iv.death_value = direction == Direction::Superlevel ? -inf : inf;
  } else {
    iv.death_value = j.at("death").get<double>();
    iv.death_index = j.at("death_index").get<std::uint32_t>();
    iv.death_cell = cell_from_json(j.at("death_cell"));
  }
  return iv;
}

json barcode_to_json(const Barcode& barcode, const CubicalGrid* grid) {
  json j;
  j["direction"] = to_string(barcode.direction);
  for (int d = 0; d < 2; ++d) {
    json finite = json::array(), essential = json::array();
    for (const auto& iv : barcode.finite[d]) finite.push_back(interval_to_json(iv, grid));
    for (const auto& iv : barcode.essential[d]) essential.push_back(interval_to_json(iv, grid));
    j["dim" + std::to_string(d)] = std::move(finite);
    j["essential" + std::to_string(d)] = std::move(essential);
  }
  return j;
}

Barcode barcode_from_json(const json& j) {
  Barcode b;
  const std::string dir = j.at("direction").get<std::string>();
  if (dir == "sublevel") {
    b.direction = Direction::Sublevel;
  } else if (dir == "superlevel") {
    b.direction = Direction::Superlevel;
  } else {
    throw Error(ErrorCode::MalformedFile, "unknown direction '" + dir + "'");
  }
  for (int d = 0; d < 2; ++d) {
    for (const auto& iv : j.at("dim" + std::to_string(d))) {
      b.finite[d].push_back(interval_from_json(iv, b.direction));
    }
    for (const auto& iv : j.at("essential" + std::to_string(d))) {
      b.essential[d].push_back(interval_from_json(iv, b.direction));
    }
  }
  return b;
}

json matching_to_json(const BettiMatching& m) {
  const CubicalGrid* pg = m.pred_grid.get();
  const CubicalGrid* gg = m.gt_grid.get();
  auto pairs = [&](const std::vector<IntervalMatch>& list) {
    json a = json::array();
    for (const auto& im : list) {
      a.push_back({{"pred", interval_to_json(im.pred, pg)}, {"gt", interval_to_json(im.gt, gg)}});
    }
    return a;
  };
  auto singles = [](const std::vector<Interval>& list, const CubicalGrid* g) {
    json a = json::array();
    for (const auto& iv : list) a.push_back(interval_to_json(iv, g));
    return a;
  };
  json j;
  j["direction"] = to_string(m.options.direction);
  j["frame_value"] = m.frame_value ? json(*m.frame_value) : json(nullptr);
  for (int d = 0; d < 2; ++d) {
    const std::string key = "dim" + std::to_string(d);
    j["matched"][key] = pairs(m.matched[d]);
    j["unmatched_pred"][key] = singles(m.unmatched_pred[d], pg);
    j["unmatched_gt"][key] = singles(m.unmatched_gt[d], gg);
    j["matched_essential"][key] = pairs(m.matched_essential[d]);
    j["unmatched_essential_pred"][key] = singles(m.unmatched_essential_pred[d], pg);
    j["unmatched_essential_gt"][key] = singles(m.unmatched_essential_gt[d], gg);
  }
  return j;
}

json loss_to_json(const LossReport& report) {
  json j;
  j["loss"] = report.loss;
  json dims = json::array();
  for (const auto& t : report.per_dim) {
    dims.push_back({{"matched", t.matched},
                    {"unmatched_pred", t.unmatched_pred},
                    {"unmatched_gt", t.unmatched_gt},
                    {"total", t.total()}});
  }
  j["per_dim"] = std::move(dims);
  return j;
}

json errors_to_json(const TopologyErrors& errors) {
  return {{"dim0", errors.per_dim[0]}, {"dim1", errors.per_dim[1]}, {"total", errors.total()}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace betti::report
