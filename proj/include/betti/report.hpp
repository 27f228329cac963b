#pragma once

#include <string>

#include <json.hpp>

#include "betti/matching.hpp"
#include "betti/persistence.hpp"

namespace betti::report {

using nlohmann::json;

inline constexpr const char* kToolName = "betti-match";
inline constexpr const char* kVersion = "1.0.0";

json cell_to_json(const CellId& cell);
CellId cell_from_json(const json& j);

/// Interval with its refined cells and, when a grid is given, the critical
/// pixels of both cells in unpadded coordinates ({"frame": true} for frame
/// pixels). Essential deaths serialize as null.
json interval_to_json(const Interval& iv, const CubicalGrid* grid);
Interval interval_from_json(const json& j, Direction direction);

json barcode_to_json(const Barcode& barcode, const CubicalGrid* grid);
/// Inverse of barcode_to_json for the interval lists (sweep bookkeeping is
/// not serialized).
Barcode barcode_from_json(const json& j);

json matching_to_json(const BettiMatching& matching);
json loss_to_json(const LossReport& report);
json errors_to_json(const TopologyErrors& errors);

/// Pretty-printed, keys sorted, shortest round-trip float formatting.
std::string dump(const json& j);

}  // namespace betti::report
