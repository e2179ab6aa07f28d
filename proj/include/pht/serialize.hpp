#pragma once

#include <string>

#include <json.hpp>

#include "pht/glue.hpp"
#include "pht/grid.hpp"
#include "pht/persistence.hpp"
#include "pht/pht.hpp"
#include "pht/sample.hpp"

// JSON views of the computed objects. Field order is fixed so outputs diff
// cleanly; infinite deaths are written as the string "inf".
namespace pht::json {

using Json = nlohmann::ordered_json;

Json to_json(const Barcode& barcode);
Barcode barcode_from_json(const Json& j);

Json to_json(const DirectionGrid& grid);
DirectionGrid grid_from_json(const Json& j);

Json to_json(const PhtSample& sample);
PhtSample pht_sample_from_json(const Json& j);

Json to_json(const StalkReport& report);
Json to_json(const CechH0Complex& complex);
Json to_json(const ConvexityReport& report);
Json to_json(const ManifoldSpec& spec);
Json to_json(const DensityResult& density);
Json to_json(const ApproximationReport& report);

// Compact single-line dump with a trailing newline.
std::string dump_line(const Json& j);
// Indented dump with a trailing newline.
std::string dump_pretty(const Json& j);

}  // namespace pht::json
