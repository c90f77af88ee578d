#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "entropic/conjugation.hpp"
#include "entropic/laguerre.hpp"
#include "entropic/measures.hpp"
#include "json.hpp"

namespace entropic {

using Json = nlohmann::json;

/// {"kind": "interval" | "circle" | "polygon", "vertices": [[x, y], ...],
///  "density": {"values": [...], "nx": n, "ny": n}}. Vertices and density are
/// optional.
Json to_json(const Domain& d);
DomainPtr domain_from_json(const Json& j);
/// "interval", "circle", "square", inline JSON, or a path to a JSON file.
DomainPtr parse_domain(const std::string& text);

/// Measures carry their domain. Types: "discrete", "empirical", "piecewise",
/// "grid" (grid rebuilt from the domain and its resolution).
Json to_json(const Measure& mu);
Measure measure_from_json(const Json& j);

Json to_json(const Potential& phi);
Potential potential_from_json(const Json& j);

/// Cells are recomputed from sites and offsets on reading.
Json to_json(const Tessellation& t);
Tessellation tessellation_from_json(const Json& j);

/// 17 significant digits.
std::string format_double(double v);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// "x,y" rows (or "w,x,y" with weights) with a header line.
std::string points_csv(const std::vector<Point>& points, const std::vector<double>& weights = {});
void write_points_csv(const std::filesystem::path& path, const std::vector<Point>& points,
                      const std::vector<double>& weights = {});

/// FNV-1a of the domain's canonical JSON, 16 hex digits.
std::string domain_hash(const Domain& d);

}  // namespace entropic
