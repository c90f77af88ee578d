#include "entropic/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "entropic/error.hpp"

namespace entropic {

namespace {

const char* kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::kInterval:
      return "interval";
    case DomainKind::kCircle:
      return "circle";
    case DomainKind::kPolygon:
      return "polygon";
  }
  return "?";
}

Json point_json(Point p) { return Json::array({p.x, p.y}); }

Point read_point(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw InputError("point must be a number or [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json points_json(const std::vector<Point>& pts, bool one_d) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(one_d ? Json(p.x) : point_json(p));
  return a;
}

std::vector<Point> read_points(const Json& j) {
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(read_point(p));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json to_json(const Domain& d) {
  Json j{{"kind", kind_name(d.kind())}};
  if (d.kind() == DomainKind::kPolygon) j["vertices"] = points_json(d.polygon().vertices, false);
  if (!d.uniform()) {
    j["density"] = {{"values", d.density_values()}, {"nx", d.density_nx()}, {"ny", d.density_ny()}};
  }
  return j;
}

DomainPtr domain_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  Domain d = Domain::interval();
  if (kind == "interval") {
    d = Domain::interval();
  } else if (kind == "circle") {
    d = Domain::circle();
  } else if (kind == "square") {
    d = Domain::unit_square();
  } else if (kind == "polygon") {
    d = Domain::polygon(read_points(field(j, "vertices")));
  } else {
    throw InputError("unknown domain kind \"" + kind + "\"");
  }
  if (j.contains("density")) {
    const Json& s = j.at("density");
    d = d.with_density(field(s, "values").get<std::vector<double>>(), field(s, "nx").get<int>(),
                       s.value("ny", 1));
  }
  return make_domain(std::move(d));
}

DomainPtr parse_domain(const std::string& text) {
  if (text == "interval" || text == "circle" || text == "square") return domain_from_json({{"kind", text}});
  if (!text.empty() && text.front() == '{') return domain_from_json(Json::parse(text));
  if (std::filesystem::exists(text)) return domain_from_json(read_json(text));
  throw InputError("unknown domain \"" + text + "\"");
}

Json to_json(const Measure& mu) {
  const bool one_d = mu.domain().is_one_dimensional();
  Json j{{"domain", to_json(mu.domain())}, {"type", mu.type_name()}};
  if (const auto* d = mu.get_if<DiscreteMeasure>()) {
    j["atoms"] = points_json(d->atoms, one_d);
    j["weights"] = d->weights;
  } else if (const auto* g = mu.get_if<GridDensity>()) {
    j["resolution"] = g->grid->resolution;
    j["density"] = g->density;
  } else if (const auto* e = mu.get_if<EmpiricalMeasure>()) {
    j["points"] = points_json(e->points, one_d);
  } else if (const auto* l = mu.get_if<LineMeasure>()) {
    Json atoms = Json::array();
    for (const auto& a : l->atoms()) atoms.push_back({{"x", a.x}, {"w", a.w}});
    Json slabs = Json::array();
    for (const auto& s : l->slabs()) slabs.push_back({{"a", s.a}, {"b", s.b}, {"w", s.w}});
    j["atoms"] = atoms;
    j["slabs"] = slabs;
  }
  return j;
}

Measure measure_from_json(const Json& j) {
  DomainPtr d = domain_from_json(field(j, "domain"));
  const std::string type = field(j, "type").get<std::string>();
  if (type == "discrete") {
    return Measure::discrete(d, read_points(field(j, "atoms")), field(j, "weights").get<std::vector<double>>());
  }
  if (type == "empirical") return Measure::empirical(d, read_points(field(j, "points")));
  if (type == "grid") {
    auto grid = build_grid(d, field(j, "resolution").get<int>());
    return Measure::grid_density(grid, field(j, "density").get<std::vector<double>>(), false);
  }
  if (type == "piecewise") {
    std::vector<Atom1D> atoms;
    for (const auto& a : field(j, "atoms")) atoms.push_back({a.at("x").get<double>(), a.at("w").get<double>()});
    std::vector<Slab> slabs;
    for (const auto& s : field(j, "slabs"))
      slabs.push_back({s.at("a").get<double>(), s.at("b").get<double>(), s.at("w").get<double>()});
    return Measure::piecewise(d, LineMeasure(std::move(atoms), std::move(slabs)));
  }
  throw InputError("unknown measure type \"" + type + "\"");
}

Json to_json(const Potential& phi) {
  return {{"domain", to_json(*phi.grid->domain)},
          {"resolution", phi.grid->resolution},
          {"values", phi.values},
          {"c_convex_verified", phi.c_convex_verified}};
}

Potential potential_from_json(const Json& j) {
  auto grid = build_grid(domain_from_json(field(j, "domain")), field(j, "resolution").get<int>());
  Potential p = Potential::make(grid, field(j, "values").get<std::vector<double>>());
  p.c_convex_verified = j.value("c_convex_verified", false);
  return p;
}

Json to_json(const Tessellation& t) {
  Json cells = Json::array();
  for (const auto& c : t.cells) cells.push_back({{"vertices", points_json(c.vertices, false)}, {"neighbours", c.labels}});
  return {{"domain", to_json(*t.domain)}, {"sites", points_json(t.sites, false)},
          {"alpha", t.alpha},             {"power_weights", t.power_weights()},
          {"masses", t.masses},           {"cells", cells},
          {"iterations", t.iterations},   {"residual", t.residual}};
}

Tessellation tessellation_from_json(const Json& j) {
  Tessellation t = laguerre_cells(domain_from_json(field(j, "domain")), read_points(field(j, "sites")),
                                  field(j, "alpha").get<std::vector<double>>());
  t.iterations = j.value("iterations", 0);
  t.residual = j.contains("residual") && j["residual"].is_number() ? j["residual"].get<double>() : 0.0;
  return t;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::string points_csv(const std::vector<Point>& points, const std::vector<double>& weights) {
  std::string s = weights.empty() ? "x,y\n" : "w,x,y\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!weights.empty()) s += format_double(weights[i]) + ",";
    s += format_double(points[i].x) + "," + format_double(points[i].y) + "\n";
  }
  return s;
}

void write_points_csv(const std::filesystem::path& path, const std::vector<Point>& points,
                      const std::vector<double>& weights) {
  write_text(path, points_csv(points, weights));
}

std::string domain_hash(const Domain& d) {
  const std::string s = to_json(d).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace entropic
