#include "psiphi/config.hpp"

#include <fstream>

namespace psiphi {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError(field, msg);
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

Space parse_space(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object {kind, dim}");
  std::string kind = j.value("kind", "");
  if (kind == "dyadic") return Space::dyadic();
  if (kind == "euclidean") {
    int dim = j.value("dim", 1);
    if (dim < 1 || dim > 3) fail(field + ".dim", "dimension must be 1..3");
    return Space::euclidean(dim);
  }
  fail(field + ".kind", "expected \"euclidean\" or \"dyadic\"");
}

PiecewiseFn parse_piecewise(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    fail(field, "expected a nonempty array of {start, slope, intercept}");
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& p = j[i];
    std::string at = field + "[" + std::to_string(i) + "]";
    if (!p.is_object()) fail(at, "expected {start, slope, intercept}");
    Piece piece;
    piece.start = get_number(p.value("start", json(0.0)), at + ".start");
    piece.slope = get_number(p.value("slope", json(0.0)), at + ".slope");
    piece.intercept =
        get_number(p.value("intercept", json(0.0)), at + ".intercept");
    pieces.push_back(piece);
  }
  try {
    return PiecewiseFn(std::move(pieces));
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

Point parse_point(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty() || j.size() > 3)
    fail(field, "expected an array of 1..3 coordinates");
  std::vector<double> coords;
  for (std::size_t i = 0; i < j.size(); ++i)
    coords.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
  try {
    return Point::from(coords);
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

std::vector<Point> parse_points(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of points");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < j.size(); ++i)
    pts.push_back(parse_point(j[i], field + "[" + std::to_string(i) + "]"));
  return pts;
}

std::vector<PointPair> parse_pairs(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of point pairs");
  std::vector<PointPair> pairs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string at = field + "[" + std::to_string(i) + "]";
    const json& p = j[i];
    if (!p.is_array() || p.size() != 2)
      fail(at, "expected a pair of point arrays");
    pairs.emplace_back(parse_point(p[0], at + "[0]"),
                       parse_point(p[1], at + "[1]"));
  }
  return pairs;
}

AffineMap parse_affine(const json& j, const Space& space,
                       const std::string& field) {
  AffineMap m;
  const json& rows = j.value("matrix", json::array());
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(space.dim))
    fail(field + ".matrix", "expected dim x dim rows");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() ||
        rows[r].size() != static_cast<std::size_t>(space.dim))
      fail(field + ".matrix", "expected dim x dim rows");
    for (const json& v : rows[r])
      m.matrix.push_back(get_number(v, field + ".matrix"));
  }
  const json& off = j.value("offset", json::array());
  if (!off.is_array() || off.size() != static_cast<std::size_t>(space.dim))
    fail(field + ".offset", "expected dim entries");
  for (const json& v : off)
    m.offset.push_back(get_number(v, field + ".offset"));
  return m;
}

AbsAffine1D parse_abs_affine(const json& j, const std::string& field) {
  const json& branches = j.value("branches", json::array());
  if (!branches.is_array() || branches.size() != 2)
    fail(field + ".branches", "expected two branches (signs +1 and -1)");
  AbsAffine1D m;
  bool saw_pos = false, saw_neg = false;
  for (const json& b : branches) {
    double sign = get_number(b.value("sign", json(0.0)), field + ".sign");
    double slope = get_number(b.value("slope", json(0.0)), field + ".slope");
    double intercept =
        get_number(b.value("intercept", json(0.0)), field + ".intercept");
    if (sign >= 0.0) {
      m.pos_slope = slope;
      m.pos_intercept = intercept;
      saw_pos = true;
    } else {
      m.neg_slope = slope;
      m.neg_intercept = intercept;
      saw_neg = true;
    }
  }
  if (!saw_pos || !saw_neg)
    fail(field + ".branches", "branches must cover both signs");
  return m;
}

BilinearAffine parse_bilinear(const json& j, const Space& space,
                              const std::string& field) {
  BilinearAffine m;
  m.a = get_number(j.value("a", json(0.0)), field + ".a");
  m.b = get_number(j.value("b", json(0.0)), field + ".b");
  const json& c = j.value("c", json::array());
  if (!c.is_array() || c.size() != static_cast<std::size_t>(space.dim))
    fail(field + ".c", "expected dim entries");
  for (const json& v : c) m.c.push_back(get_number(v, field + ".c"));
  return m;
}

// "maps" entries land in self_maps or coupled_maps depending on the kind.
void parse_map_entry(const json& j, const Space& space,
                     const std::string& field, RunConfig& out) {
  if (!j.is_object()) fail(field, "expected a map object with a kind");
  std::string kind = j.value("kind", "");
  if (kind == "affine")
    out.self_maps.push_back({parse_affine(j, space, field), space});
  else if (kind == "abs_affine_1d") {
    if (space.dim != 1) fail(field, "abs_affine_1d needs a 1-D space");
    out.self_maps.push_back({parse_abs_affine(j, field), space});
  } else if (kind == "dyadic_halving") {
    if (space.kind != SpaceKind::Dyadic)
      fail(field, "dyadic_halving needs the dyadic space");
    out.self_maps.push_back({DyadicHalving{}, space});
  } else if (kind == "bilinear_affine")
    out.coupled_maps.push_back({parse_bilinear(j, space, field), space});
  else if (kind == "dyadic_min") {
    if (space.kind != SpaceKind::Dyadic)
      fail(field, "dyadic_min needs the dyadic space");
    out.coupled_maps.push_back({DyadicMin{}, space});
  } else
    fail(field + ".kind", "unknown map kind \"" + kind + "\"");
}

CoupledMapSpec parse_coupled_entry(const json& j, const Space& codomain,
                                   const std::string& field) {
  if (!j.is_object()) fail(field, "expected a map object with a kind");
  std::string kind = j.value("kind", "");
  if (kind == "bilinear_affine")
    return {parse_bilinear(j, codomain, field), codomain};
  if (kind == "dyadic_min") {
    if (codomain.kind != SpaceKind::Dyadic)
      fail(field, "dyadic_min needs the dyadic space");
    return {DyadicMin{}, codomain};
  }
  fail(field + ".kind", "extended factors must be bilinear_affine or dyadic_min");
}

void parse_solver_block(const json& j, SolverBlock& s) {
  if (!j.is_object()) fail("solver", "expected an object");
  if (j.contains("tol")) s.tol = get_number(j["tol"], "solver.tol");
  if (j.contains("max_iter")) {
    if (!j["max_iter"].is_number_unsigned() && !j["max_iter"].is_number_integer())
      fail("solver.max_iter", "expected an integer");
    s.max_iter = j["max_iter"].get<std::size_t>();
  }
  if (j.contains("resolution"))
    s.resolution = get_number(j["resolution"], "solver.resolution");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      fail("solver.seed", "expected an integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("samples")) {
    if (!j["samples"].is_number_unsigned() && !j["samples"].is_number_integer())
      fail("solver.samples", "expected an integer");
    s.samples = j["samples"].get<std::size_t>();
  }
  if (!(s.tol > 0.0)) fail("solver.tol", "tolerance must be positive");
  if (!(s.resolution > 0.0))
    fail("solver.resolution", "resolution must be positive");
}

void parse_output_block(const json& j, OutputBlock& o) {
  if (!j.is_object()) fail("output", "expected an object");
  if (j.contains("csv")) o.csv = j["csv"].get<std::string>();
  if (j.contains("raster")) o.raster = j["raster"].get<std::string>();
  if (j.contains("verbosity")) o.verbosity = j["verbosity"].get<int>();
  if (j.contains("raster_width")) {
    o.raster_width = j["raster_width"].get<int>();
    if (o.raster_width < 1)
      fail("output.raster_width", "width must be positive");
  }
}

}  // namespace

RunConfig builtin_config(std::string_view name) {
  if (name == "example-s2-dyadic") {
    RunConfig cfg;
    cfg.space = Space::dyadic();
    cfg.psi = PiecewiseFn({{0.0, 0.5, 0.0}, {0.5, 1.5, 0.0}, {1.0, 3.0, 0.0}});
    cfg.phis = {
        PiecewiseFn({{0.0, 0.25, 0.0}, {0.5, 1.0, 0.0}, {1.0, 2.0, 0.0}})};
    cfg.coupled_maps = {{DyadicMin{}, cfg.space}};
    cfg.start = {Point::d1(1.0), Point::d1(0.25)};
    return cfg;
  }
  if (name == "example-s4-ifs") {
    RunConfig cfg;
    cfg.space = Space::euclidean(1);
    cfg.psi = PiecewiseFn({{0.0, 2.0, 0.0}, {1.0, 3.0, 0.0}});
    cfg.phis = {PiecewiseFn({{0.0, 1.5, 0.0}, {1.0, 2.0, 0.0}}),
                PiecewiseFn({{0.0, 1.0, 0.0}, {1.0, 2.5, 0.0}})};
    cfg.self_maps = {
        {AbsAffine1D{2.0 / 3.0, 0.0, -2.0 / 3.0, 0.0}, cfg.space},
        {AbsAffine1D{1.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0}, cfg.space}};
    cfg.a0 = {Point::d1(0.0)};
    return cfg;
  }
  fail("builtin", "unknown builtin \"" + std::string(name) + "\"");
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("", "configuration must be a JSON object");

  RunConfig cfg;
  if (doc.contains("builtin")) {
    if (!doc["builtin"].is_string()) fail("builtin", "expected a string");
    cfg = builtin_config(doc["builtin"].get<std::string>());
  }

  if (doc.contains("space")) cfg.space = parse_space(doc["space"], "space");
  if (doc.contains("right_space"))
    cfg.right_space = parse_space(doc["right_space"], "right_space");

  if (doc.contains("psi")) cfg.psi = parse_piecewise(doc["psi"], "psi");
  if (doc.contains("phi")) {
    const json& phis = doc["phi"];
    if (!phis.is_array() || phis.empty())
      fail("phi", "expected a nonempty array of piece lists");
    cfg.phis.clear();
    for (std::size_t i = 0; i < phis.size(); ++i)
      cfg.phis.push_back(
          parse_piecewise(phis[i], "phi[" + std::to_string(i) + "]"));
  }

  if (doc.contains("maps")) {
    const json& maps = doc["maps"];
    if (!maps.is_array() || maps.empty())
      fail("maps", "expected a nonempty array of map objects");
    cfg.self_maps.clear();
    cfg.coupled_maps.clear();
    for (std::size_t i = 0; i < maps.size(); ++i)
      parse_map_entry(maps[i], cfg.space, "maps[" + std::to_string(i) + "]",
                      cfg);
  }

  if (doc.contains("extended")) {
    const json& e = doc["extended"];
    if (!e.is_object() || !e.contains("t") || !e.contains("s"))
      fail("extended", "expected {t: <map>, s: <map>}");
    Space right = cfg.right_space.value_or(cfg.space);
    cfg.extended = ExtendedPairSpec{
        parse_coupled_entry(e["t"], cfg.space, "extended.t"),
        parse_coupled_entry(e["s"], right, "extended.s")};
  }

  if (doc.contains("start")) cfg.start = parse_points(doc["start"], "start");
  if (doc.contains("a0")) cfg.a0 = parse_points(doc["a0"], "a0");
  if (doc.contains("c0")) cfg.c0 = parse_pairs(doc["c0"], "c0");

  if (doc.contains("solver")) parse_solver_block(doc["solver"], cfg.solver);
  if (doc.contains("output")) parse_output_block(doc["output"], cfg.output);
  if (doc.contains("assume_closed_graph")) {
    if (!doc["assume_closed_graph"].is_boolean())
      fail("assume_closed_graph", "expected a boolean");
    cfg.assume_closed_graph = doc["assume_closed_graph"].get<bool>();
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("config", "cannot open \"" + path + "\"");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    fail("config", e.what());
  }
  return parse_config(doc);
}

}  // namespace psiphi
