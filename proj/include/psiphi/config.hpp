#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "psiphi/fractal.hpp"
#include "psiphi/piecewise.hpp"
#include "psiphi/solver.hpp"
#include "psiphi/spaces.hpp"

namespace psiphi {

/// Malformed or inconsistent configuration; carries the offending field.
struct ConfigError : std::runtime_error {
  std::string field;

  ConfigError(std::string field_, const std::string& message)
      : std::runtime_error(message), field(std::move(field_)) {}
};

struct SolverBlock {
  double tol = 1e-10;
  std::size_t max_iter = 100000;
  double resolution = 1e-3;
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
};

struct OutputBlock {
  std::string csv;
  std::string raster;
  int verbosity = 1;
  int raster_width = 800;
};

/// Parsed run configuration. The "builtin" key loads a frozen fixture
/// ("example-s2-dyadic" or "example-s4-ifs") first; every other present
/// field then overrides it.
struct RunConfig {
  Space space{};
  std::optional<Space> right_space;  // extended pairs; defaults to space
  std::optional<PiecewiseFn> psi;
  std::vector<PiecewiseFn> phis;
  std::vector<SelfMapSpec> self_maps;
  std::vector<CoupledMapSpec> coupled_maps;
  std::optional<ExtendedPairSpec> extended;
  std::vector<Point> start;       // iteration start point(s)
  std::vector<Point> a0;          // attractor seed points
  std::vector<PointPair> c0;      // coupled attractor seed pairs
  SolverBlock solver{};
  OutputBlock output{};
  bool assume_closed_graph = false;
};

/// The frozen example fixtures, by name. Throws ConfigError("builtin") for
/// unknown names.
RunConfig builtin_config(std::string_view name);

RunConfig parse_config(const nlohmann::json& doc);

RunConfig load_config_file(const std::string& path);

}  // namespace psiphi
