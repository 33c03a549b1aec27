#include "psiphi/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace psiphi {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_coords(std::ostream& os, const Point& p, bool leading_comma) {
  for (int i = 0; i < p.dim(); ++i) {
    if (leading_comma || i > 0) os << ',';
    os << format_double(p[i]);
  }
}

}  // namespace

void write_points_csv(std::ostream& os, std::span<const Point> pts) {
  for (const Point& p : pts) {
    write_coords(os, p, false);
    os << '\n';
  }
}

void write_pairs_csv(std::ostream& os, std::span<const PointPair> pts) {
  for (const PointPair& z : pts) {
    write_coords(os, z.first, false);
    write_coords(os, z.second, true);
    os << '\n';
  }
}

std::vector<Point> read_points_csv(std::istream& in, int dim) {
  std::vector<Point> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> coords;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      try {
        std::size_t used = 0;
        coords.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("bad number on CSV line " +
                                 std::to_string(lineno));
      }
    }
    if (coords.size() != static_cast<std::size_t>(dim))
      throw std::runtime_error("CSV line " + std::to_string(lineno) +
                               " has the wrong dimension");
    pts.push_back(Point::from(coords));
  }
  return pts;
}

void write_pgm(std::ostream& os, const CompactSet& a, int width) {
  if (a.space().kind != SpaceKind::Euclidean || a.space().dim > 2)
    throw std::invalid_argument(
        "rasters are available for 1-D and 2-D euclidean sets only");
  const int dim = a.space().dim;
  double lo[2] = {a.points().front()[0], 0.0};
  double hi[2] = {a.points().front()[0], 0.0};
  if (dim == 2) lo[1] = hi[1] = a.points().front()[1];
  for (const Point& p : a.points())
    for (int i = 0; i < dim; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  auto cell_of = [&](double v, int axis) {
    double extent = hi[axis] - lo[axis];
    if (extent <= 0.0) return 0;
    int c = static_cast<int>(std::floor((v - lo[axis]) / extent * width));
    return std::clamp(c, 0, width - 1);
  };

  const int height = dim == 2 ? width : 1;
  std::vector<int> dark(static_cast<std::size_t>(width) * height, 0);
  for (const Point& p : a.points()) {
    int cx = cell_of(p[0], 0);
    // Image rows run top-down; the y axis runs bottom-up.
    int cy = dim == 2 ? (height - 1 - cell_of(p[1], 1)) : 0;
    dark[static_cast<std::size_t>(cy) * width + cx] = 1;
  }

  os << "P2\n" << width << ' ' << height << "\n255\n";
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (x > 0) os << ' ';
      os << (dark[static_cast<std::size_t>(y) * width + x] ? 0 : 255);
    }
    os << '\n';
  }
}

}  // namespace psiphi
