#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "psiphi/fractal.hpp"
#include "psiphi/spaces.hpp"

namespace psiphi {

/// 17-significant-digit decimal form; bit-stable across runs and platforms.
std::string format_double(double v);

/// One point per line, coordinates comma-separated, full precision. Inputs
/// are expected in canonical (sorted) order so output bytes are stable.
void write_points_csv(std::ostream& os, std::span<const Point> pts);

/// Pair clouds use 2*dim columns: first-component coords, then second.
void write_pairs_csv(std::ostream& os, std::span<const PointPair> pts);

/// Parses a CSV point cloud of the given dimension. Throws
/// std::runtime_error naming the offending line.
std::vector<Point> read_points_csv(std::istream& in, int dim);

/// Plain-text (P2) graymap: one row for 1-D sets, square for 2-D; a pixel
/// is dark iff some point snaps into its cell.
void write_pgm(std::ostream& os, const CompactSet& a, int width);

}  // namespace psiphi
