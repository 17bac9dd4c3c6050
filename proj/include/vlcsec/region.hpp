#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "vlcsec/avg_bounds.hpp"
#include "vlcsec/peak_bounds.hpp"
#include "vlcsec/scenario.hpp"

namespace vlcsec {

// Receiver-plane raster. Cells are evaluated at their centers:
// x_i = x0 + (i + 0.5) dx, same for y.
struct FloorGrid {
    double x0 = 0.0, x1 = 0.0;
    double y0 = 0.0, y1 = 0.0;
    int nx = 0, ny = 0;
    double z = 0.0;
};

enum class RegionBound { AvgUpper, PeakUpper };

using RegionConstraints = std::variant<AvgConstraints, PeakConstraints>;

// Per-cell upper-bound values and the insecure mask. Storage is row-major
// with x fastest: index = iy * nx + ix. The mask tracks the security test
// (true where the eavesdropper position defeats it); values hold the
// clamped upper bound, zero on masked cells. A secure cell may also carry
// value zero when its raw bound is negative, so the mask, not the value,
// is the security verdict.
struct RegionMap {
    FloorGrid grid;
    std::vector<double> values;
    std::vector<std::uint8_t> insecure;

    std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * grid.nx + ix; }
};

// Sweeps the eavesdropper over the grid (the scenario's own eve position is
// ignored), evaluating the selected upper bound per cell. The bound tag must
// match the constraints alternative. Cells are independent; `threads` > 1
// splits them into contiguous chunks with deterministic output.
RegionMap insecure_region(const Scenario& s, const FloorGrid& grid, RegionBound bound,
                          const RegionConstraints& constraints, int threads = 1);

// CSV with header x,y,bound_nats,insecure; one row per cell in storage
// order; 9 significant digits; LF line endings.
void export_region_csv(const RegionMap& m, std::ostream& out);
void export_region_csv(const RegionMap& m, const std::string& path);

}  // namespace vlcsec
