#include "vlcsec/region.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "parallel.hpp"

namespace vlcsec {

namespace {

void check_grid(const FloorGrid& grid) {
    if (grid.nx < 2 || grid.ny < 2)
        throw std::invalid_argument("region grid needs at least 2 cells per axis");
    if (!(grid.x1 > grid.x0) || !(grid.y1 > grid.y0))
        throw std::invalid_argument("region grid extents must be positive");
}

}  // namespace

RegionMap insecure_region(const Scenario& s, const FloorGrid& grid, RegionBound bound,
                          const RegionConstraints& constraints, int threads) {
    check_grid(grid);
    const bool avg_requested = bound == RegionBound::AvgUpper;
    if (avg_requested != std::holds_alternative<AvgConstraints>(constraints))
        throw std::invalid_argument("region bound selector does not match the constraint kind");
    if (threads < 1) throw std::invalid_argument("thread count must be at least 1");

    const double h_b = channel_gain(s.alice, s.bob, s.pd);
    const double dx = (grid.x1 - grid.x0) / grid.nx;
    const double dy = (grid.y1 - grid.y0) / grid.ny;

    RegionMap m;
    m.grid = grid;
    const int n = grid.nx * grid.ny;
    m.values.assign(static_cast<std::size_t>(n), 0.0);
    m.insecure.assign(static_cast<std::size_t>(n), 0);

    detail::parallel_for(n, threads, [&](int idx) {
        const int iy = idx / grid.nx;
        const int ix = idx % grid.nx;
        const Position eve{grid.x0 + (ix + 0.5) * dx, grid.y0 + (iy + 0.5) * dy, grid.z};
        const LinkGains g{h_b, channel_gain(s.alice, eve, s.pd)};
        if (!is_degraded_secure(g, s.sigma_B, s.sigma_E)) {
            m.insecure[static_cast<std::size_t>(idx)] = 1;
            return;
        }
        const double upper = avg_requested
                                 ? upper_bound_avg(g, std::get<AvgConstraints>(constraints),
                                                   s.sigma_B, s.sigma_E)
                                 : upper_bound_peak(g, std::get<PeakConstraints>(constraints),
                                                    s.sigma_B, s.sigma_E);
        m.values[static_cast<std::size_t>(idx)] = std::max(0.0, upper);
    });
    return m;
}

void export_region_csv(const RegionMap& m, std::ostream& out) {
    out << "x,y,bound_nats,insecure\n";
    const double dx = (m.grid.x1 - m.grid.x0) / m.grid.nx;
    const double dy = (m.grid.y1 - m.grid.y0) / m.grid.ny;
    char line[128];
    for (int iy = 0; iy < m.grid.ny; ++iy) {
        for (int ix = 0; ix < m.grid.nx; ++ix) {
            const std::size_t idx = m.index(ix, iy);
            std::snprintf(line, sizeof line, "%.9g,%.9g,%.9g,%d\n",
                          m.grid.x0 + (ix + 0.5) * dx, m.grid.y0 + (iy + 0.5) * dy,
                          m.values[idx], static_cast<int>(m.insecure[idx]));
            out << line;
        }
    }
}

void export_region_csv(const RegionMap& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open region csv for writing: " + path);
    export_region_csv(m, out);
    out.flush();
    if (!out) throw std::runtime_error("write failure on region csv: " + path);
}

}  // namespace vlcsec
