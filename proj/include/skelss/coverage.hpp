#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "skelss/disc.hpp"
#include "skelss/skeleton.hpp"

namespace skelss {

// Per-pixel count of how many current medial discs cover the pixel.
// count(p) > 0 iff p is in the reconstructed object; `covered` tracks the
// object area incrementally.
struct CoverageGrid {
    std::int32_t width = 0;
    std::int32_t height = 0;
    std::vector<std::int32_t> counts;
    std::int64_t covered = 0;

    std::int32_t at(std::int32_t x, std::int32_t y) const {
        return counts[static_cast<std::size_t>(y) * width + x];
    }
    std::int32_t at(PixelCoord p) const { return at(p.x, p.y); }
};

namespace detail {

template <typename Fn>
void for_disc_pixel(PixelCoord c, SquaredDistance r2, std::int32_t w,
                    std::int32_t h, Fn&& fn) {
    const std::int32_t reach = disc_reach(r2);
    for (std::int32_t dy = -reach; dy <= reach; ++dy) {
        const std::int32_t y = c.y + dy;
        if (y < 0 || y >= h) continue;
        for (std::int32_t dx = -reach; dx <= reach; ++dx) {
            const std::int32_t x = c.x + dx;
            if (x < 0 || x >= w) continue;
            if (static_cast<std::int64_t>(dx) * dx +
                    static_cast<std::int64_t>(dy) * dy < r2)
                fn(static_cast<std::size_t>(y) * w + x);
        }
    }
}

}  // namespace detail

inline CoverageGrid coverage_grid(const Skeleton& skel) {
    CoverageGrid grid;
    grid.width = skel.width;
    grid.height = skel.height;
    grid.counts.assign(static_cast<std::size_t>(skel.width) * skel.height, 0);
    for (const MedialPoint& mp : skel.points)
        detail::for_disc_pixel(mp.pos, mp.radius2, grid.width, grid.height,
                               [&](std::size_t i) {
                                   if (grid.counts[i]++ == 0) ++grid.covered;
                               });
    return grid;
}

// Removes one disc; exactly undoes its contribution.
inline void remove_disc(CoverageGrid& grid, const MedialPoint& mp) {
    detail::for_disc_pixel(mp.pos, mp.radius2, grid.width, grid.height,
                           [&](std::size_t i) {
                               if (--grid.counts[i] == 0) --grid.covered;
                           });
}

// |I_{l,{c}}|: pixels of the current object covered by this disc alone.
inline std::int64_t single_point_impact(const CoverageGrid& grid,
                                        const MedialPoint& mp) {
    std::int64_t n = 0;
    detail::for_disc_pixel(mp.pos, mp.radius2, grid.width, grid.height,
                           [&](std::size_t i) { n += grid.counts[i] == 1; });
    return n;
}

// |I_{l,S}| for a set of medial points: pixels whose full coverage comes
// from S.
inline std::int64_t set_impact(const CoverageGrid& grid,
                               std::span<const MedialPoint> pts) {
    std::unordered_map<std::size_t, std::int32_t> local;
    for (const MedialPoint& mp : pts)
        detail::for_disc_pixel(mp.pos, mp.radius2, grid.width, grid.height,
                               [&](std::size_t i) { ++local[i]; });
    std::int64_t n = 0;
    for (const auto& [i, cnt] : local)
        if (cnt == grid.counts[i]) ++n;
    return n;
}

// I_{l,S} as a pixel set: O_l minus the union of the discs of Sigma_l \ S.
// S must be a subset of the skeleton's positions.
inline std::vector<PixelCoord> reconstruction_impact(
    const CoverageGrid& grid, const Skeleton& skel,
    std::span<const PixelCoord> subset) {
    std::vector<MedialPoint> pts;
    pts.reserve(subset.size());
    for (const PixelCoord p : subset) {
        auto it = std::lower_bound(
            skel.points.begin(), skel.points.end(), p,
            [](const MedialPoint& mp, PixelCoord q) {
                return row_major_less(mp.pos, q);
            });
        if (it == skel.points.end() || !(it->pos == p))
            throw std::invalid_argument(
                "reconstruction_impact: S is not a subset of the skeleton");
        pts.push_back(*it);
    }

    std::unordered_map<std::size_t, std::int32_t> local;
    for (const MedialPoint& mp : pts)
        detail::for_disc_pixel(mp.pos, mp.radius2, grid.width, grid.height,
                               [&](std::size_t i) { ++local[i]; });
    std::vector<PixelCoord> out;
    for (const auto& [i, cnt] : local)
        if (cnt == grid.counts[i])
            out.push_back({static_cast<std::int32_t>(i % grid.width),
                           static_cast<std::int32_t>(i / grid.width)});
    std::sort(out.begin(), out.end(), row_major_less);
    return out;
}

}  // namespace skelss
