#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "skelss/binary_image.hpp"

namespace skelss {

// Discrete discs are OPEN: disc(c, r2) = { p : d2(c,p) < r2 }, intersected
// with the canvas. With radii taken from the distance map this guarantees
// every disc lies inside the object, which is what makes discrete
// reconstruction exact.

inline std::int64_t isqrt(std::int64_t v) {
    if (v < 0) return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// Largest |offset| that can occur in an open disc of squared radius r2.
inline std::int32_t disc_reach(SquaredDistance r2) {
    if (r2 <= 0) return -1;
    return static_cast<std::int32_t>(isqrt(r2 - 1));
}

// Offsets (dx,dy) with dx^2+dy^2 < r2, in row-major order.
inline std::vector<PixelCoord> disc_offsets(SquaredDistance r2) {
    std::vector<PixelCoord> offs;
    const std::int32_t reach = disc_reach(r2);
    for (std::int32_t dy = -reach; dy <= reach; ++dy)
        for (std::int32_t dx = -reach; dx <= reach; ++dx)
            if (static_cast<std::int64_t>(dx) * dx +
                    static_cast<std::int64_t>(dy) * dy < r2)
                offs.push_back({dx, dy});
    return offs;
}

// Open disc around center, clipped to a width x height canvas; row-major.
inline std::vector<PixelCoord> disc_pixels(PixelCoord center, SquaredDistance r2,
                                           std::int32_t width, std::int32_t height) {
    std::vector<PixelCoord> out;
    const std::int32_t reach = disc_reach(r2);
    for (std::int32_t dy = -reach; dy <= reach; ++dy) {
        const std::int32_t y = center.y + dy;
        if (y < 0 || y >= height) continue;
        for (std::int32_t dx = -reach; dx <= reach; ++dx) {
            const std::int32_t x = center.x + dx;
            if (x < 0 || x >= width) continue;
            if (static_cast<std::int64_t>(dx) * dx +
                    static_cast<std::int64_t>(dy) * dy < r2)
                out.push_back({x, y});
        }
    }
    return out;
}

inline std::int64_t disc_pixel_count(PixelCoord center, SquaredDistance r2,
                                     std::int32_t width, std::int32_t height) {
    std::int64_t n = 0;
    const std::int32_t reach = disc_reach(r2);
    for (std::int32_t dy = -reach; dy <= reach; ++dy) {
        const std::int32_t y = center.y + dy;
        if (y < 0 || y >= height) continue;
        for (std::int32_t dx = -reach; dx <= reach; ++dx) {
            const std::int32_t x = center.x + dx;
            if (x < 0 || x >= width) continue;
            if (static_cast<std::int64_t>(dx) * dx +
                    static_cast<std::int64_t>(dy) * dy < r2)
                ++n;
        }
    }
    return n;
}

namespace detail {

// Exact test of sqrt(d2) + sqrt(ra2) <= sqrt(rb2) in integer arithmetic.
// If it holds, the open disc (a, ra2) is contained in (b, rb2) by the
// triangle inequality; the converse may fail on the grid, so this is only
// a short-circuit for the pixel-set inclusion test.
inline bool metric_containment(std::int64_t d2, std::int64_t ra2, std::int64_t rb2) {
    const std::int64_t rhs = rb2 - d2 - ra2;
    if (rhs < 0) return false;
    const __int128 lhs = static_cast<__int128>(4) * d2 * ra2;
    return lhs <= static_cast<__int128>(rhs) * rhs;
}

}  // namespace detail

// Decides disc_pixels(a, ra2) subseteq disc_pixels(b, rb2) exactly, on the
// given canvas.
inline bool disc_contained(PixelCoord a, SquaredDistance ra2, PixelCoord b,
                           SquaredDistance rb2, std::int32_t width,
                           std::int32_t height) {
    if (ra2 <= 0) return true;  // empty disc
    if (rb2 <= 0) return false;
    const std::int64_t d2 = squared_distance(a, b);
    if (detail::metric_containment(d2, ra2, rb2)) return true;
    const std::int32_t reach = disc_reach(ra2);
    for (std::int32_t dy = -reach; dy <= reach; ++dy) {
        const std::int32_t y = a.y + dy;
        if (y < 0 || y >= height) continue;
        for (std::int32_t dx = -reach; dx <= reach; ++dx) {
            const std::int32_t x = a.x + dx;
            if (x < 0 || x >= width) continue;
            if (static_cast<std::int64_t>(dx) * dx +
                    static_cast<std::int64_t>(dy) * dy >= ra2)
                continue;
            if (squared_distance({x, y}, b) >= rb2) return false;
        }
    }
    return true;
}

}  // namespace skelss
