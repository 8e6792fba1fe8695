#pragma once

#include <limits>
#include <vector>

#include "skelss/binary_image.hpp"

namespace skelss {

// Per-pixel exact squared Euclidean distance to the nearest background
// pixel. Background pixels carry 0. If the image has no background at all,
// every pixel carries the kInfinite sentinel and full_frame is set; the
// distance is undefined in that case and skeletonisation refuses the input.
struct DistanceMap {
    static constexpr SquaredDistance kInfinite =
        std::numeric_limits<SquaredDistance>::max();

    std::int32_t width = 0;
    std::int32_t height = 0;
    std::vector<SquaredDistance> d2;
    bool full_frame = false;

    SquaredDistance at(std::int32_t x, std::int32_t y) const {
        return d2[static_cast<std::size_t>(y) * width + x];
    }
    SquaredDistance at(PixelCoord p) const { return at(p.x, p.y); }
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace detail

// Two-pass exact squared EDT (column scan + per-row lower envelope of
// parabolas). All arithmetic is integral, so the result is bit-exact and
// independent of scan order.
inline DistanceMap distance_map(const BinaryImage& img) {
    const std::int32_t w = img.width, h = img.height;
    DistanceMap dm;
    dm.width = w;
    dm.height = h;
    dm.d2.assign(static_cast<std::size_t>(w) * h, 0);

    bool any_background = false;
    for (std::uint8_t m : img.mask)
        if (m == 0) { any_background = true; break; }
    if (!any_background) {
        dm.full_frame = true;
        for (auto& v : dm.d2) v = DistanceMap::kInfinite;
        return dm;
    }

    // Vertical distances. Columns without background get a value that can
    // never beat a genuine candidate: (w+h+1)^2 > (w-1)^2 + (h-1)^2.
    const std::int64_t inf1 = static_cast<std::int64_t>(w) + h + 1;
    std::vector<std::int64_t> g(static_cast<std::size_t>(w) * h);
    for (std::int32_t x = 0; x < w; ++x) {
        g[x] = img.at(x, 0) ? inf1 : 0;
        for (std::int32_t y = 1; y < h; ++y) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            g[i] = img.at(x, y) ? std::min(inf1, g[i - w] + 1) : 0;
        }
        for (std::int32_t y = h - 2; y >= 0; --y) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (g[i + w] + 1 < g[i]) g[i] = g[i + w] + 1;
        }
    }

    std::vector<std::int32_t> s(w), t(w);
    auto f = [](std::int64_t x, std::int64_t i, std::int64_t gi) {
        return (x - i) * (x - i) + gi * gi;
    };
    for (std::int32_t y = 0; y < h; ++y) {
        const std::int64_t* gy = &g[static_cast<std::size_t>(y) * w];
        int q = 0;
        s[0] = 0;
        t[0] = 0;
        for (std::int32_t u = 1; u < w; ++u) {
            while (q >= 0 && f(t[q], s[q], gy[s[q]]) > f(t[q], u, gy[u])) --q;
            if (q < 0) {
                q = 0;
                s[0] = u;
                t[0] = 0;
            } else {
                // First column where the parabola at u beats the one at s[q].
                const std::int64_t i = s[q];
                const std::int64_t sep = detail::floor_div(
                    static_cast<std::int64_t>(u) * u - i * i +
                        gy[u] * gy[u] - gy[i] * gy[i],
                    2 * (static_cast<std::int64_t>(u) - i));
                if (sep + 1 < w) {
                    ++q;
                    s[q] = u;
                    t[q] = static_cast<std::int32_t>(sep) + 1;
                }
            }
        }
        for (std::int32_t u = w - 1; u >= 0; --u) {
            dm.d2[static_cast<std::size_t>(y) * w + u] = f(u, s[q], gy[s[q]]);
            if (u == t[q]) --q;
        }
    }

    // Background pixels are exactly the zeros; object pixels are >= 1.
    return dm;
}

}  // namespace skelss
