#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "skelss/binary_image.hpp"

namespace skelss {

enum class Connectivity { Four = 4, Eight = 8 };

// Maximal connected subsets of an arbitrary pixel set. Deterministic:
// components are sorted by their row-major-smallest pixel and pixels
// within each component are sorted row-major.
inline std::vector<std::vector<PixelCoord>> connected_components(
    std::vector<PixelCoord> pixels, Connectivity conn) {
    std::sort(pixels.begin(), pixels.end(), row_major_less);
    pixels.erase(std::unique(pixels.begin(), pixels.end()), pixels.end());

    std::unordered_map<std::int64_t, std::int32_t> id;
    id.reserve(pixels.size() * 2);
    for (std::size_t i = 0; i < pixels.size(); ++i)
        id.emplace(coord_key(pixels[i]), static_cast<std::int32_t>(i));

    static constexpr int off4[4][2] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};
    static constexpr int off8[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                       {1, 0},   {-1, 1}, {0, 1},  {1, 1}};
    const int noff = (conn == Connectivity::Four) ? 4 : 8;
    const auto* offs = (conn == Connectivity::Four) ? off4 : off8;

    std::vector<std::vector<PixelCoord>> out;
    std::vector<bool> seen(pixels.size(), false);
    std::vector<std::int32_t> stack;
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        if (seen[i]) continue;
        std::vector<PixelCoord> comp;
        stack.push_back(static_cast<std::int32_t>(i));
        seen[i] = true;
        while (!stack.empty()) {
            const std::int32_t cur = stack.back();
            stack.pop_back();
            comp.push_back(pixels[cur]);
            for (int k = 0; k < noff; ++k) {
                const PixelCoord n{pixels[cur].x + offs[k][0],
                                   pixels[cur].y + offs[k][1]};
                auto it = id.find(coord_key(n));
                if (it != id.end() && !seen[it->second]) {
                    seen[it->second] = true;
                    stack.push_back(it->second);
                }
            }
        }
        std::sort(comp.begin(), comp.end(), row_major_less);
        out.push_back(std::move(comp));
    }
    // Seeds were visited in row-major order, so components are already
    // ordered by smallest pixel.
    return out;
}

inline std::size_t component_count(const std::vector<PixelCoord>& pixels,
                                   Connectivity conn) {
    return connected_components(pixels, conn).size();
}

inline std::size_t object_component_count(const BinaryImage& img,
                                          Connectivity conn) {
    return component_count(img.object_pixels(), conn);
}

}  // namespace skelss
