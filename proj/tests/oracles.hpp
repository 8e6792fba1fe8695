#pragma once

// Brute-force reference implementations used to freeze expected values.
// Everything here is deliberately naive and independent of the library's
// computation paths: distances scan all background pixels, disc sets are
// bitsets over the whole canvas, components come from a plain flood fill.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "skelss/binary_image.hpp"

namespace oracles {

using skelss::BinaryImage;
using skelss::PixelCoord;

// Min over all background pixels of the squared distance; -1 if the image
// has no background pixel at all.
inline std::vector<std::int64_t> brute_force_distance_map(const BinaryImage& img) {
    std::vector<PixelCoord> background;
    for (std::int32_t y = 0; y < img.height; ++y)
        for (std::int32_t x = 0; x < img.width; ++x)
            if (!img.at(x, y)) background.push_back({x, y});

    std::vector<std::int64_t> d2(static_cast<std::size_t>(img.width) * img.height, 0);
    for (std::int32_t y = 0; y < img.height; ++y) {
        for (std::int32_t x = 0; x < img.width; ++x) {
            if (!img.at(x, y)) continue;
            std::int64_t best = -1;
            for (const PixelCoord g : background) {
                const std::int64_t dd = skelss::squared_distance({x, y}, g);
                if (best < 0 || dd < best) best = dd;
            }
            d2[static_cast<std::size_t>(y) * img.width + x] = best;
        }
    }
    return d2;
}

// Dense bitset over the canvas.
struct PixelSet {
    std::vector<std::uint64_t> words;
    std::int64_t count = 0;

    explicit PixelSet(std::size_t bits) : words((bits + 63) / 64, 0) {}
    void insert(std::size_t i) {
        words[i / 64] |= std::uint64_t{1} << (i % 64);
        ++count;
    }
    bool subset_of(const PixelSet& other) const {
        for (std::size_t k = 0; k < words.size(); ++k)
            if (words[k] & ~other.words[k]) return false;
        return true;
    }
    bool operator==(const PixelSet& other) const { return words == other.words; }
};

struct OraclePoint {
    PixelCoord pos;
    std::int64_t radius2;
};

// Maximal-disc skeleton straight from the definition: a pixel survives
// unless its open disc is strictly contained in another pixel's open disc
// (equal sets keep the row-major-smaller centre). O(n^2) pairs on bitsets.
inline std::vector<OraclePoint> brute_force_skeleton(const BinaryImage& img) {
    const std::vector<std::int64_t> dist = brute_force_distance_map(img);
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;

    std::vector<PixelCoord> object;
    for (std::int32_t y = 0; y < img.height; ++y)
        for (std::int32_t x = 0; x < img.width; ++x)
            if (img.at(x, y)) object.push_back({x, y});

    std::vector<PixelSet> discs;
    discs.reserve(object.size());
    for (const PixelCoord c : object) {
        PixelSet s(n);
        const std::int64_t r2 = dist[static_cast<std::size_t>(c.y) * img.width + c.x];
        for (std::int32_t y = 0; y < img.height; ++y)
            for (std::int32_t x = 0; x < img.width; ++x)
                if (skelss::squared_distance({x, y}, c) < r2)
                    s.insert(static_cast<std::size_t>(y) * img.width + x);
        discs.push_back(std::move(s));
    }

    std::vector<OraclePoint> skel;
    for (std::size_t i = 0; i < object.size(); ++i) {
        bool excluded = false;
        for (std::size_t j = 0; j < object.size() && !excluded; ++j) {
            if (i == j) continue;
            if (discs[i].count > discs[j].count) continue;
            if (!discs[i].subset_of(discs[j])) continue;
            if (discs[i].count < discs[j].count)
                excluded = true;  // strictly contained
            else if (skelss::row_major_less(object[j], object[i]))
                excluded = true;  // identical disc sets, keep the smaller centre
        }
        if (!excluded)
            skel.push_back({object[i],
                            dist[static_cast<std::size_t>(object[i].y) * img.width +
                                 object[i].x]});
    }
    return skel;
}

// Plain flood fill over a pixel set; returns the number of components.
inline std::size_t flood_fill_component_count(std::vector<PixelCoord> pixels,
                                              int connectivity) {
    std::sort(pixels.begin(), pixels.end(), skelss::row_major_less);
    pixels.erase(std::unique(pixels.begin(), pixels.end()), pixels.end());
    std::vector<bool> seen(pixels.size(), false);
    auto find = [&](PixelCoord p) -> std::ptrdiff_t {
        auto it = std::lower_bound(pixels.begin(), pixels.end(), p,
                                   skelss::row_major_less);
        if (it == pixels.end() || !(*it == p)) return -1;
        return it - pixels.begin();
    };
    std::size_t comps = 0;
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        if (seen[i]) continue;
        ++comps;
        std::vector<std::size_t> stack{i};
        seen[i] = true;
        while (!stack.empty()) {
            const PixelCoord p = pixels[stack.back()];
            stack.pop_back();
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    if (connectivity == 4 && dx != 0 && dy != 0) continue;
                    const std::ptrdiff_t j = find({p.x + dx, p.y + dy});
                    if (j >= 0 && !seen[static_cast<std::size_t>(j)]) {
                        seen[static_cast<std::size_t>(j)] = true;
                        stack.push_back(static_cast<std::size_t>(j));
                    }
                }
            }
        }
    }
    return comps;
}

// Max squared pairwise distance over object pixels; 0 for empty objects.
inline std::int64_t brute_force_diameter2(const BinaryImage& img) {
    const std::vector<PixelCoord> obj = img.object_pixels();
    std::int64_t best = 0;
    for (std::size_t i = 0; i < obj.size(); ++i)
        for (std::size_t j = i + 1; j < obj.size(); ++j)
            best = std::max(best, skelss::squared_distance(obj[i], obj[j]));
    return best;
}

}  // namespace oracles
