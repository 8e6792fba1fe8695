#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace skelss {

// All coordinates are 0-based, x = column, y = row. Row-major order
// (y first, then x) is the canonical ordering everywhere: file formats,
// tie-breaking, iteration.
struct PixelCoord {
    std::int32_t x = 0;
    std::int32_t y = 0;

    friend bool operator==(PixelCoord a, PixelCoord b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(PixelCoord a, PixelCoord b) { return !(a == b); }
};

inline bool row_major_less(PixelCoord a, PixelCoord b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
}

// Exact squared Euclidean distance between pixel centres. Every distance
// comparison in this library is an integer comparison of squared values.
using SquaredDistance = std::int64_t;

inline SquaredDistance squared_distance(PixelCoord a, PixelCoord b) {
    const std::int64_t dx = a.x - b.x;
    const std::int64_t dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Rectangular bitmask. mask[y*width + x] is 1 for object, 0 for background.
struct BinaryImage {
    std::int32_t width = 0;
    std::int32_t height = 0;
    std::vector<std::uint8_t> mask;

    BinaryImage() = default;
    BinaryImage(std::int32_t w, std::int32_t h)
        : width(w), height(h), mask(static_cast<std::size_t>(w) * h, 0) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("BinaryImage: dimensions must be positive");
    }

    std::size_t index(std::int32_t x, std::int32_t y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    bool in_bounds(std::int32_t x, std::int32_t y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
    bool in_bounds(PixelCoord p) const { return in_bounds(p.x, p.y); }

    bool at(std::int32_t x, std::int32_t y) const { return mask[index(x, y)] != 0; }
    bool at(PixelCoord p) const { return at(p.x, p.y); }
    void set(std::int32_t x, std::int32_t y, bool v) {
        mask[index(x, y)] = v ? 1 : 0;
    }
    void set(PixelCoord p, bool v) { set(p.x, p.y, v); }

    std::int64_t object_count() const {
        std::int64_t n = 0;
        for (std::uint8_t m : mask) n += (m != 0);
        return n;
    }

    // Object pixels in row-major order.
    std::vector<PixelCoord> object_pixels() const {
        std::vector<PixelCoord> out;
        for (std::int32_t y = 0; y < height; ++y)
            for (std::int32_t x = 0; x < width; ++x)
                if (at(x, y)) out.push_back({x, y});
        return out;
    }

    bool empty_object() const { return object_count() == 0; }

    friend bool operator==(const BinaryImage& a, const BinaryImage& b) {
        return a.width == b.width && a.height == b.height && a.mask == b.mask;
    }
    friend bool operator!=(const BinaryImage& a, const BinaryImage& b) {
        return !(a == b);
    }
};

// Packs a coordinate into a single sortable key; valid for |x|,|y| < 2^31.
inline std::int64_t coord_key(PixelCoord p) {
    return (static_cast<std::int64_t>(p.y) << 32) |
           static_cast<std::uint32_t>(p.x);
}

}  // namespace skelss
