#pragma once

#include <stdexcept>
#include <string>

#include "skelss/binary_image.hpp"

namespace skelss {

// The on-grid transform group: translations, quarter-turn rotations and
// axis mirrorings. Rotations are clockwise.
enum class TransformKind {
    Translate,
    Rotate90,
    Rotate180,
    Rotate270,
    MirrorHorizontal,  // flips left-right
    MirrorVertical,    // flips top-bottom
};

// Canvas handling for translations. Clip keeps the canvas and treats any
// object pixel leaving it as an error; Grow enlarges the canvas on the
// right/bottom as needed. Coordinates are never rebased, so a negative
// shift that would move an object pixel below (0,0) is an error under
// either policy.
enum class CanvasPolicy { Clip, Grow };

struct Transform {
    TransformKind kind = TransformKind::Rotate90;
    std::int32_t dx = 0;
    std::int32_t dy = 0;
    CanvasPolicy policy = CanvasPolicy::Grow;

    static Transform translate(std::int32_t dx, std::int32_t dy,
                               CanvasPolicy policy = CanvasPolicy::Grow) {
        return {TransformKind::Translate, dx, dy, policy};
    }
    static Transform rotate90() { return {TransformKind::Rotate90, 0, 0, CanvasPolicy::Grow}; }
    static Transform rotate180() { return {TransformKind::Rotate180, 0, 0, CanvasPolicy::Grow}; }
    static Transform rotate270() { return {TransformKind::Rotate270, 0, 0, CanvasPolicy::Grow}; }
    static Transform mirror_horizontal() { return {TransformKind::MirrorHorizontal, 0, 0, CanvasPolicy::Grow}; }
    static Transform mirror_vertical() { return {TransformKind::MirrorVertical, 0, 0, CanvasPolicy::Grow}; }
};

struct TransformError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canvas dimensions after applying t to a width x height canvas.
inline std::pair<std::int32_t, std::int32_t> transformed_size(
    const Transform& t, std::int32_t width, std::int32_t height) {
    switch (t.kind) {
        case TransformKind::Rotate90:
        case TransformKind::Rotate270:
            return {height, width};
        case TransformKind::Translate:
            if (t.policy == CanvasPolicy::Grow)
                return {width + std::max(t.dx, std::int32_t{0}),
                        height + std::max(t.dy, std::int32_t{0})};
            return {width, height};
        default:
            return {width, height};
    }
}

// Image of a single pixel under t on a width x height canvas. The result
// may be out of bounds for translations; callers handle policy.
inline PixelCoord map_point(const Transform& t, std::int32_t width,
                            std::int32_t height, PixelCoord p) {
    switch (t.kind) {
        case TransformKind::Translate:
            return {p.x + t.dx, p.y + t.dy};
        case TransformKind::Rotate90:
            return {height - 1 - p.y, p.x};
        case TransformKind::Rotate180:
            return {width - 1 - p.x, height - 1 - p.y};
        case TransformKind::Rotate270:
            return {p.y, width - 1 - p.x};
        case TransformKind::MirrorHorizontal:
            return {width - 1 - p.x, p.y};
        case TransformKind::MirrorVertical:
            return {p.x, height - 1 - p.y};
    }
    return p;
}

// Applies t; the output object set is the exact image of the input set.
inline BinaryImage apply_transform(const BinaryImage& img, const Transform& t) {
    const auto [ow, oh] = transformed_size(t, img.width, img.height);
    BinaryImage out(ow, oh);
    for (std::int32_t y = 0; y < img.height; ++y) {
        for (std::int32_t x = 0; x < img.width; ++x) {
            if (!img.at(x, y)) continue;
            const PixelCoord q = map_point(t, img.width, img.height, {x, y});
            if (!out.in_bounds(q))
                throw TransformError(
                    "transform: object pixel (" + std::to_string(x) + "," +
                    std::to_string(y) + ") maps outside the canvas");
            out.set(q, true);
        }
    }
    return out;
}

}  // namespace skelss
