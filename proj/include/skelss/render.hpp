#pragma once

#include <string>
#include <vector>

#include "skelss/netpbm.hpp"
#include "skelss/point_class.hpp"
#include "skelss/scale_space.hpp"

namespace skelss {

// Fixed grayscale palette for frame overlays; values are part of the
// output contract and golden-tested.
namespace palette {
inline constexpr std::uint8_t kBackground = 255;
inline constexpr std::uint8_t kObject = 192;
inline constexpr std::uint8_t kSkeleton = 64;
inline constexpr std::uint8_t kEndpoint = 32;
inline constexpr std::uint8_t kBranching = 0;
}  // namespace palette

inline std::vector<std::uint8_t> render_frame_pixels(const ScaleSpaceFrame& frame) {
    const std::int32_t w = frame.image.width, h = frame.image.height;
    std::vector<std::uint8_t> gray(static_cast<std::size_t>(w) * h,
                                   palette::kBackground);
    for (std::size_t i = 0; i < gray.size(); ++i)
        if (frame.image.mask[i]) gray[i] = palette::kObject;

    const std::vector<PixelCoord> positions = frame.sigma.positions();
    for (const PixelCoord p : positions)
        gray[static_cast<std::size_t>(p.y) * w + p.x] = palette::kSkeleton;
    const Classification cls = classify_points(positions);
    for (const PixelCoord p : cls.endpoints)
        gray[static_cast<std::size_t>(p.y) * w + p.x] = palette::kEndpoint;
    for (const PixelCoord p : cls.branching)
        gray[static_cast<std::size_t>(p.y) * w + p.x] = palette::kBranching;
    return gray;
}

// Raw PGM with background 255, object 192, skeleton 64, endpoints 32,
// branching points 0.
inline std::string render_frame(const ScaleSpaceFrame& frame) {
    return save_pgm(frame.image.width, frame.image.height,
                    render_frame_pixels(frame));
}

}  // namespace skelss
