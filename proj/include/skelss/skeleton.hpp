#pragma once

#include <algorithm>
#include <array>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "skelss/binary_image.hpp"
#include "skelss/disc.hpp"
#include "skelss/distance_map.hpp"

namespace skelss {

// A medial point: object pixel plus the squared radius of its maximal
// inscribed disc, i.e. the distance-map value at its position.
struct MedialPoint {
    PixelCoord pos;
    SquaredDistance radius2 = 0;

    friend bool operator==(const MedialPoint& a, const MedialPoint& b) {
        return a.pos == b.pos && a.radius2 == b.radius2;
    }
};

// Finite set of medial points plus the source canvas dimensions. Points
// are kept sorted row-major with unique positions.
struct Skeleton {
    std::int32_t width = 0;
    std::int32_t height = 0;
    std::vector<MedialPoint> points;

    Skeleton() = default;
    Skeleton(std::int32_t w, std::int32_t h) : width(w), height(h) {}

    void normalize() {
        std::sort(points.begin(), points.end(),
                  [](const MedialPoint& a, const MedialPoint& b) {
                      return row_major_less(a.pos, b.pos);
                  });
    }

    std::vector<PixelCoord> positions() const {
        std::vector<PixelCoord> out;
        out.reserve(points.size());
        for (const auto& p : points) out.push_back(p.pos);
        return out;
    }

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }

    friend bool operator==(const Skeleton& a, const Skeleton& b) {
        return a.width == b.width && a.height == b.height && a.points == b.points;
    }
};

// Skeletonisation requires a bounded object: an image with no background
// pixel has an undefined distance map.
struct FullFrameError : std::runtime_error {
    FullFrameError()
        : std::runtime_error(
              "skeletonisation: image has no background pixel, distance to "
              "the complement is undefined") {}
};

namespace detail {

// Shared offset cache for the handful of distinct radii in one image.
class DiscCache {
  public:
    const std::vector<PixelCoord>& offsets(SquaredDistance r2) {
        auto it = offsets_.find(r2);
        if (it == offsets_.end())
            it = offsets_.emplace(r2, disc_offsets(r2)).first;
        return it->second;
    }

  private:
    std::unordered_map<SquaredDistance, std::vector<PixelCoord>> offsets_;
};

// Canvas-clipped subset check: every in-canvas pixel of disc(a) must lie in
// disc(b). Discs of border-touching objects can stick out of the canvas, so
// the clipped sets are the ones that matter.
inline bool subset_by_enumeration(PixelCoord a, SquaredDistance ra2,
                                  PixelCoord b, SquaredDistance rb2,
                                  const std::vector<PixelCoord>& offs_a,
                                  std::int32_t width, std::int32_t height) {
    for (const PixelCoord off : offs_a) {
        const PixelCoord p{a.x + off.x, a.y + off.y};
        if (p.x < 0 || p.x >= width || p.y < 0 || p.y >= height) continue;
        if (squared_distance(p, b) >= rb2) return false;
    }
    return true;
}

}  // namespace detail

// Maximal-disc skeleton: the object pixels whose disc is not strictly
// contained in the disc of any other object pixel. Two distinct pixels can
// carry identical clipped disc sets when the object touches the canvas
// border; the row-major-smaller centre is kept as the canonical
// representative. For objects with a background margin discs never clip,
// identical sets cannot occur, and the result commutes exactly with the
// on-grid transform group.
inline Skeleton exact_skeleton(const BinaryImage& img, const DistanceMap& dm) {
    if (dm.full_frame) throw FullFrameError();
    const std::int32_t w = img.width, h = img.height;
    Skeleton skel(w, h);
    if (img.empty_object()) return skel;

    detail::DiscCache cache;
    SquaredDistance max_r2 = 0;
    for (std::int32_t y = 0; y < h; ++y)
        for (std::int32_t x = 0; x < w; ++x)
            if (img.at(x, y)) max_r2 = std::max(max_r2, dm.at(x, y));
    const std::int32_t reach = disc_reach(max_r2);

    // Clipped disc sizes, memoized lazily per pixel.
    std::vector<std::int64_t> clipped(static_cast<std::size_t>(w) * h, -1);
    auto clipped_count = [&](PixelCoord c, SquaredDistance r2) {
        std::int64_t& slot = clipped[static_cast<std::size_t>(c.y) * w + c.x];
        if (slot < 0) slot = disc_pixel_count(c, r2, w, h);
        return slot;
    };

    for (std::int32_t y = 0; y < h; ++y) {
        for (std::int32_t x = 0; x < w; ++x) {
            if (!img.at(x, y)) continue;
            const PixelCoord p{x, y};
            const SquaredDistance rp2 = dm.at(x, y);
            const std::int64_t cnt_p = clipped_count(p, rp2);
            const auto& offs_p = cache.offsets(rp2);
            bool excluded = false;

            // Candidates q must satisfy p in disc(q), so scanning the
            // max-radius window around p is exhaustive.
            for (std::int32_t qy = std::max(0, y - reach);
                 !excluded && qy <= std::min(h - 1, y + reach); ++qy) {
                for (std::int32_t qx = std::max(0, x - reach);
                     qx <= std::min(w - 1, x + reach); ++qx) {
                    if (qx == x && qy == y) continue;
                    if (!img.at(qx, qy)) continue;
                    const PixelCoord q{qx, qy};
                    const SquaredDistance rq2 = dm.at(qx, qy);
                    const std::int64_t d2 = squared_distance(p, q);
                    if (d2 >= rq2) continue;  // p not even inside disc(q)
                    const std::int64_t cnt_q = clipped_count(q, rq2);
                    if (cnt_p > cnt_q) continue;
                    const bool contained =
                        detail::metric_containment(d2, rp2, rq2) ||
                        detail::subset_by_enumeration(p, rp2, q, rq2, offs_p, w, h);
                    if (!contained) continue;
                    if (cnt_p < cnt_q || row_major_less(q, p)) {
                        excluded = true;
                        break;
                    }
                }
            }
            if (!excluded) skel.points.push_back({p, rp2});
        }
    }
    return skel;
}

namespace detail {

// Neighbour bit order around a pixel, row-major:
//   0 1 2
//   3 . 4
//   5 6 7
constexpr std::array<std::array<std::int32_t, 2>, 8> kNeighbours8 = {{
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};

// Deletability table for (8-object, 4-background) connectivity: a pixel is
// simple iff its object neighbours form one 8-connected component and the
// background touches it through exactly one 4-connected component.
inline const std::array<bool, 256>& simple_point_lut() {
    static const std::array<bool, 256> lut = [] {
        std::array<bool, 256> t{};
        for (int mask = 0; mask < 256; ++mask) {
            auto obj = [&](int dx, int dy) -> bool {
                for (int k = 0; k < 8; ++k)
                    if (kNeighbours8[k][0] == dx && kNeighbours8[k][1] == dy)
                        return (mask >> k) & 1;
                return false;
            };
            // 8-components of object cells in the ring.
            int obj_comps = 0;
            std::array<bool, 8> seen{};
            for (int k = 0; k < 8; ++k) {
                if (!((mask >> k) & 1) || seen[k]) continue;
                ++obj_comps;
                std::vector<int> stack{k};
                seen[k] = true;
                while (!stack.empty()) {
                    const int c = stack.back();
                    stack.pop_back();
                    for (int j = 0; j < 8; ++j) {
                        if (!((mask >> j) & 1) || seen[j]) continue;
                        const int ddx = kNeighbours8[c][0] - kNeighbours8[j][0];
                        const int ddy = kNeighbours8[c][1] - kNeighbours8[j][1];
                        if (ddx >= -1 && ddx <= 1 && ddy >= -1 && ddy <= 1) {
                            seen[j] = true;
                            stack.push_back(j);
                        }
                    }
                }
            }
            // 4-components of background cells that contain a 4-neighbour
            // of the centre.
            int bg_comps = 0;
            std::array<bool, 8> bseen{};
            for (int k : {1, 3, 4, 6}) {  // N, W, E, S
                if (((mask >> k) & 1) || bseen[k]) continue;
                ++bg_comps;
                std::vector<int> stack{k};
                bseen[k] = true;
                while (!stack.empty()) {
                    const int c = stack.back();
                    stack.pop_back();
                    for (int j = 0; j < 8; ++j) {
                        if (((mask >> j) & 1) || bseen[j]) continue;
                        const int ddx = kNeighbours8[c][0] - kNeighbours8[j][0];
                        const int ddy = kNeighbours8[c][1] - kNeighbours8[j][1];
                        if ((ddx == 0 && (ddy == 1 || ddy == -1)) ||
                            (ddy == 0 && (ddx == 1 || ddx == -1))) {
                            bseen[j] = true;
                            stack.push_back(j);
                        }
                    }
                }
            }
            (void)obj;
            t[mask] = (obj_comps == 1) && (bg_comps == 1);
        }
        return t;
    }();
    return lut;
}

}  // namespace detail

// Thin homotopic skeleton: iteratively removes topologically simple,
// non-anchor boundary pixels in ascending distance order (ties broken
// row-major). Anchors are the non-strict local maxima of the squared
// distance map under the 8-neighbourhood, so ridge plateaus survive.
// The result keeps the object's 8-connected component count and supports
// only under-reconstruction; the deficit is for the caller to report.
inline Skeleton thinned_skeleton(const BinaryImage& img, const DistanceMap& dm) {
    if (dm.full_frame) throw FullFrameError();
    const std::int32_t w = img.width, h = img.height;
    Skeleton skel(w, h);
    if (img.empty_object()) return skel;

    std::vector<std::uint8_t> in_set(img.mask);
    auto at_set = [&](std::int32_t x, std::int32_t y) -> bool {
        return x >= 0 && x < w && y >= 0 && y < h &&
               in_set[static_cast<std::size_t>(y) * w + x] != 0;
    };

    std::vector<std::uint8_t> anchor(static_cast<std::size_t>(w) * h, 0);
    for (std::int32_t y = 0; y < h; ++y) {
        for (std::int32_t x = 0; x < w; ++x) {
            if (!img.at(x, y)) continue;
            const SquaredDistance v = dm.at(x, y);
            bool is_max = true;
            for (const auto& o : detail::kNeighbours8) {
                const std::int32_t nx = x + o[0], ny = y + o[1];
                const SquaredDistance nv =
                    (nx >= 0 && nx < w && ny >= 0 && ny < h) ? dm.at(nx, ny) : 0;
                if (nv > v) { is_max = false; break; }
            }
            if (is_max) anchor[static_cast<std::size_t>(y) * w + x] = 1;
        }
    }

    auto is_boundary = [&](std::int32_t x, std::int32_t y) {
        return !at_set(x, y - 1) || !at_set(x - 1, y) || !at_set(x + 1, y) ||
               !at_set(x, y + 1);
    };
    auto neighbour_mask = [&](std::int32_t x, std::int32_t y) {
        int mask = 0;
        for (int k = 0; k < 8; ++k)
            if (at_set(x + detail::kNeighbours8[k][0],
                       y + detail::kNeighbours8[k][1]))
                mask |= 1 << k;
        return mask;
    };

    using Entry = std::tuple<SquaredDistance, std::int32_t, std::int32_t>;  // d2, y, x
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
    for (std::int32_t y = 0; y < h; ++y)
        for (std::int32_t x = 0; x < w; ++x)
            if (img.at(x, y) && is_boundary(x, y))
                queue.push({dm.at(x, y), y, x});

    const auto& lut = detail::simple_point_lut();
    while (!queue.empty()) {
        const auto [d2, y, x] = queue.top();
        queue.pop();
        if (!at_set(x, y)) continue;
        if (!is_boundary(x, y)) continue;
        if (anchor[static_cast<std::size_t>(y) * w + x]) continue;
        if (!lut[neighbour_mask(x, y)]) continue;
        in_set[static_cast<std::size_t>(y) * w + x] = 0;
        for (const auto& o : detail::kNeighbours8) {
            const std::int32_t nx = x + o[0], ny = y + o[1];
            if (at_set(nx, ny) && is_boundary(nx, ny))
                queue.push({dm.at(nx, ny), ny, nx});
        }
    }

    for (std::int32_t y = 0; y < h; ++y)
        for (std::int32_t x = 0; x < w; ++x)
            if (in_set[static_cast<std::size_t>(y) * w + x])
                skel.points.push_back({{x, y}, dm.at(x, y)});
    return skel;
}

// Object transform: union of the open discs of all medial points.
inline BinaryImage reconstruct(const Skeleton& skel) {
    BinaryImage img(skel.width, skel.height);
    for (const auto& mp : skel.points) {
        const std::int32_t reach = disc_reach(mp.radius2);
        for (std::int32_t dy = -reach; dy <= reach; ++dy) {
            const std::int32_t y = mp.pos.y + dy;
            if (y < 0 || y >= skel.height) continue;
            for (std::int32_t dx = -reach; dx <= reach; ++dx) {
                const std::int32_t x = mp.pos.x + dx;
                if (x < 0 || x >= skel.width) continue;
                if (static_cast<std::int64_t>(dx) * dx +
                        static_cast<std::int64_t>(dy) * dy < mp.radius2)
                    img.set(x, y, true);
            }
        }
    }
    return img;
}

// --- SKEL2 text format -----------------------------------------------------
// Header "SKEL2 <width> <height> <count>", then one "x y radius2" record per
// line, sorted row-major. Bit-exact and diff-friendly.

inline std::string save_skeleton(const Skeleton& skel) {
    std::string out = "SKEL2 " + std::to_string(skel.width) + " " +
                      std::to_string(skel.height) + " " +
                      std::to_string(skel.points.size()) + "\n";
    for (const auto& mp : skel.points)
        out += std::to_string(mp.pos.x) + " " + std::to_string(mp.pos.y) +
               " " + std::to_string(mp.radius2) + "\n";
    return out;
}

inline Skeleton load_skeleton(std::string_view text) {
    auto fail = [](const std::string& what) {
        throw std::runtime_error("SKEL2: " + what);
    };
    std::size_t pos = 0;
    auto next_token = [&]() -> std::string_view {
        while (pos < text.size() &&
               (text[pos] == ' ' || text[pos] == '\n' || text[pos] == '\r' ||
                text[pos] == '\t'))
            ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] != ' ' && text[pos] != '\n' &&
               text[pos] != '\r' && text[pos] != '\t')
            ++pos;
        return text.substr(start, pos - start);
    };
    auto next_int = [&](const char* what) -> std::int64_t {
        const std::string_view tok = next_token();
        if (tok.empty()) fail(std::string("expected ") + what);
        std::int64_t v = 0;
        bool neg = false;
        std::size_t i = 0;
        if (tok[0] == '-') { neg = true; i = 1; }
        for (; i < tok.size(); ++i) {
            if (tok[i] < '0' || tok[i] > '9')
                fail(std::string("bad integer for ") + what);
            v = v * 10 + (tok[i] - '0');
        }
        return neg ? -v : v;
    };

    if (next_token() != "SKEL2") fail("bad magic");
    Skeleton skel;
    skel.width = static_cast<std::int32_t>(next_int("width"));
    skel.height = static_cast<std::int32_t>(next_int("height"));
    if (skel.width <= 0 || skel.height <= 0) fail("dimensions must be positive");
    const std::int64_t count = next_int("count");
    if (count < 0) fail("negative count");
    skel.points.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        MedialPoint mp;
        mp.pos.x = static_cast<std::int32_t>(next_int("x"));
        mp.pos.y = static_cast<std::int32_t>(next_int("y"));
        mp.radius2 = next_int("radius2");
        if (mp.pos.x < 0 || mp.pos.x >= skel.width || mp.pos.y < 0 ||
            mp.pos.y >= skel.height)
            fail("point outside canvas");
        if (mp.radius2 < 1) fail("radius2 must be >= 1");
        skel.points.push_back(mp);
    }
    skel.normalize();
    for (std::size_t i = 1; i < skel.points.size(); ++i)
        if (skel.points[i].pos == skel.points[i - 1].pos)
            fail("duplicate point position");
    return skel;
}

}  // namespace skelss
