#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "skelss/binary_image.hpp"

namespace skelss {

// 8-neighbourhood pattern classes of skeleton pixels.
//
// endpoint:  at most one skeleton neighbour; or exactly two that are
//            8-adjacent to each other; or exactly three that all lie in one
//            row or column side of the pixel (all above, below, left, or
//            right).
// branching: at least three skeleton neighbours, no two of which are
//            4-adjacent to each other. Checked first when patterns overlap.
// simple:    everything else.
enum class PointClass : std::uint8_t { Endpoint, Branching, Simple };

struct Classification {
    std::unordered_map<std::int64_t, PointClass> by_pixel;
    std::vector<PixelCoord> endpoints;  // sorted row-major
    std::vector<PixelCoord> branching;  // sorted row-major
    std::vector<PixelCoord> simple;     // sorted row-major

    PointClass at(PixelCoord p) const {
        auto it = by_pixel.find(coord_key(p));
        if (it == by_pixel.end())
            throw std::invalid_argument("Classification: pixel not classified");
        return it->second;
    }
    bool is_branching(PixelCoord p) const {
        auto it = by_pixel.find(coord_key(p));
        return it != by_pixel.end() && it->second == PointClass::Branching;
    }
    std::int64_t complexity() const {
        return static_cast<std::int64_t>(endpoints.size() + branching.size());
    }
};

namespace detail {

constexpr std::array<std::array<std::int32_t, 2>, 8> kClassNeighbours = {{
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};

inline bool four_adjacent(PixelCoord a, PixelCoord b) {
    const std::int32_t dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const std::int32_t dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx + dy == 1;
}

inline bool eight_adjacent(PixelCoord a, PixelCoord b) {
    const std::int32_t dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const std::int32_t dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx <= 1 && dy <= 1 && (dx | dy) != 0;
}

}  // namespace detail

inline Classification classify_points(std::span<const PixelCoord> points) {
    std::unordered_set<std::int64_t> in_set;
    in_set.reserve(points.size() * 2);
    for (const PixelCoord p : points) in_set.insert(coord_key(p));

    Classification out;
    out.by_pixel.reserve(points.size() * 2);

    std::vector<PixelCoord> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), row_major_less);

    for (const PixelCoord p : sorted) {
        std::vector<PixelCoord> nb;
        for (const auto& o : detail::kClassNeighbours) {
            const PixelCoord q{p.x + o[0], p.y + o[1]};
            if (in_set.count(coord_key(q))) nb.push_back(q);
        }

        PointClass cls = PointClass::Simple;
        bool no_pair_4adjacent = true;
        for (std::size_t i = 0; i < nb.size() && no_pair_4adjacent; ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (detail::four_adjacent(nb[i], nb[j])) {
                    no_pair_4adjacent = false;
                    break;
                }

        if (nb.size() >= 3 && no_pair_4adjacent) {
            cls = PointClass::Branching;
        } else if (nb.size() <= 1) {
            cls = PointClass::Endpoint;
        } else if (nb.size() == 2 && detail::eight_adjacent(nb[0], nb[1])) {
            cls = PointClass::Endpoint;
        } else if (nb.size() == 3) {
            const bool above = nb[0].y == p.y - 1 && nb[1].y == p.y - 1 && nb[2].y == p.y - 1;
            const bool below = nb[0].y == p.y + 1 && nb[1].y == p.y + 1 && nb[2].y == p.y + 1;
            const bool left = nb[0].x == p.x - 1 && nb[1].x == p.x - 1 && nb[2].x == p.x - 1;
            const bool right = nb[0].x == p.x + 1 && nb[1].x == p.x + 1 && nb[2].x == p.x + 1;
            if (above || below || left || right) cls = PointClass::Endpoint;
        }

        out.by_pixel.emplace(coord_key(p), cls);
        switch (cls) {
            case PointClass::Endpoint: out.endpoints.push_back(p); break;
            case PointClass::Branching: out.branching.push_back(p); break;
            case PointClass::Simple: out.simple.push_back(p); break;
        }
    }
    return out;
}

// A branch: chain a_1..a_k of 8-connected pixels whose interior is simple
// and whose ends are end- or branching points. Isolated points appear as
// degenerate length-1 arcs so pruning can remove them.
struct Arc {
    std::vector<PixelCoord> pixels;
    PointClass first_class = PointClass::Endpoint;
    PointClass last_class = PointClass::Endpoint;

    bool contains_endpoint() const {
        return first_class == PointClass::Endpoint ||
               last_class == PointClass::Endpoint;
    }
};

struct ArcExtraction {
    std::vector<Arc> arcs;
    std::vector<std::string> diagnostics;
};

// Deterministic arc extraction. Intended for one-pixel-wide skeletons;
// thicker inputs or pure cycles are reported in diagnostics and handled
// best-effort (cycle pixels belong to no arc).
inline ArcExtraction extract_arcs(std::span<const PixelCoord> points,
                                  const Classification& cls) {
    ArcExtraction result;

    std::unordered_set<std::int64_t> in_set;
    for (const PixelCoord p : points) in_set.insert(coord_key(p));
    auto neighbours = [&](PixelCoord p) {
        std::vector<PixelCoord> nb;
        for (const auto& o : detail::kClassNeighbours) {
            const PixelCoord q{p.x + o[0], p.y + o[1]};
            if (in_set.count(coord_key(q))) nb.push_back(q);
        }
        return nb;  // row-major order by construction
    };

    std::vector<PixelCoord> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), row_major_less);

    // Width diagnostic: a 2x2 all-skeleton block means the input is not
    // one pixel wide.
    for (const PixelCoord p : sorted) {
        if (in_set.count(coord_key({p.x + 1, p.y})) &&
            in_set.count(coord_key({p.x, p.y + 1})) &&
            in_set.count(coord_key({p.x + 1, p.y + 1}))) {
            result.diagnostics.push_back(
                "skeleton is not one pixel wide at (" + std::to_string(p.x) +
                "," + std::to_string(p.y) + ")");
            break;
        }
    }

    std::vector<PixelCoord> terminals;
    for (const PixelCoord p : sorted)
        if (cls.at(p) != PointClass::Simple) terminals.push_back(p);

    std::unordered_set<std::int64_t> visited;    // simple pixels consumed
    std::unordered_set<std::int64_t> in_any_arc;
    auto push_arc = [&](std::vector<PixelCoord> chain) {
        Arc arc;
        arc.first_class = cls.at(chain.front());
        arc.last_class = cls.at(chain.back());
        // Canonical orientation: smaller end first.
        if (row_major_less(chain.back(), chain.front())) {
            std::reverse(chain.begin(), chain.end());
            std::swap(arc.first_class, arc.last_class);
        }
        for (const PixelCoord p : chain) in_any_arc.insert(coord_key(p));
        arc.pixels = std::move(chain);
        result.arcs.push_back(std::move(arc));
    };

    // Walks from terminals through simple chains.
    for (const PixelCoord t : terminals) {
        for (const PixelCoord s : neighbours(t)) {
            if (cls.at(s) != PointClass::Simple || visited.count(coord_key(s)))
                continue;
            std::vector<PixelCoord> chain{t, s};
            visited.insert(coord_key(s));
            PixelCoord prev = t, cur = s;
            for (;;) {
                // Ends prefer 4-adjacent terminals over diagonal ones so
                // chains do not cut corners.
                PixelCoord next_terminal{0, 0};
                bool have_terminal = false, terminal_4adj = false;
                PixelCoord next_simple{0, 0};
                bool have_simple = false;
                for (const PixelCoord n : neighbours(cur)) {
                    if (n == prev) continue;
                    if (cls.at(n) != PointClass::Simple) {
                        const bool four = detail::four_adjacent(cur, n);
                        if (!have_terminal || (four && !terminal_4adj)) {
                            next_terminal = n;
                            have_terminal = true;
                            terminal_4adj = four;
                        }
                    } else if (!visited.count(coord_key(n)) && !have_simple) {
                        next_simple = n;
                        have_simple = true;
                    }
                }
                if (have_terminal) {
                    chain.push_back(next_terminal);
                    break;
                }
                if (have_simple) {
                    visited.insert(coord_key(next_simple));
                    chain.push_back(next_simple);
                    prev = cur;
                    cur = next_simple;
                    continue;
                }
                result.diagnostics.push_back(
                    "arc from (" + std::to_string(t.x) + "," +
                    std::to_string(t.y) + ") ends at a simple pixel");
                break;
            }
            push_arc(std::move(chain));
        }
    }

    // Directly adjacent terminal pairs form two-pixel arcs. A diagonal pair
    // whose corner is itself a skeleton pixel is already connected through
    // that pixel, so the direct diagonal link is redundant and skipped.
    for (const PixelCoord t : terminals) {
        for (const PixelCoord n : neighbours(t)) {
            if (cls.at(n) == PointClass::Simple || !row_major_less(t, n))
                continue;
            if (t.x != n.x && t.y != n.y &&
                (in_set.count(coord_key({t.x, n.y})) ||
                 in_set.count(coord_key({n.x, t.y}))))
                continue;
            push_arc({t, n});
        }
    }

    // Isolated points and any endpoint that no walk reached become
    // degenerate single-pixel arcs (a_1 = a_k).
    for (const PixelCoord t : terminals) {
        if (in_any_arc.count(coord_key(t))) continue;
        if (neighbours(t).empty()) {
            push_arc({t});
        } else if (cls.at(t) == PointClass::Endpoint) {
            push_arc({t});
            result.diagnostics.push_back(
                "endpoint (" + std::to_string(t.x) + "," + std::to_string(t.y) +
                ") reached by no walk; emitted as a degenerate arc");
        }
    }

    std::size_t leftover = 0;
    for (const PixelCoord p : sorted)
        if (cls.at(p) == PointClass::Simple && !visited.count(coord_key(p)))
            ++leftover;
    if (leftover > 0)
        result.diagnostics.push_back(
            std::to_string(leftover) +
            " simple pixels belong to no arc (cycles without end- or "
            "branching points)");

    // Deterministic order: lexicographic on the row-major-sorted pixel list.
    std::vector<std::vector<PixelCoord>> keys(result.arcs.size());
    std::vector<std::size_t> order(result.arcs.size());
    for (std::size_t i = 0; i < result.arcs.size(); ++i) {
        keys[i] = result.arcs[i].pixels;
        std::sort(keys[i].begin(), keys[i].end(), row_major_less);
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(
            keys[a].begin(), keys[a].end(), keys[b].begin(), keys[b].end(),
            row_major_less);
    });
    std::vector<Arc> sorted_arcs;
    sorted_arcs.reserve(result.arcs.size());
    for (const std::size_t i : order) sorted_arcs.push_back(std::move(result.arcs[i]));
    result.arcs = std::move(sorted_arcs);
    return result;
}

}  // namespace skelss
