#pragma once

#include <algorithm>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "skelss/binary_image.hpp"
#include "skelss/metrics.hpp"
#include "skelss/skeleton.hpp"

namespace skelss {

// Ordered partition (P_1,...,P_m) of an initial skeleton's positions. Each
// step is sorted row-major.
struct SparsificationPath {
    std::vector<std::vector<PixelCoord>> steps;

    std::size_t scale_count() const { return steps.size(); }

    friend bool operator==(const SparsificationPath&,
                           const SparsificationPath&) = default;
};

struct PathValidation {
    bool valid = true;
    std::vector<std::string> violations;
};

// Checks the partition contract: every step non-empty, steps pairwise
// disjoint, union equal to the skeleton's positions. Reports violations
// instead of throwing. An empty path over an empty skeleton is the
// degenerate m = 0 case and counts as valid.
inline PathValidation validate_path(const SparsificationPath& path,
                                    const Skeleton& origin) {
    PathValidation v;
    auto complain = [&](std::string msg) {
        v.valid = false;
        v.violations.push_back(std::move(msg));
    };

    std::unordered_map<std::int64_t, std::size_t> first_seen;
    std::vector<PixelCoord> all;
    for (std::size_t s = 0; s < path.steps.size(); ++s) {
        if (path.steps[s].empty())
            complain("step " + std::to_string(s + 1) + " is empty");
        for (const PixelCoord p : path.steps[s]) {
            auto [it, inserted] = first_seen.emplace(coord_key(p), s);
            if (!inserted)
                complain("disjointness violation at steps (" +
                         std::to_string(it->second + 1) + "," +
                         std::to_string(s + 1) + "): point (" +
                         std::to_string(p.x) + "," + std::to_string(p.y) + ")");
            else
                all.push_back(p);
        }
    }

    for (const MedialPoint& mp : origin.points)
        if (!first_seen.count(coord_key(mp.pos)))
            complain("coverage violation: skeleton point (" +
                     std::to_string(mp.pos.x) + "," + std::to_string(mp.pos.y) +
                     ") missing from the path");
    std::unordered_set<std::int64_t> skel_keys;
    for (const MedialPoint& mp : origin.points) skel_keys.insert(coord_key(mp.pos));
    for (const PixelCoord p : all)
        if (!skel_keys.count(coord_key(p)))
            complain("path point (" + std::to_string(p.x) + "," +
                     std::to_string(p.y) + ") is not a skeleton point");
    return v;
}

// One scale of the evolution: the pair (Sigma_l, u_l) plus its metrics.
struct ScaleSpaceFrame {
    std::int32_t scale = 0;
    Skeleton sigma;
    BinaryImage image;
    MetricRecord metrics;
};

// A generator violated its contract (empty step or non-subset), or a run
// hit an unrecoverable degenerate step. Carries the offending scale.
struct ContractViolation : std::runtime_error {
    std::int32_t scale;
    ContractViolation(std::int32_t s, const std::string& what)
        : std::runtime_error("scale " + std::to_string(s) + ": " + what),
          scale(s) {}
};

// Strategy hook: produces the next removal set from the current skeleton.
// Implementations are deterministic given their configuration, hold per-run
// state, and are driven sequentially by evolve().
class PathGenerator {
  public:
    virtual ~PathGenerator() = default;
    virtual std::string_view name() const = 0;
    virtual void begin(const Skeleton& initial) = 0;
    // Returns a non-empty subset of the current skeleton's positions.
    virtual std::vector<PixelCoord> next_step(const Skeleton& current) = 0;
};

struct EvolveResult {
    std::vector<ScaleSpaceFrame> frames;  // scales 0..m
    SparsificationPath path;              // m steps
};

namespace detail {

inline Skeleton remove_positions(const Skeleton& skel,
                                 std::span<const PixelCoord> sorted_positions) {
    Skeleton out(skel.width, skel.height);
    out.points.reserve(skel.points.size() - sorted_positions.size());
    for (const MedialPoint& mp : skel.points)
        if (!std::binary_search(sorted_positions.begin(), sorted_positions.end(),
                                mp.pos, row_major_less))
            out.points.push_back(mp);
    return out;
}

}  // namespace detail

// Runs the full evolution: Sigma_0 = skeleton, Sigma_l = Sigma_{l-1} \ P_l,
// u_l = reconstruct(Sigma_l), until the skeleton is exhausted. The final
// frame always has an empty skeleton and an all-background image. An empty
// input skeleton yields the single frame l = 0 and an empty path.
inline EvolveResult evolve(const Skeleton& skeleton, PathGenerator& generator) {
    EvolveResult result;
    const BinaryImage u0 = reconstruct(skeleton);
    const std::int64_t baseline = u0.object_count();
    result.frames.push_back(
        {0, skeleton, u0, compute_metrics(0, skeleton, u0, baseline)});

    generator.begin(skeleton);
    Skeleton current = skeleton;
    std::int32_t scale = 0;
    while (!current.empty()) {
        std::vector<PixelCoord> step = generator.next_step(current);
        ++scale;
        if (step.empty())
            throw ContractViolation(scale, std::string(generator.name()) +
                                               " returned an empty step");
        std::sort(step.begin(), step.end(), row_major_less);
        if (std::adjacent_find(step.begin(), step.end()) != step.end())
            throw ContractViolation(scale, std::string(generator.name()) +
                                               " returned duplicate points");
        const std::vector<PixelCoord> cur_pos = current.positions();
        for (const PixelCoord p : step)
            if (!std::binary_search(cur_pos.begin(), cur_pos.end(), p,
                                    row_major_less))
                throw ContractViolation(
                    scale, std::string(generator.name()) + " returned (" +
                               std::to_string(p.x) + "," + std::to_string(p.y) +
                               "), not a current skeleton point");
        current = detail::remove_positions(current, step);
        const BinaryImage u = reconstruct(current);
        result.frames.push_back(
            {scale, current, u, compute_metrics(scale, current, u, baseline)});
        result.path.steps.push_back(std::move(step));
    }
    return result;
}

// Replays the evolution from an intermediate frame. The suffix is
// bit-identical to the frames of the original run (causality). The
// baseline area is recovered from the frame's relative-error denominator.
inline std::vector<ScaleSpaceFrame> resume(const ScaleSpaceFrame& from,
                                           const SparsificationPath& path) {
    const std::size_t m = path.steps.size();
    const std::size_t k = static_cast<std::size_t>(from.scale);
    if (from.scale < 0 || k > m)
        throw std::invalid_argument("resume: frame scale outside the path");

    // The frame must equal Sigma_0 \ P_1..P_k, i.e. the union of the
    // remaining steps.
    std::vector<PixelCoord> expected;
    for (std::size_t s = k; s < m; ++s)
        expected.insert(expected.end(), path.steps[s].begin(),
                        path.steps[s].end());
    std::sort(expected.begin(), expected.end(), row_major_less);
    if (expected != from.sigma.positions())
        throw std::invalid_argument(
            "resume: frame skeleton does not match the path at scale " +
            std::to_string(from.scale));

    const std::int64_t baseline = from.metrics.rel_error_den;
    std::vector<ScaleSpaceFrame> frames{from};
    Skeleton current = from.sigma;
    for (std::size_t s = k; s < m; ++s) {
        std::vector<PixelCoord> step = path.steps[s];
        std::sort(step.begin(), step.end(), row_major_less);
        current = detail::remove_positions(current, step);
        const BinaryImage u = reconstruct(current);
        const std::int32_t scale = static_cast<std::int32_t>(s) + 1;
        frames.push_back(
            {scale, current, u, compute_metrics(scale, current, u, baseline)});
    }
    return frames;
}

}  // namespace skelss
