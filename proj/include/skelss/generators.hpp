#pragma once

#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "skelss/coverage.hpp"
#include "skelss/point_class.hpp"
#include "skelss/scale_space.hpp"
#include "skelss/skeleton.hpp"

namespace skelss {

namespace detail {

// Uniform draw from [0, n) by rejection sampling on top of mt19937_64.
// mt19937_64 is bit-exact across platforms and the shuffle below is spelled
// out, so random paths replay identically everywhere.
inline std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t v = rng();
        if (v >= threshold) return v % n;
    }
}

inline void fisher_yates(std::vector<PixelCoord>& v, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[bounded_rand(rng, i)]);
}

// Internal desync guard shared by the stateful generators.
inline void expect_same_positions(const Skeleton& current,
                                  const Skeleton& internal, const char* who) {
    if (current.points == internal.points) return;
    throw std::logic_error(std::string(who) +
                           ": evolution state diverged from the driver");
}

}  // namespace detail

// Uncommitted baseline: removes points in a seed-determined uniform shuffle
// of the initial skeleton, r per step.
class RandomPath final : public PathGenerator {
  public:
    RandomPath(std::uint64_t seed, std::int32_t r) : seed_(seed), r_(r) {
        if (r < 1) throw std::invalid_argument("RandomPath: r must be >= 1");
    }

    std::string_view name() const override { return "random"; }

    void begin(const Skeleton& initial) override {
        order_ = initial.positions();  // row-major; shuffle decides the path
        detail::fisher_yates(order_, seed_);
        cursor_ = 0;
    }

    std::vector<PixelCoord> next_step(const Skeleton& current) override {
        const std::size_t take =
            std::min<std::size_t>(static_cast<std::size_t>(r_), current.size());
        std::vector<PixelCoord> step(order_.begin() + cursor_,
                                     order_.begin() + cursor_ + take);
        cursor_ += take;
        std::sort(step.begin(), step.end(), row_major_less);
        return step;
    }

  private:
    std::uint64_t seed_;
    std::int32_t r_;
    std::vector<PixelCoord> order_;
    std::size_t cursor_ = 0;
};

// Committed compression path: each step removes the r points with the
// smallest single-point reconstruction impact at the current scale (ties
// broken by ascending row-major position). The coverage grid is updated
// incrementally and exactly.
class CompressionPath final : public PathGenerator {
  public:
    explicit CompressionPath(std::int32_t r) : r_(r) {
        if (r < 1) throw std::invalid_argument("CompressionPath: r must be >= 1");
    }

    std::string_view name() const override { return "compression"; }

    void begin(const Skeleton& initial) override {
        skeleton_ = initial;
        grid_ = coverage_grid(initial);
    }

    std::vector<PixelCoord> next_step(const Skeleton& current) override {
        detail::expect_same_positions(current, skeleton_, "compression");
        const std::size_t k = skeleton_.size();
        const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(r_), k);

        // Points are already in row-major order, so a stable sort on the
        // impact alone realizes the (impact, position) ordering.
        std::vector<std::pair<std::int64_t, std::size_t>> ranked(k);
        for (std::size_t i = 0; i < k; ++i)
            ranked[i] = {single_point_impact(grid_, skeleton_.points[i]), i};
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) {
                             return a.first < b.first;
                         });

        std::vector<PixelCoord> step;
        step.reserve(take);
        for (std::size_t i = 0; i < take; ++i)
            step.push_back(skeleton_.points[ranked[i].second].pos);
        std::sort(step.begin(), step.end(), row_major_less);

        for (const PixelCoord p : step) remove_disc(grid_, point_at(p));
        skeleton_ = detail::remove_positions(skeleton_, step);
        return step;
    }

  private:
    MedialPoint point_at(PixelCoord p) const {
        auto it = std::lower_bound(skeleton_.points.begin(),
                                   skeleton_.points.end(), p,
                                   [](const MedialPoint& mp, PixelCoord q) {
                                       return row_major_less(mp.pos, q);
                                   });
        return *it;
    }

    std::int32_t r_;
    Skeleton skeleton_;
    CoverageGrid grid_;
};

// Committed pruning path: removes whole branches. Each step considers the
// arcs containing at least one endpoint (or the whole skeleton if there are
// none), picks the one with the smallest reconstruction impact, and removes
// it minus the branching points. Homotopy-preserving on thin skeletons.
class BranchPruningPath final : public PathGenerator {
  public:
    std::string_view name() const override { return "prune"; }

    void begin(const Skeleton& initial) override {
        skeleton_ = initial;
        grid_ = coverage_grid(initial);
        scale_ = 0;
    }

    std::vector<PixelCoord> next_step(const Skeleton& current) override {
        detail::expect_same_positions(current, skeleton_, "prune");
        ++scale_;
        const std::vector<PixelCoord> positions = skeleton_.positions();
        const Classification cls = classify_points(positions);
        const ArcExtraction extraction = extract_arcs(positions, cls);

        // Candidate branches: arcs with at least one endpoint; if none
        // exist, the whole remaining skeleton is the single candidate.
        std::vector<std::vector<PixelCoord>> candidates;
        for (const Arc& arc : extraction.arcs)
            if (arc.contains_endpoint()) candidates.push_back(arc.pixels);
        if (candidates.empty()) candidates.push_back(positions);

        // Self-loop arcs repeat their terminal pixel; impacts are over the
        // pixel set, so dedupe first.
        for (auto& cand : candidates) {
            std::sort(cand.begin(), cand.end(), row_major_less);
            cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        }

        std::int64_t best_impact = -1;
        std::size_t best = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            std::vector<MedialPoint> pts;
            pts.reserve(candidates[i].size());
            for (const PixelCoord p : candidates[i]) pts.push_back(point_at(p));
            const std::int64_t impact = set_impact(grid_, pts);
            if (best_impact < 0 || impact < best_impact) {
                best_impact = impact;
                best = i;
            }
            // Ties keep the earlier candidate; extraction order is already
            // lexicographic on sorted pixels, so this is the arc with the
            // row-major-smallest pixel.
        }

        std::vector<PixelCoord> step;
        for (const PixelCoord p : candidates[best])
            if (!cls.is_branching(p)) step.push_back(p);
        std::sort(step.begin(), step.end(), row_major_less);
        step.erase(std::unique(step.begin(), step.end()), step.end());
        if (step.empty())
            throw ContractViolation(
                scale_,
                "prune: selected branch consists of branching points only");

        for (const PixelCoord p : step) remove_disc(grid_, point_at(p));
        skeleton_ = detail::remove_positions(skeleton_, step);
        return step;
    }

  private:
    MedialPoint point_at(PixelCoord p) const {
        auto it = std::lower_bound(skeleton_.points.begin(),
                                   skeleton_.points.end(), p,
                                   [](const MedialPoint& mp, PixelCoord q) {
                                       return row_major_less(mp.pos, q);
                                   });
        return *it;
    }

    Skeleton skeleton_;
    CoverageGrid grid_;
    std::int32_t scale_ = 0;
};

}  // namespace skelss
