#include <catch2/catch_amalgamated.hpp>

#include "skelss/distance_map.hpp"
#include "skelss/generators.hpp"
#include "skelss/scale_space.hpp"
#include "skelss/skeleton.hpp"

#include "test_helpers.hpp"

using namespace skelss;
using helpers::image_from_art;
using helpers::random_blob;

namespace {

// Deterministic one-point-per-step generator used to pin down the frame
// bookkeeping independently of the production generators.
class OnePointPerStep final : public PathGenerator {
  public:
    std::string_view name() const override { return "one-point"; }
    void begin(const Skeleton&) override {}
    std::vector<PixelCoord> next_step(const Skeleton& current) override {
        return {current.points.front().pos};
    }
};

// Misbehaving generators for the contract checks.
class EmptyStep final : public PathGenerator {
  public:
    std::string_view name() const override { return "empty-step"; }
    void begin(const Skeleton&) override {}
    std::vector<PixelCoord> next_step(const Skeleton&) override { return {}; }
};

class ForeignPoint final : public PathGenerator {
  public:
    std::string_view name() const override { return "foreign-point"; }
    void begin(const Skeleton&) override {}
    std::vector<PixelCoord> next_step(const Skeleton&) override {
        return {{0, 0}};
    }
};

Skeleton bar_skeleton() {
    const BinaryImage img = image_from_art(".......|.#####.|.......");
    return exact_skeleton(img, distance_map(img));
}

bool frames_equal(const ScaleSpaceFrame& a, const ScaleSpaceFrame& b) {
    return a.scale == b.scale && a.sigma == b.sigma && a.image == b.image &&
           a.metrics == b.metrics;
}

}  // namespace

TEST_CASE("evolve on a one-point skeleton yields the forced two frames") {
    const BinaryImage img = image_from_art("...|.#.|...");
    const Skeleton skel = exact_skeleton(img, distance_map(img));
    OnePointPerStep gen;
    const EvolveResult res = evolve(skel, gen);
    REQUIRE(res.frames.size() == 2);
    REQUIRE(res.frames[0].sigma == skel);
    REQUIRE(res.frames[0].image == img);
    REQUIRE(res.frames[1].sigma.empty());
    REQUIRE(res.frames[1].image.empty_object());
    REQUIRE(res.path.scale_count() == 1);
}

TEST_CASE("evolve walks the 1x5 bar through areas 5..0") {
    OnePointPerStep gen;
    const EvolveResult res = evolve(bar_skeleton(), gen);
    REQUIRE(res.path.scale_count() == 5);
    REQUIRE(res.frames.size() == 6);
    for (std::size_t l = 0; l < res.frames.size(); ++l) {
        REQUIRE(res.frames[l].scale == static_cast<std::int32_t>(l));
        REQUIRE(res.frames[l].metrics.area == 5 - static_cast<std::int64_t>(l));
    }
    // Bookkeeping: m+1 frames, the union of all steps is the skeleton.
    std::vector<PixelCoord> all;
    for (const auto& s : res.path.steps) all.insert(all.end(), s.begin(), s.end());
    std::sort(all.begin(), all.end(), row_major_less);
    REQUIRE(all == bar_skeleton().positions());
    REQUIRE(validate_path(res.path, bar_skeleton()).valid);
}

TEST_CASE("evolve of an empty skeleton emits one frame and no path") {
    Skeleton empty(4, 4);
    OnePointPerStep gen;
    const EvolveResult res = evolve(empty, gen);
    REQUIRE(res.frames.size() == 1);
    REQUIRE(res.path.scale_count() == 0);
    REQUIRE(res.frames[0].sigma.empty());
    REQUIRE(res.frames[0].metrics.rel_error_den == 0);  // n/a
}

TEST_CASE("every run ends in the empty steady state") {
    std::mt19937_64 seeds(71);
    for (int i = 0; i < 4; ++i) {
        const BinaryImage img = random_blob(seeds(), 24, 24);
        const DistanceMap dm = distance_map(img);
        const Skeleton skel = thinned_skeleton(img, dm);
        RandomPath gen(seeds(), 2);
        const EvolveResult res = evolve(skel, gen);
        REQUIRE(res.frames.back().sigma.empty());
        REQUIRE(res.frames.back().image.empty_object());
        REQUIRE(res.frames.size() == res.path.scale_count() + 1);
    }
}

TEST_CASE("generator contract violations are reported with their scale") {
    const Skeleton bar = bar_skeleton();
    SECTION("empty step") {
        EmptyStep gen;
        try {
            evolve(bar, gen);
            FAIL("expected ContractViolation");
        } catch (const ContractViolation& e) {
            REQUIRE(e.scale == 1);
        }
    }
    SECTION("point outside the current skeleton") {
        ForeignPoint gen;
        REQUIRE_THROWS_AS(evolve(bar, gen), ContractViolation);
    }
}

TEST_CASE("validate_path reports partition violations") {
    const Skeleton skel = [] {
        Skeleton s(5, 5);
        s.points = {{{1, 1}, 1}, {{2, 2}, 1}, {{3, 3}, 1}};
        s.normalize();
        return s;
    }();

    SECTION("three singletons form a valid path") {
        SparsificationPath p;
        p.steps = {{{1, 1}}, {{2, 2}}, {{3, 3}}};
        REQUIRE(validate_path(p, skel).valid);
    }
    SECTION("overlap is a disjointness violation naming both steps") {
        SparsificationPath p;
        p.steps = {{{1, 1}, {2, 2}}, {{2, 2}, {3, 3}}};
        const PathValidation v = validate_path(p, skel);
        REQUIRE_FALSE(v.valid);
        bool found = false;
        for (const auto& msg : v.violations)
            if (msg.find("(1,2)") != std::string::npos) found = true;
        REQUIRE(found);
    }
    SECTION("a missing point is a coverage violation naming the point") {
        SparsificationPath p;
        p.steps = {{{1, 1}}, {{2, 2}}};
        const PathValidation v = validate_path(p, skel);
        REQUIRE_FALSE(v.valid);
        bool found = false;
        for (const auto& msg : v.violations)
            if (msg.find("(3,3)") != std::string::npos) found = true;
        REQUIRE(found);
    }
    SECTION("an empty step is flagged") {
        SparsificationPath p;
        p.steps = {{{1, 1}}, {}, {{2, 2}, {3, 3}}};
        REQUIRE_FALSE(validate_path(p, skel).valid);
    }
}

TEST_CASE("resume replays suffixes bit-identically from every scale") {
    std::mt19937_64 seeds(73);
    const BinaryImage img = random_blob(seeds(), 24, 24);
    const Skeleton skel = thinned_skeleton(img, distance_map(img));
    CompressionPath gen(2);
    const EvolveResult res = evolve(skel, gen);
    const std::size_t m = res.path.scale_count();

    SECTION("from scale 0: the full run") {
        const auto replay = resume(res.frames[0], res.path);
        REQUIRE(replay.size() == res.frames.size());
        for (std::size_t i = 0; i < replay.size(); ++i)
            REQUIRE(frames_equal(replay[i], res.frames[i]));
    }
    SECTION("from the final scale: a single frame") {
        const auto replay = resume(res.frames[m], res.path);
        REQUIRE(replay.size() == 1);
        REQUIRE(frames_equal(replay[0], res.frames[m]));
    }
    SECTION("from every intermediate scale") {
        for (std::size_t k = 1; k < m; ++k) {
            const auto replay = resume(res.frames[k], res.path);
            REQUIRE(replay.size() == res.frames.size() - k);
            for (std::size_t i = 0; i < replay.size(); ++i)
                REQUIRE(frames_equal(replay[i], res.frames[k + i]));
        }
    }
    SECTION("frame/path mismatch is rejected") {
        ScaleSpaceFrame tampered = res.frames[1];
        tampered.sigma.points.pop_back();
        REQUIRE_THROWS_AS(resume(tampered, res.path), std::invalid_argument);
    }
}

TEST_CASE("area and diameter decrease monotonically for any generator") {
    std::mt19937_64 seeds(79);
    for (int i = 0; i < 3; ++i) {
        const BinaryImage img = random_blob(seeds(), 28, 28);
        const Skeleton skel = thinned_skeleton(img, distance_map(img));
        for (int variant = 0; variant < 3; ++variant) {
            std::unique_ptr<PathGenerator> gen;
            if (variant == 0) gen = std::make_unique<RandomPath>(seeds(), 1);
            if (variant == 1) gen = std::make_unique<CompressionPath>(3);
            if (variant == 2) gen = std::make_unique<BranchPruningPath>();
            const EvolveResult res = evolve(skel, *gen);
            for (std::size_t l = 1; l < res.frames.size(); ++l) {
                REQUIRE(res.frames[l].metrics.area <=
                        res.frames[l - 1].metrics.area);
                REQUIRE(res.frames[l].metrics.diameter2 <=
                        res.frames[l - 1].metrics.diameter2);
                REQUIRE(res.frames[l].metrics.rel_error_num >=
                        res.frames[l - 1].metrics.rel_error_num);
            }
        }
    }
}
