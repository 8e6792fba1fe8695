#include <catch2/catch_amalgamated.hpp>

#include "skelss/compare.hpp"
#include "skelss/distance_map.hpp"
#include "skelss/generators.hpp"
#include "skelss/metrics.hpp"
#include "skelss/skeleton.hpp"
#include "skelss/verify.hpp"

#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace skelss;
using helpers::image_from_art;
using helpers::random_blob;
using helpers::random_image;

namespace {

Skeleton bar_skeleton() {
    const BinaryImage img = image_from_art(".......|.#####.|.......");
    return exact_skeleton(img, distance_map(img));
}

VerificationReport verify_evolve_result(const EvolveResult& res,
                                        const RunConfig& config,
                                        const BinaryImage* input) {
    std::vector<MetricRecord> csv;
    for (const auto& f : res.frames) csv.push_back(f.metrics);
    VerifyInput in;
    in.frames = &res.frames;
    in.path = &res.path;
    in.csv = &csv;
    in.config = config;
    in.input_image = input;
    return verify_run(in);
}

const PropertyResult& property(const VerificationReport& report,
                               const std::string& name) {
    for (const auto& r : report.results)
        if (r.name == name) return r;
    FAIL("property not found: " + name);
    static PropertyResult dummy;
    return dummy;
}

}  // namespace

TEST_CASE("compute_metrics on the 1x5 bar") {
    const BinaryImage img = image_from_art(".......|.#####.|.......");
    const Skeleton skel = bar_skeleton();

    SECTION("frame 0") {
        const MetricRecord r = compute_metrics(0, skel, img, img.object_count());
        REQUIRE(r.area == 5);
        REQUIRE(r.diameter2 == 16);
        REQUIRE(r.rel_error_num == 0);
        REQUIRE(r.rel_error_den == 5);
        REQUIRE(r.minimality_num == 5);
        REQUIRE(r.minimality_den == 5);
        REQUIRE(r.complexity == 2);
        REQUIRE(r.components == 1);
    }
    SECTION("final frame is the steady state") {
        Skeleton empty(7, 3);
        const BinaryImage blank(7, 3);
        const MetricRecord r = compute_metrics(5, empty, blank, 5);
        REQUIRE(r.area == 0);
        REQUIRE(r.diameter2 == 0);
        REQUIRE(r.rel_error_num == 5);  // relative error 1
        REQUIRE(r.rel_error_den == 5);
        REQUIRE(r.components == 0);
    }
    SECTION("after two compression removals the error is 2/5") {
        CompressionPath gen(1);
        const EvolveResult res = evolve(skel, gen);
        REQUIRE(res.frames[2].metrics.rel_error_num == 2);
        REQUIRE(res.frames[2].metrics.rel_error_den == 5);
    }
}

TEST_CASE("hull-based diameter equals the all-pairs oracle") {
    std::mt19937_64 seeds(13);
    for (int i = 0; i < 30; ++i) {
        const BinaryImage img =
            (i % 2 == 0)
                ? random_image(seeds(), 1 + static_cast<std::int32_t>(seeds() % 64),
                               1 + static_cast<std::int32_t>(seeds() % 64), 0.3)
                : random_blob(seeds(), 48, 48);
        REQUIRE(diameter2_of(img) == oracles::brute_force_diameter2(img));
    }
    REQUIRE(diameter2_of(BinaryImage(5, 5)) == 0);  // dia(empty) = 0
    BinaryImage single(4, 4);
    single.set(2, 2, true);
    REQUIRE(diameter2_of(single) == 0);
}

TEST_CASE("metrics csv round-trips") {
    std::mt19937_64 seeds(19);
    const BinaryImage img = random_blob(seeds(), 24, 24);
    const Skeleton skel = thinned_skeleton(img, distance_map(img));
    CompressionPath gen(2);
    const EvolveResult res = evolve(skel, gen);
    std::vector<MetricRecord> records;
    for (const auto& f : res.frames) records.push_back(f.metrics);
    REQUIRE(parse_metrics_csv(metrics_csv(records)) == records);
}

TEST_CASE("ERR telescopes over the per-step impacts") {
    std::mt19937_64 seeds(43);
    const BinaryImage img = random_blob(seeds(), 28, 28);
    const Skeleton skel = thinned_skeleton(img, distance_map(img));
    RandomPath gen(3, 2);
    const EvolveResult res = evolve(skel, gen);
    Skeleton cur = skel;
    std::int64_t accumulated = 0;
    for (std::size_t s = 0; s < res.path.steps.size(); ++s) {
        const CoverageGrid grid = coverage_grid(cur);
        accumulated += static_cast<std::int64_t>(
            reconstruction_impact(grid, cur, res.path.steps[s]).size());
        REQUIRE(res.frames[s + 1].metrics.rel_error_num == accumulated);
        cur = detail::remove_positions(cur, res.path.steps[s]);
    }
}

TEST_CASE("verify_run passes on fresh runs of each path kind") {
    std::mt19937_64 seeds(47);
    const BinaryImage img = random_blob(seeds(), 32, 32);
    const DistanceMap dm = distance_map(img);

    SECTION("compression, thinned backend") {
        const Skeleton skel = thinned_skeleton(img, dm);
        CompressionPath gen(1);
        const EvolveResult res = evolve(skel, gen);
        RunConfig config;
        config.backend = BackendKind::Thinned;
        config.path = PathKind::Compression;
        config.r = 1;
        const VerificationReport report = verify_evolve_result(res, config, &img);
        INFO(report.text());
        REQUIRE(report.all_pass());
        REQUIRE(property(report, "greedy_optimality").status ==
                PropertyStatus::Pass);
        REQUIRE(property(report, "minimality_lyapunov").status ==
                PropertyStatus::Pass);
    }
    SECTION("pruning, thinned backend") {
        const Skeleton skel = thinned_skeleton(img, dm);
        BranchPruningPath gen;
        const EvolveResult res = evolve(skel, gen);
        RunConfig config;
        config.backend = BackendKind::Thinned;
        config.path = PathKind::Prune;
        const VerificationReport report = verify_evolve_result(res, config, &img);
        INFO(report.text());
        REQUIRE(report.all_pass());
        REQUIRE(property(report, "complexity_lyapunov").status ==
                PropertyStatus::Pass);
        REQUIRE(property(report, "homotopy").status == PropertyStatus::Pass);
    }
    SECTION("random, exact backend checks invariance") {
        const Skeleton skel = exact_skeleton(img, dm);
        RandomPath gen(11, 4);
        const EvolveResult res = evolve(skel, gen);
        RunConfig config;
        config.backend = BackendKind::Exact;
        config.path = PathKind::Random;
        config.r = 4;
        config.seed = 11;
        const VerificationReport report = verify_evolve_result(res, config, &img);
        INFO(report.text());
        REQUIRE(report.all_pass());
        REQUIRE(property(report, "invariance_rotate90").status ==
                PropertyStatus::Pass);
        REQUIRE(property(report, "invariance_translate").status ==
                PropertyStatus::Pass);
        REQUIRE(property(report, "greedy_optimality").status ==
                PropertyStatus::NotApplicable);
    }
}

TEST_CASE("verify_run pinpoints an injected area increase") {
    const Skeleton skel = bar_skeleton();
    CompressionPath gen(1);
    EvolveResult res = evolve(skel, gen);
    // Corrupt frame 2: add object pixels no disc explains, pushing its area
    // above frame 1's.
    res.frames[2].image.set(0, 0, true);
    res.frames[2].image.set(6, 0, true);
    res.frames[2].metrics =
        compute_metrics(2, res.frames[2].sigma, res.frames[2].image,
                        res.frames[0].metrics.area);
    RunConfig config;
    config.path = PathKind::Compression;
    config.r = 1;
    std::vector<MetricRecord> csv;
    for (const auto& f : res.frames) csv.push_back(f.metrics);
    VerifyInput in;
    in.frames = &res.frames;
    in.path = &res.path;
    in.csv = &csv;
    in.config = config;
    const VerificationReport report = verify_run(in);
    REQUIRE_FALSE(report.all_pass());
    REQUIRE(property(report, "area_lyapunov").status == PropertyStatus::Fail);
    REQUIRE(property(report, "area_lyapunov").detail.find("scale 2") !=
            std::string::npos);
    REQUIRE(property(report, "frame_reconstruction").status ==
            PropertyStatus::Fail);
}

TEST_CASE("compare_paths lines up runs at skeleton-count checkpoints") {
    std::mt19937_64 seeds(53);
    const BinaryImage img = random_blob(seeds(), 32, 32);
    const Skeleton skel = thinned_skeleton(img, distance_map(img));

    CompressionPath comp(1);
    const EvolveResult comp_res = evolve(skel, comp);
    RandomPath rand(9, 1);
    const EvolveResult rand_res = evolve(skel, rand);

    auto records = [](const EvolveResult& res) {
        std::vector<MetricRecord> out;
        for (const auto& f : res.frames) out.push_back(f.metrics);
        return out;
    };
    const std::vector<CompareRun> runs = {
        {"compression", records(comp_res)},
        {"random", records(rand_res)},
    };
    const std::vector<std::int64_t> checkpoints = {
        static_cast<std::int64_t>(skel.size()) / 2, 5};
    const auto rows = compare_paths(runs, checkpoints);
    REQUIRE(rows.size() == 4);
    for (const CompareRow& row : rows) {
        REQUIRE(row.skel <= row.checkpoint);
        REQUIRE(row.err >= 0);
    }
    // A run compared with itself yields identical rows.
    const std::vector<CompareRun> twice = {{"a", records(comp_res)},
                                           {"b", records(comp_res)}};
    const auto rows2 = compare_paths(twice, checkpoints);
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        REQUIRE(rows2[i].scale == rows2[i + checkpoints.size()].scale);
        REQUIRE(rows2[i].skel == rows2[i + checkpoints.size()].skel);
        REQUIRE(rows2[i].err == rows2[i + checkpoints.size()].err);
    }
    // Mismatched inputs are rejected.
    BinaryImage other = img;
    other.set(0, 0, true);
    const Skeleton oskel = thinned_skeleton(other, distance_map(other));
    CompressionPath comp2(1);
    const std::vector<CompareRun> bad = {{"a", records(comp_res)},
                                         {"b", records(evolve(oskel, comp2))}};
    REQUIRE_THROWS_AS(compare_paths(bad, checkpoints), std::invalid_argument);
}

TEST_CASE("verification report renders both output forms") {
    const Skeleton skel = bar_skeleton();
    CompressionPath gen(1);
    const EvolveResult res = evolve(skel, gen);
    RunConfig config;
    config.path = PathKind::Compression;
    config.r = 1;
    const VerificationReport report = verify_evolve_result(res, config, nullptr);
    const std::string kv = report.key_values();
    REQUIRE(kv.find("area_lyapunov=pass") != std::string::npos);
    REQUIRE(kv.find("initial_state=na") != std::string::npos);
    REQUIRE(report.text().find("steady_state") != std::string::npos);
}
