#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skelss/coverage.hpp"
#include "skelss/run_io.hpp"
#include "skelss/scale_space.hpp"
#include "skelss/transform.hpp"

namespace skelss {

enum class PropertyStatus { Pass, Fail, NotApplicable };

struct PropertyResult {
    std::string name;
    PropertyStatus status = PropertyStatus::Pass;
    std::string detail;  // first violation or n/a reason
};

// Executable form of the scale-space propositions: architectural checks,
// Lyapunov sequences, invariances and the per-path guarantees. A report is
// always complete; properties that do not apply to the run are marked n/a
// with the reason.
struct VerificationReport {
    std::vector<PropertyResult> results;

    bool all_pass() const {
        for (const auto& r : results)
            if (r.status == PropertyStatus::Fail) return false;
        return true;
    }

    std::string text() const {
        std::string out;
        for (const auto& r : results) {
            out += r.name;
            out.append(r.name.size() < 24 ? 24 - r.name.size() : 1, ' ');
            switch (r.status) {
                case PropertyStatus::Pass: out += "pass"; break;
                case PropertyStatus::Fail: out += "FAIL"; break;
                case PropertyStatus::NotApplicable: out += "n/a"; break;
            }
            if (!r.detail.empty()) out += "  (" + r.detail + ")";
            out += "\n";
        }
        return out;
    }

    std::string key_values() const {
        std::string out;
        for (const auto& r : results) {
            out += r.name;
            out += '=';
            switch (r.status) {
                case PropertyStatus::Pass: out += "pass"; break;
                case PropertyStatus::Fail: out += "fail"; break;
                case PropertyStatus::NotApplicable: out += "na"; break;
            }
            out += '\n';
            if (!r.detail.empty()) out += r.name + ".detail=" + r.detail + "\n";
        }
        return out;
    }
};

struct VerifyInput {
    const std::vector<ScaleSpaceFrame>* frames = nullptr;  // stored frames
    const SparsificationPath* path = nullptr;
    const std::vector<MetricRecord>* csv = nullptr;  // all scales
    RunConfig config;
    const BinaryImage* input_image = nullptr;  // optional
};

namespace detail {

inline bool touches_border(const BinaryImage& img) {
    for (std::int32_t x = 0; x < img.width; ++x)
        if (img.at(x, 0) || img.at(x, img.height - 1)) return true;
    for (std::int32_t y = 0; y < img.height; ++y)
        if (img.at(0, y) || img.at(img.width - 1, y)) return true;
    return false;
}

inline Skeleton map_skeleton(const Skeleton& skel, const Transform& t) {
    const auto [w, h] = transformed_size(t, skel.width, skel.height);
    Skeleton out(w, h);
    for (const MedialPoint& mp : skel.points)
        out.points.push_back(
            {map_point(t, skel.width, skel.height, mp.pos), mp.radius2});
    out.normalize();
    return out;
}

}  // namespace detail

inline VerificationReport verify_run(const VerifyInput& in) {
    VerificationReport report;
    auto add = [&](std::string name, PropertyStatus st, std::string detail = {}) {
        report.results.push_back({std::move(name), st, std::move(detail)});
    };
    const auto& frames = *in.frames;
    const auto& path = *in.path;
    const auto& csv = *in.csv;
    const std::int32_t m = static_cast<std::int32_t>(path.scale_count());
    const std::int64_t baseline = csv.empty() ? 0 : csv.front().area;

    // --- frame_reconstruction: u_l = R(Sigma_l) for every stored frame.
    {
        PropertyStatus st = PropertyStatus::Pass;
        std::string detail;
        for (const ScaleSpaceFrame& f : frames)
            if (reconstruct(f.sigma) != f.image) {
                st = PropertyStatus::Fail;
                detail = "scale " + std::to_string(f.scale);
                break;
            }
        add("frame_reconstruction", st, detail);
    }

    // --- path_partition: Def. 4 plus the telescoping identity.
    {
        PropertyStatus st = PropertyStatus::Pass;
        std::string detail;
        const PathValidation v = validate_path(path, frames.front().sigma);
        if (!v.valid) {
            st = PropertyStatus::Fail;
            detail = v.violations.front();
        } else {
            std::unordered_map<std::int64_t, MedialPoint> origin;
            for (const MedialPoint& mp : frames.front().sigma.points)
                origin.emplace(coord_key(mp.pos), mp);
            std::unordered_set<std::int64_t> removed;
            std::size_t next_step = 0;
            for (const ScaleSpaceFrame& f : frames) {
                while (next_step < static_cast<std::size_t>(f.scale)) {
                    for (const PixelCoord p : path.steps[next_step])
                        removed.insert(coord_key(p));
                    ++next_step;
                }
                bool ok = f.sigma.size() == origin.size() - removed.size();
                for (const MedialPoint& mp : f.sigma.points) {
                    if (!ok) break;
                    auto it = origin.find(coord_key(mp.pos));
                    ok = it != origin.end() && it->second == mp &&
                         !removed.count(coord_key(mp.pos));
                }
                if (!ok) {
                    st = PropertyStatus::Fail;
                    detail = "scale " + std::to_string(f.scale) +
                             ": skeleton is not Sigma_0 minus the removed steps";
                    break;
                }
            }
        }
        add("path_partition", st, detail);
    }

    // --- metrics_consistency: stored records match recomputation.
    {
        PropertyStatus st = PropertyStatus::Pass;
        std::string detail;
        if (csv.size() != static_cast<std::size_t>(m) + 1) {
            st = PropertyStatus::Fail;
            detail = "metrics.csv has " + std::to_string(csv.size()) +
                     " records for " + std::to_string(m + 1) + " scales";
        } else {
            for (const ScaleSpaceFrame& f : frames) {
                const MetricRecord rec =
                    compute_metrics(f.scale, f.sigma, f.image, baseline);
                if (!(rec == f.metrics)) {
                    st = PropertyStatus::Fail;
                    detail = "scale " + std::to_string(f.scale);
                    break;
                }
            }
        }
        add("metrics_consistency", st, detail);
    }

    // --- initial_state: Sigma_0 = S(f); exact backend also restores u_0 = f.
    if (in.input_image == nullptr) {
        add("initial_state", PropertyStatus::NotApplicable, "no input image");
    } else {
        PropertyStatus st = PropertyStatus::Pass;
        std::string detail;
        try {
            const DistanceMap dm = distance_map(*in.input_image);
            const Skeleton expect = in.config.backend == BackendKind::Exact
                                        ? exact_skeleton(*in.input_image, dm)
                                        : thinned_skeleton(*in.input_image, dm);
            if (!(frames.front().sigma == expect)) {
                st = PropertyStatus::Fail;
                detail = "frame 0 skeleton differs from recomputation";
            } else if (in.config.backend == BackendKind::Exact) {
                if (frames.front().image != *in.input_image) {
                    st = PropertyStatus::Fail;
                    detail = "exact backend: u_0 differs from the input";
                }
            } else {
                // Thinned backend: under-reconstruction only; report deficit.
                const BinaryImage& u0 = frames.front().image;
                for (std::size_t i = 0; i < u0.mask.size(); ++i)
                    if (u0.mask[i] && !in.input_image->mask[i]) {
                        st = PropertyStatus::Fail;
                        detail = "thinned backend over-reconstructs";
                        break;
                    }
                if (st == PropertyStatus::Pass)
                    detail = "deficit=" +
                             std::to_string(in.input_image->object_count() -
                                            u0.object_count());
            }
        } catch (const std::exception& e) {
            st = PropertyStatus::Fail;
            detail = e.what();
        }
        add("initial_state", st, detail);
    }

    // --- causality: replay from the middle scale.
    {
        PropertyStatus st = PropertyStatus::Pass;
        std::string detail;
        const std::int32_t want = (m + 1) / 2;  // ceil(m/2)
        const ScaleSpaceFrame* start = nullptr;
        for (const ScaleSpaceFrame& f : frames)
            if (f.scale >= want) { start = &f; break; }
        if (start == nullptr) {
            st = PropertyStatus::Fail;
            detail = "no stored frame at or after scale " + std::to_string(want);
        } else {
            try {
                const std::vector<ScaleSpaceFrame> replay = resume(*start, path);
                for (const ScaleSpaceFrame& f : frames) {
                    if (f.scale < start->scale) continue;
                    const ScaleSpaceFrame& r =
                        replay[static_cast<std::size_t>(f.scale - start->scale)];
                    if (!(r.sigma == f.sigma) || r.image != f.image ||
                        !(r.metrics == f.metrics)) {
                        st = PropertyStatus::Fail;
                        detail = "replayed scale " + std::to_string(f.scale) +
                                 " differs";
                        break;
                    }
                }
            } catch (const std::exception& e) {
                st = PropertyStatus::Fail;
                detail = e.what();
            }
        }
        add("causality", st, detail);
    }

    // --- steady_state.
    {
        const ScaleSpaceFrame& last = frames.back();
        const bool ok = last.scale == m && last.sigma.empty() &&
                        last.image.empty_object();
        add("steady_state", ok ? PropertyStatus::Pass : PropertyStatus::Fail,
            ok ? "" : "final frame is not empty");
    }

    // --- Lyapunov sequences over the full-resolution records.
    auto monotone = [&](const char* name, auto field, bool decreasing) {
        PropertyStatus st = PropertyStatus::Pass;
        std::string detail;
        for (std::size_t l = 1; l < csv.size(); ++l) {
            const auto prev = field(csv[l - 1]);
            const auto curr = field(csv[l]);
            const bool ok = decreasing ? curr <= prev : curr >= prev;
            if (!ok) {
                st = PropertyStatus::Fail;
                detail = "scale " + std::to_string(csv[l].scale) + ": " +
                         std::to_string(prev) + " -> " + std::to_string(curr);
                break;
            }
        }
        add(name, st, detail);
    };
    monotone("area_lyapunov", [](const MetricRecord& r) { return r.area; }, true);
    monotone("diameter_lyapunov",
             [](const MetricRecord& r) { return r.diameter2; }, true);
    if (baseline > 0)
        monotone("rel_error_monotone",
                 [](const MetricRecord& r) { return r.rel_error_num; }, false);
    else
        add("rel_error_monotone", PropertyStatus::NotApplicable,
            "baseline object is empty");

    // --- minimality Lyapunov (compression runs, object non-empty).
    if (in.config.path != PathKind::Compression) {
        add("minimality_lyapunov", PropertyStatus::NotApplicable,
            "compression runs only");
    } else {
        PropertyStatus st = PropertyStatus::Pass;
        std::string detail;
        for (std::size_t l = 1; l < csv.size(); ++l) {
            const MetricRecord& a = csv[l - 1];
            const MetricRecord& b = csv[l];
            if (b.minimality_den <= 0) continue;  // object exhausted
            // M_l >= M_{l+1} as exact cross-multiplied rationals.
            if (a.minimality_num * b.minimality_den <
                b.minimality_num * a.minimality_den) {
                st = PropertyStatus::Fail;
                detail = "scale " + std::to_string(b.scale);
                break;
            }
        }
        add("minimality_lyapunov", st, detail);
    }

    // --- complexity Lyapunov + homotopy (pruning runs).
    if (in.config.path != PathKind::Prune) {
        add("complexity_lyapunov", PropertyStatus::NotApplicable,
            "pruning runs only");
        add("homotopy", PropertyStatus::NotApplicable, "pruning runs only");
    } else {
        monotone("complexity_lyapunov",
                 [](const MetricRecord& r) { return r.complexity; }, true);
        monotone("homotopy", [](const MetricRecord& r) { return r.components; },
                 true);
    }

    // --- greedy optimality (compression, r = 1): every removed point
    // attains the exhaustive minimum impact. Checked at scales with at most
    // 200 skeleton points.
    if (in.config.path != PathKind::Compression || in.config.r != 1) {
        add("greedy_optimality", PropertyStatus::NotApplicable,
            "compression r=1 runs only");
    } else {
        PropertyStatus st = PropertyStatus::Pass;
        std::string detail;
        Skeleton cur = frames.front().sigma;
        for (std::size_t s = 0; s < path.steps.size(); ++s) {
            if (cur.size() <= 200) {
                const CoverageGrid grid = coverage_grid(cur);
                std::int64_t min_impact = -1;
                for (const MedialPoint& mp : cur.points) {
                    const std::int64_t imp = single_point_impact(grid, mp);
                    if (min_impact < 0 || imp < min_impact) min_impact = imp;
                }
                if (path.steps[s].size() != 1) {
                    st = PropertyStatus::Fail;
                    detail = "scale " + std::to_string(s + 1) +
                             ": r=1 step removes more than one point";
                    break;
                }
                auto it = std::find_if(cur.points.begin(), cur.points.end(),
                                       [&](const MedialPoint& mp) {
                                           return mp.pos == path.steps[s][0];
                                       });
                if (it == cur.points.end() ||
                    single_point_impact(grid, *it) != min_impact) {
                    st = PropertyStatus::Fail;
                    detail = "scale " + std::to_string(s + 1) +
                             ": removed point does not attain the minimum";
                    break;
                }
            }
            cur = detail::remove_positions(cur, path.steps[s]);
        }
        add("greedy_optimality", st, detail);
    }

    // --- invariance (exact backend): the skeleton transform commutes with
    // the on-grid transform group. Discs of border-touching objects clip at
    // the canvas, which breaks the grid isometry argument, so those inputs
    // are reported n/a.
    {
        const std::vector<std::pair<std::string, Transform>> cases = {
            {"invariance_rotate90", Transform::rotate90()},
            {"invariance_rotate180", Transform::rotate180()},
            {"invariance_rotate270", Transform::rotate270()},
            {"invariance_mirror_h", Transform::mirror_horizontal()},
            {"invariance_mirror_v", Transform::mirror_vertical()},
            {"invariance_translate", Transform::translate(2, 3)},
        };
        std::string na_reason;
        if (in.config.backend != BackendKind::Exact)
            na_reason = "exact backend only";
        else if (in.input_image == nullptr)
            na_reason = "no input image";
        else if (detail::touches_border(*in.input_image))
            na_reason = "object touches the canvas border";
        for (const auto& [name, t] : cases) {
            if (!na_reason.empty()) {
                add(name, PropertyStatus::NotApplicable, na_reason);
                continue;
            }
            PropertyStatus st = PropertyStatus::Pass;
            std::string detail_msg;
            try {
                const BinaryImage timg = apply_transform(*in.input_image, t);
                const Skeleton direct = exact_skeleton(timg, distance_map(timg));
                const Skeleton mapped =
                    detail::map_skeleton(frames.front().sigma, t);
                if (!(direct == mapped)) {
                    st = PropertyStatus::Fail;
                    detail_msg = "skeletons differ after transform";
                }
            } catch (const std::exception& e) {
                st = PropertyStatus::Fail;
                detail_msg = e.what();
            }
            add(name, st, detail_msg);
        }
    }

    return report;
}

}  // namespace skelss
