#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "skelss/metrics.hpp"
#include "skelss/netpbm.hpp"
#include "skelss/scale_space.hpp"
#include "skelss/skeleton.hpp"

namespace skelss {

enum class BackendKind { Exact, Thinned };
enum class PathKind { Random, Compression, Prune };

inline std::string_view to_string(BackendKind b) {
    return b == BackendKind::Exact ? "exact" : "thinned";
}
inline std::string_view to_string(PathKind p) {
    switch (p) {
        case PathKind::Random: return "random";
        case PathKind::Compression: return "compression";
        default: return "prune";
    }
}

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One evolution run, fully described. The config echo written next to the
// outputs omits the output directory itself, so two runs of the same config
// into different directories produce byte-identical trees.
struct RunConfig {
    std::string input;
    BackendKind backend = BackendKind::Thinned;
    PathKind path = PathKind::Compression;
    std::int32_t r = 1;
    std::uint64_t seed = 0;
    std::string out;
    std::int32_t stride = 1;
    std::vector<std::int64_t> checkpoints;
};

inline std::string config_text(const RunConfig& c) {
    std::string out;
    out += "input=" + c.input + "\n";
    out += "backend=" + std::string(to_string(c.backend)) + "\n";
    out += "path=" + std::string(to_string(c.path)) + "\n";
    out += "r=" + std::to_string(c.r) + "\n";
    out += "seed=" + std::to_string(c.seed) + "\n";
    out += "stride=" + std::to_string(c.stride) + "\n";
    out += "checkpoints=";
    for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(c.checkpoints[i]);
    }
    out += "\n";
    return out;
}

inline RunConfig parse_config(std::string_view text) {
    RunConfig c;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw IoError("config: expected key=value, got '" + std::string(line) + "'");
        const std::string_view key = line.substr(0, eq);
        const std::string value(line.substr(eq + 1));
        if (key == "input") {
            c.input = value;
        } else if (key == "backend") {
            if (value == "exact") c.backend = BackendKind::Exact;
            else if (value == "thinned") c.backend = BackendKind::Thinned;
            else throw IoError("config: unknown backend '" + value + "'");
        } else if (key == "path") {
            if (value == "random") c.path = PathKind::Random;
            else if (value == "compression") c.path = PathKind::Compression;
            else if (value == "prune") c.path = PathKind::Prune;
            else throw IoError("config: unknown path '" + value + "'");
        } else if (key == "r") {
            c.r = static_cast<std::int32_t>(std::stol(value));
        } else if (key == "seed") {
            c.seed = std::stoull(value);
        } else if (key == "stride") {
            c.stride = static_cast<std::int32_t>(std::stol(value));
        } else if (key == "out") {
            c.out = value;
        } else if (key == "checkpoints") {
            if (!value.empty()) {
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ','))
                    c.checkpoints.push_back(std::stoll(item));
            }
        } else {
            throw IoError("config: unknown key '" + std::string(key) + "'");
        }
    }
    if (c.r < 1) throw IoError("config: r must be >= 1");
    if (c.stride < 1) throw IoError("config: stride must be >= 1");
    return c;
}

// path.txt: one line per step, "l: x y; x y; ...", row-major within a step.
inline std::string path_text(const SparsificationPath& path) {
    std::string out;
    for (std::size_t s = 0; s < path.steps.size(); ++s) {
        out += std::to_string(s + 1) + ":";
        for (std::size_t i = 0; i < path.steps[s].size(); ++i) {
            out += (i == 0) ? " " : "; ";
            out += std::to_string(path.steps[s][i].x) + " " +
                   std::to_string(path.steps[s][i].y);
        }
        out += "\n";
    }
    return out;
}

inline SparsificationPath parse_path_text(std::string_view text) {
    SparsificationPath path;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string line(text.substr(pos, end - pos));
        pos = end + 1;
        if (line.empty()) continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw IoError("path.txt: missing ':' in '" + line + "'");
        const std::size_t scale = std::stoul(line.substr(0, colon));
        if (scale != path.steps.size() + 1)
            throw IoError("path.txt: steps out of order at scale " +
                          std::to_string(scale));
        std::vector<PixelCoord> step;
        std::stringstream ss(line.substr(colon + 1));
        std::string group;
        while (std::getline(ss, group, ';')) {
            std::stringstream gs(group);
            std::int32_t x, y;
            if (gs >> x >> y) step.push_back({x, y});
        }
        path.steps.push_back(std::move(step));
    }
    return path;
}

namespace detail {

inline void write_file(const std::filesystem::path& p, std::string_view bytes) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + p.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed: " + p.string());
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot open: " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return std::move(ss).str();
}

}  // namespace detail

// Writes the full evolution log: config echo, canonical input copy, one
// SKEL2 + PBM pair per stored frame, path.txt and metrics.csv. Frames are
// stored at every `stride`-th scale plus always scale 0 and the final
// scale. Writing order is fixed so reruns diff cleanly.
inline void write_run(const std::filesystem::path& dir, const RunConfig& config,
                      const BinaryImage& input, const EvolveResult& run) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    detail::write_file(dir / "config.txt", config_text(config));
    detail::write_file(dir / "input.pbm", save_pbm(input, PbmFormat::Raw));

    const std::int32_t m = static_cast<std::int32_t>(run.path.scale_count());
    std::vector<MetricRecord> records;
    records.reserve(run.frames.size());
    for (const ScaleSpaceFrame& frame : run.frames) {
        records.push_back(frame.metrics);
        if (frame.scale % config.stride != 0 && frame.scale != m) continue;
        const std::string stem = "frame_" + std::to_string(frame.scale);
        detail::write_file(dir / (stem + ".skel"), save_skeleton(frame.sigma));
        detail::write_file(dir / (stem + ".pbm"),
                           save_pbm(frame.image, PbmFormat::Raw));
    }
    detail::write_file(dir / "path.txt", path_text(run.path));
    detail::write_file(dir / "metrics.csv", metrics_csv(records));
}

struct LoadedRun {
    RunConfig config;
    BinaryImage input;
    std::vector<ScaleSpaceFrame> frames;  // stored frames, ascending scale
    SparsificationPath path;
    std::vector<MetricRecord> csv;  // all scales
};

inline LoadedRun load_run(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    LoadedRun run;
    run.config = parse_config(detail::read_file(dir / "config.txt"));
    run.input = load_pbm(detail::read_file(dir / "input.pbm"));
    run.path = parse_path_text(detail::read_file(dir / "path.txt"));
    run.csv = parse_metrics_csv(detail::read_file(dir / "metrics.csv"));

    const std::int32_t m = static_cast<std::int32_t>(run.path.scale_count());
    for (std::int32_t scale = 0; scale <= m; ++scale) {
        const fs::path skel_path = dir / ("frame_" + std::to_string(scale) + ".skel");
        const fs::path pbm_path = dir / ("frame_" + std::to_string(scale) + ".pbm");
        if (!fs::exists(skel_path)) continue;
        ScaleSpaceFrame frame;
        frame.scale = scale;
        frame.sigma = load_skeleton(detail::read_file(skel_path));
        frame.image = load_pbm(detail::read_file(pbm_path));
        const auto rec =
            std::find_if(run.csv.begin(), run.csv.end(),
                         [&](const MetricRecord& r) { return r.scale == scale; });
        if (rec == run.csv.end())
            throw IoError("metrics.csv has no record for stored frame " +
                          std::to_string(scale));
        frame.metrics = *rec;
        run.frames.push_back(std::move(frame));
    }
    if (run.frames.empty() || run.frames.front().scale != 0)
        throw IoError("run directory is missing frame_0");
    if (run.frames.back().scale != m)
        throw IoError("run directory is missing the final frame");
    return run;
}

}  // namespace skelss
