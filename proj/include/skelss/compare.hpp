#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "skelss/metrics.hpp"

namespace skelss {

// SKEL/ERR table across runs of the same input. For a checkpoint c the row
// reports the first scale whose skeleton has at most c points (clamped to
// the available scales). ERR is the number of missing object pixels,
// |O_0| - |O_l|, which equals |O_0 \ O_l| for these subset-only evolutions.
struct CompareRow {
    std::string label;
    std::int64_t checkpoint = 0;
    std::int32_t scale = 0;
    std::int64_t skel = 0;
    std::int64_t err = 0;
};

struct CompareRun {
    std::string label;
    std::vector<MetricRecord> records;  // all scales, ascending
};

inline std::vector<CompareRow> compare_paths(
    std::span<const CompareRun> runs, std::span<const std::int64_t> checkpoints) {
    if (runs.empty()) throw std::invalid_argument("compare_paths: no runs");
    const std::int64_t baseline = runs.front().records.front().area;
    for (const CompareRun& run : runs) {
        if (run.records.empty())
            throw std::invalid_argument("compare_paths: run without records");
        if (run.records.front().area != baseline)
            throw std::invalid_argument(
                "compare_paths: runs do not share the same input (baseline "
                "areas differ)");
    }

    std::vector<CompareRow> rows;
    for (const CompareRun& run : runs) {
        for (const std::int64_t c : checkpoints) {
            const MetricRecord* hit = nullptr;
            for (const MetricRecord& r : run.records)
                if (r.skel_count <= c) { hit = &r; break; }
            if (hit == nullptr) hit = &run.records.back();
            rows.push_back({run.label, c, hit->scale, hit->skel_count,
                            hit->rel_error_num});
        }
    }
    return rows;
}

inline std::string compare_csv(std::span<const CompareRow> rows) {
    std::string out = "label,checkpoint,scale,skel,err\n";
    for (const CompareRow& r : rows)
        out += r.label + "," + std::to_string(r.checkpoint) + "," +
               std::to_string(r.scale) + "," + std::to_string(r.skel) + "," +
               std::to_string(r.err) + "\n";
    return out;
}

}  // namespace skelss
