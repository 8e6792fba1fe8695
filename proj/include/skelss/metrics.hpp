#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skelss/binary_image.hpp"
#include "skelss/connectivity.hpp"
#include "skelss/point_class.hpp"
#include "skelss/skeleton.hpp"

namespace skelss {

// Per-frame scalar measures. Ratios are stored as exact integer pairs; a
// zero denominator marks the ratio as undefined (n/a). Floating point only
// ever appears in rendered reports.
struct MetricRecord {
    std::int32_t scale = 0;
    std::int64_t skel_count = 0;
    std::int64_t area = 0;
    std::int64_t diameter2 = 0;
    std::int64_t rel_error_num = 0;   // |O_0| - |O_l|
    std::int64_t rel_error_den = 0;   // |O_0|
    std::int64_t minimality_num = 0;  // |Sigma_l|
    std::int64_t minimality_den = 0;  // |O_l|
    std::int64_t complexity = 0;      // |E| + |B|
    std::int64_t components = 0;      // 8-connected components of Sigma_l

    friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

namespace detail {

inline std::int64_t cross(PixelCoord o, PixelCoord a, PixelCoord b) {
    return static_cast<std::int64_t>(a.x - o.x) * (b.y - o.y) -
           static_cast<std::int64_t>(a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain; input must be sorted lexicographically (x, then y).
inline std::vector<PixelCoord> convex_hull(std::vector<PixelCoord> pts) {
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<PixelCoord> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace detail

// Squared diameter: max pairwise squared distance over object pixels.
// Reduced to the convex hull; equals the all-pairs scan exactly.
inline std::int64_t diameter2_of(const BinaryImage& img) {
    std::vector<PixelCoord> pts = img.object_pixels();
    if (pts.size() <= 1) return 0;
    std::sort(pts.begin(), pts.end(), [](PixelCoord a, PixelCoord b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    const std::vector<PixelCoord> hull = detail::convex_hull(std::move(pts));
    std::int64_t best = 0;
    for (std::size_t i = 0; i < hull.size(); ++i)
        for (std::size_t j = i + 1; j < hull.size(); ++j)
            best = std::max(best, squared_distance(hull[i], hull[j]));
    return best;
}

inline MetricRecord compute_metrics(std::int32_t scale, const Skeleton& sigma,
                                    const BinaryImage& image,
                                    std::int64_t baseline_area) {
    MetricRecord r;
    r.scale = scale;
    r.skel_count = static_cast<std::int64_t>(sigma.size());
    r.area = image.object_count();
    r.diameter2 = diameter2_of(image);
    if (baseline_area > 0) {
        r.rel_error_num = baseline_area - r.area;
        r.rel_error_den = baseline_area;
    }
    r.minimality_num = r.skel_count;
    r.minimality_den = r.area;
    const std::vector<PixelCoord> positions = sigma.positions();
    r.complexity = classify_points(positions).complexity();
    r.components =
        static_cast<std::int64_t>(component_count(positions, Connectivity::Eight));
    return r;
}

// --- metrics.csv -------------------------------------------------------------

inline const char* metrics_csv_header() {
    return "scale,skel_count,area,diameter2,rel_error_num,rel_error_den,"
           "minimality_num,minimality_den,complexity,components";
}

inline std::string metrics_csv(std::span<const MetricRecord> records) {
    std::string out = metrics_csv_header();
    out += '\n';
    for (const MetricRecord& r : records) {
        out += std::to_string(r.scale) + "," + std::to_string(r.skel_count) +
               "," + std::to_string(r.area) + "," + std::to_string(r.diameter2) +
               "," + std::to_string(r.rel_error_num) + "," +
               std::to_string(r.rel_error_den) + "," +
               std::to_string(r.minimality_num) + "," +
               std::to_string(r.minimality_den) + "," +
               std::to_string(r.complexity) + "," +
               std::to_string(r.components) + "\n";
    }
    return out;
}

inline std::vector<MetricRecord> parse_metrics_csv(std::string_view text) {
    std::vector<MetricRecord> out;
    std::size_t pos = 0;
    auto next_line = [&]() -> std::string_view {
        if (pos >= text.size()) return {};
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        return line;
    };
    const std::string_view header = next_line();
    if (header != metrics_csv_header())
        throw std::runtime_error("metrics.csv: unexpected header");
    for (;;) {
        const std::string_view line = next_line();
        if (line.empty()) break;
        std::array<std::int64_t, 10> f{};
        std::size_t field = 0, start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (field >= f.size())
                    throw std::runtime_error("metrics.csv: too many fields");
                std::int64_t v = 0;
                bool neg = false;
                std::size_t j = start;
                if (j < i && line[j] == '-') { neg = true; ++j; }
                if (j == i) throw std::runtime_error("metrics.csv: empty field");
                for (; j < i; ++j) {
                    if (line[j] < '0' || line[j] > '9')
                        throw std::runtime_error("metrics.csv: bad integer");
                    v = v * 10 + (line[j] - '0');
                }
                f[field++] = neg ? -v : v;
                start = i + 1;
            }
        }
        if (field != f.size())
            throw std::runtime_error("metrics.csv: missing fields");
        MetricRecord r;
        r.scale = static_cast<std::int32_t>(f[0]);
        r.skel_count = f[1];
        r.area = f[2];
        r.diameter2 = f[3];
        r.rel_error_num = f[4];
        r.rel_error_den = f[5];
        r.minimality_num = f[6];
        r.minimality_den = f[7];
        r.complexity = f[8];
        r.components = f[9];
        out.push_back(r);
    }
    return out;
}

}  // namespace skelss
