#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "skelss/binary_image.hpp"

namespace skelss {

// Parse failure with the byte offset where the problem was detected.
struct PbmParseError : std::runtime_error {
    std::size_t offset;
    PbmParseError(const std::string& what, std::size_t off)
        : std::runtime_error(what + " (byte offset " + std::to_string(off) + ")"),
          offset(off) {}
};

enum class PbmFormat { Plain, Raw };  // P1 / P4

namespace detail {

class PbmCursor {
  public:
    explicit PbmCursor(std::string_view data) : data_(data) {}

    std::size_t pos() const { return pos_; }
    bool eof() const { return pos_ >= data_.size(); }

    // Skips whitespace and '#' comments (comment runs to end of line).
    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' ||
                       c == '\f' || c == '\v') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::int64_t read_uint(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        std::int64_t value = 0;
        bool any = false;
        while (pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '9') {
            value = value * 10 + (data_[pos_] - '0');
            if (value > (std::int64_t{1} << 40))
                throw PbmParseError(std::string("PBM: absurd ") + what, start);
            ++pos_;
            any = true;
        }
        if (!any)
            throw PbmParseError(std::string("PBM: expected ") + what, start);
        return value;
    }

    char take() { return data_[pos_++]; }

    std::string_view rest() const { return data_.substr(pos_); }
    void advance(std::size_t n) { pos_ += n; }

  private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

}  // namespace detail

// Loads a PBM image, plain (P1) or raw (P4). PBM value 1 maps to object.
// Header tolerates arbitrary whitespace and '#' comments.
inline BinaryImage load_pbm(std::string_view bytes) {
    detail::PbmCursor cur(bytes);
    cur.skip_space_and_comments();
    if (bytes.size() - cur.pos() < 2)
        throw PbmParseError("PBM: missing magic number", cur.pos());
    const char m0 = cur.take();
    const char m1 = cur.take();
    if (m0 != 'P' || (m1 != '1' && m1 != '4'))
        throw PbmParseError("PBM: unsupported magic number", cur.pos() - 2);
    const bool raw = (m1 == '4');

    const std::int64_t w = cur.read_uint("width");
    const std::int64_t h = cur.read_uint("height");
    if (w <= 0 || h <= 0)
        throw PbmParseError("PBM: dimensions must be positive", cur.pos());
    if (w * h > (std::int64_t{1} << 28))
        throw PbmParseError("PBM: image too large", cur.pos());

    BinaryImage img(static_cast<std::int32_t>(w), static_cast<std::int32_t>(h));

    if (raw) {
        // Exactly one whitespace byte separates the header from the raster.
        if (cur.eof())
            throw PbmParseError("PBM: truncated before raster", cur.pos());
        const char sep = cur.take();
        if (sep != ' ' && sep != '\t' && sep != '\r' && sep != '\n')
            throw PbmParseError("PBM: expected whitespace before raster", cur.pos() - 1);
        const std::size_t row_bytes = static_cast<std::size_t>((w + 7) / 8);
        std::string_view raster = cur.rest();
        if (raster.size() < row_bytes * static_cast<std::size_t>(h))
            throw PbmParseError("PBM: truncated raster",
                                cur.pos() + raster.size());
        for (std::int32_t y = 0; y < h; ++y) {
            for (std::int32_t x = 0; x < w; ++x) {
                const std::uint8_t byte = static_cast<std::uint8_t>(
                    raster[y * row_bytes + static_cast<std::size_t>(x) / 8]);
                const bool bit = (byte >> (7 - (x % 8))) & 1;
                img.set(x, y, bit);
            }
        }
    } else {
        for (std::int32_t y = 0; y < h; ++y) {
            for (std::int32_t x = 0; x < w; ++x) {
                cur.skip_space_and_comments();
                if (cur.eof())
                    throw PbmParseError("PBM: truncated raster", cur.pos());
                const char c = cur.take();
                if (c != '0' && c != '1')
                    throw PbmParseError("PBM: raster digit must be 0 or 1",
                                        cur.pos() - 1);
                img.set(x, y, c == '1');
            }
        }
    }
    return img;
}

// Serializes an image; the exact inverse of load_pbm for both formats.
inline std::string save_pbm(const BinaryImage& img, PbmFormat format) {
    std::string out;
    if (format == PbmFormat::Plain) {
        out = "P1\n" + std::to_string(img.width) + " " +
              std::to_string(img.height) + "\n";
        for (std::int32_t y = 0; y < img.height; ++y) {
            int col = 0;
            for (std::int32_t x = 0; x < img.width; ++x) {
                out += img.at(x, y) ? '1' : '0';
                if (++col == 70 && x + 1 < img.width) {  // plain-format line limit
                    out += '\n';
                    col = 0;
                }
            }
            out += '\n';
        }
    } else {
        out = "P4\n" + std::to_string(img.width) + " " +
              std::to_string(img.height) + "\n";
        const std::size_t row_bytes = static_cast<std::size_t>((img.width + 7) / 8);
        for (std::int32_t y = 0; y < img.height; ++y) {
            std::string row(row_bytes, '\0');
            for (std::int32_t x = 0; x < img.width; ++x)
                if (img.at(x, y))
                    row[static_cast<std::size_t>(x) / 8] |=
                        static_cast<char>(1 << (7 - (x % 8)));
            out += row;
        }
    }
    return out;
}

// Raw (P5) grayscale writer, used for rendered overlays.
inline std::string save_pgm(std::int32_t width, std::int32_t height,
                            const std::vector<std::uint8_t>& gray) {
    std::string out = "P5\n" + std::to_string(width) + " " +
                      std::to_string(height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(gray.data()), gray.size());
    return out;
}

}  // namespace skelss
