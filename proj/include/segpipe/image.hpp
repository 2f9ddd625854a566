#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace segpipe {

using Level = std::uint8_t;

inline constexpr int kMaxSupportedLevel = 255;

// Rectangular 8-bit gray image, row-major (PGM raster order).
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(std::size_t width, std::size_t height, int max_level = kMaxSupportedLevel, Level fill = 0);
    GrayImage(std::size_t width, std::size_t height, int max_level, std::vector<Level> pixels);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }
    int max_level() const noexcept { return max_level_; }
    int levels() const noexcept { return max_level_ + 1; }

    Level at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }
    void set(std::size_t row, std::size_t col, Level v);

    std::span<const Level> pixels() const noexcept { return pixels_; }
    std::span<Level> mutable_pixels() noexcept { return pixels_; }

    bool operator==(const GrayImage&) const = default;

private:
    void validate() const;

    std::size_t width_ = 0;
    std::size_t height_ = 0;
    int max_level_ = kMaxSupportedLevel;
    std::vector<Level> pixels_;
};

enum class NetpbmErrorKind {
    bad_magic,
    bad_header,
    maxval_too_large,
    truncated_data,
    dimension_overflow,
    bad_sample,
};

std::string_view to_string(NetpbmErrorKind kind) noexcept;

class NetpbmError : public std::runtime_error {
public:
    NetpbmError(NetpbmErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    NetpbmErrorKind kind() const noexcept { return kind_; }

private:
    NetpbmErrorKind kind_;
};

/// Parse a PGM (P2/P5) or PPM (P3/P6) image with maxval <= 255.
/// PPM input is reduced to gray with round(0.299 R + 0.587 G + 0.114 B).
GrayImage load_netpbm(std::span<const std::byte> bytes);
GrayImage load_netpbm(std::string_view bytes);

/// Serialize as P5 (binary) or P2 (ASCII) with maxval = max_level.
std::string save_pgm(const GrayImage& img, bool binary = true);

GrayImage read_netpbm_file(const std::string& path);
void write_pgm_file(const std::string& path, const GrayImage& img, bool binary = true);

/// Integer Rec.601 luminance with round-half-up.
Level luminance(int r, int g, int b) noexcept;

}  // namespace segpipe
