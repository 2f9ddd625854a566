#include "segpipe/image.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace segpipe {

namespace {

// Largest raster (in samples) the loader accepts.
constexpr std::uint64_t kMaxSamples = std::uint64_t{1} << 31;

class HeaderReader {
public:
    explicit HeaderReader(std::string_view data) : data_(data) {}

    std::size_t pos() const noexcept { return pos_; }
    bool at_end() const noexcept { return pos_ >= data_.size(); }
    unsigned char peek() const { return static_cast<unsigned char>(data_[pos_]); }

    void skip_space_and_comments() {
        while (!at_end()) {
            unsigned char ch = peek();
            if (ch == '#') {
                while (!at_end() && peek() != '\n' && peek() != '\r') ++pos_;
            } else if (std::isspace(ch)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    // Reads an unsigned decimal; returns false at end of input.
    bool next_number(std::uint64_t& out, NetpbmErrorKind on_junk, const char* what) {
        skip_space_and_comments();
        if (at_end()) return false;
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(peek())) ++pos_;
        if (start == pos_) {
            throw NetpbmError(on_junk, std::string("netpbm: expected a number for ") + what);
        }
        auto [ptr, ec] = std::from_chars(data_.data() + start, data_.data() + pos_, out);
        if (ec == std::errc::result_out_of_range) {
            throw NetpbmError(NetpbmErrorKind::dimension_overflow,
                              std::string("netpbm: value too large for ") + what);
        }
        if (!at_end() && !std::isspace(peek()) && peek() != '#') {
            throw NetpbmError(on_junk, std::string("netpbm: malformed ") + what);
        }
        return true;
    }

    void skip_single_whitespace() {
        if (at_end() || !std::isspace(peek())) {
            throw NetpbmError(NetpbmErrorKind::bad_header, "netpbm: missing whitespace after maxval");
        }
        ++pos_;
    }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

std::uint64_t require_number(HeaderReader& in, const char* what) {
    std::uint64_t v = 0;
    if (!in.next_number(v, NetpbmErrorKind::bad_header, what)) {
        throw NetpbmError(NetpbmErrorKind::bad_header, std::string("netpbm: missing ") + what);
    }
    return v;
}

}  // namespace

GrayImage::GrayImage(std::size_t width, std::size_t height, int max_level, Level fill)
    : width_(width), height_(height), max_level_(max_level), pixels_(width * height, fill) {
    validate();
}

GrayImage::GrayImage(std::size_t width, std::size_t height, int max_level, std::vector<Level> pixels)
    : width_(width), height_(height), max_level_(max_level), pixels_(std::move(pixels)) {
    validate();
}

void GrayImage::validate() const {
    if (width_ == 0 || height_ == 0) throw std::invalid_argument("GrayImage: dimensions must be positive");
    if (max_level_ < 1 || max_level_ > kMaxSupportedLevel) {
        throw std::invalid_argument("GrayImage: max_level must be in [1, 255]");
    }
    if (pixels_.size() != width_ * height_) {
        throw std::invalid_argument("GrayImage: pixel count does not match width x height");
    }
    for (Level v : pixels_) {
        if (v > max_level_) throw std::invalid_argument("GrayImage: pixel exceeds max_level");
    }
}

void GrayImage::set(std::size_t row, std::size_t col, Level v) {
    if (v > max_level_) throw std::invalid_argument("GrayImage: pixel exceeds max_level");
    pixels_[row * width_ + col] = v;
}

std::string_view to_string(NetpbmErrorKind kind) noexcept {
    switch (kind) {
        case NetpbmErrorKind::bad_magic: return "bad_magic";
        case NetpbmErrorKind::bad_header: return "bad_header";
        case NetpbmErrorKind::maxval_too_large: return "maxval_too_large";
        case NetpbmErrorKind::truncated_data: return "truncated_data";
        case NetpbmErrorKind::dimension_overflow: return "dimension_overflow";
        case NetpbmErrorKind::bad_sample: return "bad_sample";
    }
    return "unknown";
}

Level luminance(int r, int g, int b) noexcept {
    return static_cast<Level>((299 * r + 587 * g + 114 * b + 500) / 1000);
}

GrayImage load_netpbm(std::string_view data) {
    if (data.size() < 2 || data[0] != 'P' || data[1] < '2' || data[1] > '6' || data[1] == '4') {
        throw NetpbmError(NetpbmErrorKind::bad_magic, "netpbm: unsupported magic number (want P2, P3, P5 or P6)");
    }
    const char kind = data[1];
    const bool binary = kind == '5' || kind == '6';
    const bool color = kind == '3' || kind == '6';
    if (data.size() > 2 && !std::isspace(static_cast<unsigned char>(data[2])) && data[2] != '#') {
        throw NetpbmError(NetpbmErrorKind::bad_magic, "netpbm: junk after magic number");
    }

    HeaderReader in(data.substr(2));
    const std::uint64_t width = require_number(in, "width");
    const std::uint64_t height = require_number(in, "height");
    const std::uint64_t maxval = require_number(in, "maxval");
    if (width == 0 || height == 0) throw NetpbmError(NetpbmErrorKind::bad_header, "netpbm: zero dimension");
    if (maxval == 0) throw NetpbmError(NetpbmErrorKind::bad_header, "netpbm: maxval must be positive");
    if (maxval > kMaxSupportedLevel) {
        throw NetpbmError(NetpbmErrorKind::maxval_too_large,
                          "netpbm: maxval " + std::to_string(maxval) + " exceeds 255");
    }
    const std::uint64_t channels = color ? 3 : 1;
    if (width > kMaxSamples || height > kMaxSamples || width * height > kMaxSamples / channels) {
        throw NetpbmError(NetpbmErrorKind::dimension_overflow, "netpbm: image dimensions too large");
    }
    const std::size_t npix = static_cast<std::size_t>(width * height);
    const std::size_t nsamples = npix * channels;

    std::vector<Level> samples(nsamples);
    if (binary) {
        in.skip_single_whitespace();
        const std::size_t offset = 2 + in.pos();
        if (data.size() - offset < nsamples) {
            throw NetpbmError(NetpbmErrorKind::truncated_data, "netpbm: raster shorter than header declares");
        }
        for (std::size_t i = 0; i < nsamples; ++i) {
            samples[i] = static_cast<Level>(static_cast<unsigned char>(data[offset + i]));
        }
    } else {
        for (std::size_t i = 0; i < nsamples; ++i) {
            std::uint64_t v = 0;
            if (!in.next_number(v, NetpbmErrorKind::bad_sample, "sample")) {
                throw NetpbmError(NetpbmErrorKind::truncated_data, "netpbm: raster shorter than header declares");
            }
            if (v > maxval) throw NetpbmError(NetpbmErrorKind::bad_sample, "netpbm: sample exceeds maxval");
            samples[i] = static_cast<Level>(v);
        }
    }
    for (Level v : samples) {
        if (v > maxval) throw NetpbmError(NetpbmErrorKind::bad_sample, "netpbm: sample exceeds maxval");
    }

    if (!color) return GrayImage(width, height, static_cast<int>(maxval), std::move(samples));

    std::vector<Level> gray(npix);
    for (std::size_t i = 0; i < npix; ++i) {
        gray[i] = luminance(samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]);
    }
    return GrayImage(width, height, static_cast<int>(maxval), std::move(gray));
}

GrayImage load_netpbm(std::span<const std::byte> bytes) {
    return load_netpbm(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string save_pgm(const GrayImage& img, bool binary) {
    std::ostringstream out;
    out << (binary ? "P5" : "P2") << '\n'
        << img.width() << ' ' << img.height() << '\n'
        << img.max_level() << '\n';
    auto px = img.pixels();
    if (binary) {
        out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
    } else {
        for (std::size_t r = 0; r < img.height(); ++r) {
            for (std::size_t c = 0; c < img.width(); ++c) {
                if (c) out << ' ';
                out << static_cast<int>(px[r * img.width() + c]);
            }
            out << '\n';
        }
    }
    return out.str();
}

GrayImage read_netpbm_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open " + path);
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return load_netpbm(std::string_view(data));
}

void write_pgm_file(const std::string& path, const GrayImage& img, bool binary) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::ios_base::failure("cannot write " + path);
    const std::string data = save_pgm(img, binary);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw std::ios_base::failure("short write to " + path);
}

}  // namespace segpipe
