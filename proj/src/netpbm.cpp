#include "pipetrack/netpbm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pipetrack/error.hpp"

namespace pipetrack::netpbm {

namespace {

struct Header {
    int width = 0;
    int height = 0;
};

// Reads the next whitespace-delimited header integer, skipping '#' comments.
int read_header_int(std::istream &in, const std::string &source) {
    int ch = in.peek();
    while (ch != EOF) {
        if (std::isspace(ch)) {
            in.get();
        } else if (ch == '#') {
            std::string ignored;
            std::getline(in, ignored);
        } else {
            break;
        }
        ch = in.peek();
    }
    int value = 0;
    if (!(in >> value) || value < 0) throw ParseError(source, 0, "malformed netpbm header");
    return value;
}

Header read_header(std::istream &in, const std::string &source, const char *magic) {
    char m[2] = {};
    if (!in.read(m, 2) || m[0] != magic[0] || m[1] != magic[1]) {
        throw ParseError(source, 0, std::string("expected netpbm magic ") + magic);
    }
    Header h;
    h.width = read_header_int(in, source);
    h.height = read_header_int(in, source);
    const int maxval = read_header_int(in, source);
    if (h.width < 1 || h.height < 1) throw ParseError(source, 0, "netpbm image has zero size");
    if (maxval != 255) throw ParseError(source, 0, "only maxval 255 is supported");
    // Exactly one whitespace byte separates the header from the raster.
    if (!std::isspace(in.get())) throw ParseError(source, 0, "malformed netpbm header");
    return h;
}

std::vector<std::uint8_t> read_samples(std::istream &in, std::size_t count, const std::string &source) {
    std::vector<std::uint8_t> samples(count);
    if (!in.read(reinterpret_cast<char *>(samples.data()), static_cast<std::streamsize>(count))) {
        throw ParseError(source, 0, "truncated netpbm raster");
    }
    return samples;
}

void write_raw(std::ostream &out, const char *magic, int w, int h, std::span<const std::uint8_t> data) {
    out << magic << '\n' << w << ' ' << h << "\n255\n";
    out.write(reinterpret_cast<const char *>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error("failed writing netpbm image");
}

std::ifstream open_in(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    return in;
}

std::ofstream open_out(const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(path.string() + ": cannot open for writing");
    return out;
}

}  // namespace

GrayImage read_pgm(std::istream &in, const std::string &source) {
    const Header h = read_header(in, source, "P5");
    return GrayImage(h.width, h.height,
                     read_samples(in, static_cast<std::size_t>(h.width) * h.height, source));
}

RgbImage read_ppm(std::istream &in, const std::string &source) {
    const Header h = read_header(in, source, "P6");
    return RgbImage(h.width, h.height,
                    read_samples(in, static_cast<std::size_t>(h.width) * h.height * 3, source));
}

BinaryImage read_binary_pgm(std::istream &in, const std::string &source) {
    const Header h = read_header(in, source, "P5");
    auto samples = read_samples(in, static_cast<std::size_t>(h.width) * h.height, source);
    for (auto &v : samples) v = v != 0 ? 1 : 0;
    return BinaryImage(h.width, h.height, std::move(samples));
}

void write_pgm(std::ostream &out, const GrayImage &img) {
    write_raw(out, "P5", img.width(), img.height(), img.samples());
}

void write_pgm(std::ostream &out, const BinaryImage &img) {
    std::vector<std::uint8_t> scaled(img.samples().begin(), img.samples().end());
    for (auto &v : scaled) v = v != 0 ? 255 : 0;
    write_raw(out, "P5", img.width(), img.height(), scaled);
}

void write_ppm(std::ostream &out, const RgbImage &img) {
    write_raw(out, "P6", img.width(), img.height(), img.samples());
}

GrayImage read_pgm(const std::filesystem::path &path) {
    auto in = open_in(path);
    return read_pgm(in, path.string());
}

RgbImage read_ppm(const std::filesystem::path &path) {
    auto in = open_in(path);
    return read_ppm(in, path.string());
}

BinaryImage read_binary_pgm(const std::filesystem::path &path) {
    auto in = open_in(path);
    return read_binary_pgm(in, path.string());
}

void write_pgm(const std::filesystem::path &path, const GrayImage &img) {
    auto out = open_out(path);
    write_pgm(out, img);
}

void write_pgm(const std::filesystem::path &path, const BinaryImage &img) {
    auto out = open_out(path);
    write_pgm(out, img);
}

void write_ppm(const std::filesystem::path &path, const RgbImage &img) {
    auto out = open_out(path);
    write_ppm(out, img);
}

}  // namespace pipetrack::netpbm
