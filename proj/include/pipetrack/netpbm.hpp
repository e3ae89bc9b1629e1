#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "pipetrack/image.hpp"

namespace pipetrack::netpbm {

// Binary netpbm only: P5 (gray, maxval 255) and P6 (RGB, maxval 255).
// Binary images are stored as P5 with samples 0 and 255; on read any
// non-zero sample becomes 1.

GrayImage read_pgm(std::istream &in, const std::string &source = "");
RgbImage read_ppm(std::istream &in, const std::string &source = "");
BinaryImage read_binary_pgm(std::istream &in, const std::string &source = "");

void write_pgm(std::ostream &out, const GrayImage &img);
void write_pgm(std::ostream &out, const BinaryImage &img);
void write_ppm(std::ostream &out, const RgbImage &img);

GrayImage read_pgm(const std::filesystem::path &path);
RgbImage read_ppm(const std::filesystem::path &path);
BinaryImage read_binary_pgm(const std::filesystem::path &path);

void write_pgm(const std::filesystem::path &path, const GrayImage &img);
void write_pgm(const std::filesystem::path &path, const BinaryImage &img);
void write_ppm(const std::filesystem::path &path, const RgbImage &img);

}  // namespace pipetrack::netpbm
