#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "specfor/image.hpp"

namespace specfor {

struct DecodedImage {
  RgbImage image;
  ImageFormat format;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Sniffs PNG/JPEG magic and decodes to 8-bit RGB. Stored sample values are
/// returned as-is: no gamma or ICC handling, alpha is dropped.
/// `origin` is only used in error messages.
DecodedImage decode_image(std::span<const std::uint8_t> bytes, const std::string& origin = "<memory>");

DecodedImage load_image_with_format(const std::filesystem::path& path);
RgbImage load_image(const std::filesystem::path& path);

/// Baseline JPEG, 4:2:0, islow DCT. quality in [1, 100].
std::vector<std::uint8_t> encode_jpeg(const RgbImage& image, int quality);
std::vector<std::uint8_t> encode_png(const RgbImage& image);

/// Rounds and clamps values to [0, 255] and writes an 8-bit grayscale PNG.
std::vector<std::uint8_t> encode_png_gray(const Plane& plane);

}  // namespace specfor
