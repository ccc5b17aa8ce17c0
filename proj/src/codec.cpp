#include "specfor/codec.hpp"

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "specfor/error.hpp"

namespace specfor {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::FileNotFound, path.string() + ": no such file");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string() + ": cannot open");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, path.string() + ": cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, path.string() + ": write failed");
}

namespace {

constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

bool is_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && std::memcmp(bytes.data(), kPngMagic, 8) == 0;
}

bool is_jpeg(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

// ---------------------------------------------------------------- JPEG

struct JpegErrorManager {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
  bool warned = false;
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// Warnings (premature EOF, corrupt segments) mean libjpeg filled in made-up
// data. Forensic input must not be silently repaired, so they are fatal.
void jpeg_emit_message(j_common_ptr cinfo, int level) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  if (level < 0 && !err->warned) {
    err->warned = true;
    (*cinfo->err->format_message)(cinfo, err->message);
  }
}

void install_jpeg_errors(JpegErrorManager& err) {
  jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;
  err.pub.emit_message = jpeg_emit_message;
  err.message[0] = '\0';
}

// No C++ objects with destructors may be live across setjmp in these helpers;
// the output buffers are owned by the caller.
bool decode_jpeg_raw(std::span<const std::uint8_t> bytes, std::vector<std::uint8_t>& pixels,
                     std::size_t& width, std::size_t& height, JpegErrorManager& err) {
  jpeg_decompress_struct cinfo;
  install_jpeg_errors(err);
  cinfo.err = &err.pub;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  cinfo.dct_method = JDCT_ISLOW;
  jpeg_start_decompress(&cinfo);
  width = cinfo.output_width;
  height = cinfo.output_height;
  pixels.resize(width * height * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return !err.warned;
}

bool encode_jpeg_raw(const RgbImage& image, int quality, unsigned char*& buffer, unsigned long& size,
                     JpegErrorManager& err) {
  jpeg_compress_struct cinfo;
  install_jpeg_errors(err);
  cinfo.err = &err.pub;
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    return false;
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &buffer, &size);
  cinfo.image_width = static_cast<JDIMENSION>(image.width());
  cinfo.image_height = static_cast<JDIMENSION>(image.height());
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  cinfo.dct_method = JDCT_ISLOW;
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const auto px = image.pixels();
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(px.data() + static_cast<std::size_t>(cinfo.next_scanline) * image.width() * 3);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  return true;
}

// ---------------------------------------------------------------- PNG

struct PngReader {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
};

struct PngFailure {
  char message[256];
};

void png_read_callback(png_structp png, png_bytep out, png_size_t length) {
  auto* reader = static_cast<PngReader*>(png_get_io_ptr(png));
  if (reader->offset + length > reader->bytes.size()) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, reader->bytes.data() + reader->offset, length);
  reader->offset += length;
}

void png_error_callback(png_structp png, png_const_charp message) {
  auto* failure = static_cast<PngFailure*>(png_get_error_ptr(png));
  std::snprintf(failure->message, sizeof failure->message, "%s", message);
  png_longjmp(png, 1);
}

void png_warning_callback(png_structp, png_const_charp) {}

bool decode_png_raw(PngReader& reader, std::vector<std::uint8_t>& pixels, std::vector<png_bytep>& rows,
                    std::size_t& width, std::size_t& height, PngFailure& failure) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &failure, png_error_callback,
                                           png_warning_callback);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, &reader, png_read_callback);
  png_read_info(png, info);

  const png_byte color = png_get_color_type(png, info);
  const png_byte depth = png_get_bit_depth(png, info);
  // Stored values only: no gamma, no background compositing.
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  if (png_get_rowbytes(png, info) != width * 3) png_error(png, "unexpected row layout after transforms");
  pixels.resize(width * height * 3);
  rows.resize(height);
  for (std::size_t y = 0; y < height; ++y) rows[y] = pixels.data() + y * width * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

std::vector<std::uint8_t> encode_png_raw(std::span<const std::uint8_t> pixels, std::size_t width,
                                         std::size_t height, bool gray) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels.data(), 0, nullptr)) {
    const std::string reason = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::IoError, "PNG encode failed: " + reason);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels.data(), 0, nullptr)) {
    const std::string reason = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::IoError, "PNG encode failed: " + reason);
  }
  out.resize(size);
  return out;
}

}  // namespace

DecodedImage decode_image(std::span<const std::uint8_t> bytes, const std::string& origin) {
  std::vector<std::uint8_t> pixels;
  std::size_t width = 0;
  std::size_t height = 0;

  if (is_png(bytes)) {
    PngReader reader{bytes, 0};
    PngFailure failure{};
    std::vector<png_bytep> rows;
    if (!decode_png_raw(reader, pixels, rows, width, height, failure)) {
      throw Error(ErrorCode::CorruptData, origin + ": " + (failure.message[0] ? failure.message : "PNG decode failed"));
    }
    return {RgbImage(width, height, std::move(pixels)), ImageFormat::Png};
  }
  if (is_jpeg(bytes)) {
    JpegErrorManager err{};
    if (!decode_jpeg_raw(bytes, pixels, width, height, err)) {
      throw Error(ErrorCode::CorruptData, origin + ": " + (err.message[0] ? err.message : "JPEG decode failed"));
    }
    return {RgbImage(width, height, std::move(pixels)), ImageFormat::Jpeg};
  }
  throw Error(ErrorCode::UnsupportedFormat, origin + ": not a PNG or JPEG stream");
}

DecodedImage load_image_with_format(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return decode_image(bytes, path.string());
}

RgbImage load_image(const std::filesystem::path& path) { return load_image_with_format(path).image; }

std::vector<std::uint8_t> encode_jpeg(const RgbImage& image, int quality) {
  if (quality < 1 || quality > 100) {
    throw Error(ErrorCode::InvalidArgument, "JPEG quality must be in [1, 100], got " + std::to_string(quality));
  }
  if (image.empty()) throw Error(ErrorCode::InvalidArgument, "cannot encode an empty image");
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  JpegErrorManager err{};
  const bool ok = encode_jpeg_raw(image, quality, buffer, size, err);
  std::vector<std::uint8_t> out;
  if (ok && buffer) out.assign(buffer, buffer + size);
  std::free(buffer);
  if (!ok) throw Error(ErrorCode::IoError, std::string("JPEG encode failed: ") + err.message);
  return out;
}

std::vector<std::uint8_t> encode_png(const RgbImage& image) {
  if (image.empty()) throw Error(ErrorCode::InvalidArgument, "cannot encode an empty image");
  return encode_png_raw(image.pixels(), image.width(), image.height(), false);
}

std::vector<std::uint8_t> encode_png_gray(const Plane& plane) {
  if (plane.empty()) throw Error(ErrorCode::InvalidArgument, "cannot encode an empty plane");
  std::vector<std::uint8_t> px(plane.size());
  const auto src = plane.values();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double v = std::clamp(src[i], 0.0, 255.0);
    px[i] = static_cast<std::uint8_t>(v + 0.5);
  }
  return encode_png_raw(px, plane.width(), plane.height(), true);
}

}  // namespace specfor
