#include "c2g/image_io.hpp"

#include <jpeglib.h>
#include <png.h>

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

namespace c2g {

namespace {

enum class Format { Png, Jpeg, Unknown };

Format sniff(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  unsigned char sig[8] = {};
  in.read(reinterpret_cast<char*>(sig), sizeof sig);
  if (in.gcount() >= 8 && png_sig_cmp(sig, 0, 8) == 0) return Format::Png;
  if (in.gcount() >= 3 && sig[0] == 0xFF && sig[1] == 0xD8 && sig[2] == 0xFF) return Format::Jpeg;
  return Format::Unknown;
}

RgbImage read_png(const std::string& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_file(&image, path.c_str()) == 0) {
    throw IoError("cannot decode PNG '" + path + "': " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  const png_color white{255, 255, 255};
  if (png_image_finish_read(&image, &white, buffer.data(), 0, nullptr) == 0) {
    const std::string message = image.message;
    png_image_free(&image);
    throw IoError("cannot decode PNG '" + path + "': " + message);
  }
  RgbImage out(static_cast<int>(image.width), static_cast<int>(image.height));
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    out.pixels[i] = {buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]};
  }
  return out;
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void on_jpeg_error(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

RgbImage read_jpeg(const std::string& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> file(std::fopen(path.c_str(), "rb"),
                                                      &std::fclose);
  if (!file) throw IoError("cannot open '" + path + "'");

  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = on_jpeg_error;
  // Locals modified after setjmp are not touched again on the error path.
  std::vector<unsigned char> pixels;
  int width = 0;
  int height = 0;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw IoError("cannot decode JPEG '" + path + "': " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  width = static_cast<int>(cinfo.output_width);
  height = static_cast<int>(cinfo.output_height);
  pixels.resize(static_cast<std::size_t>(width) * height * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);

  RgbImage out(width, height);
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    out.pixels[i] = {pixels[3 * i], pixels[3 * i + 1], pixels[3 * i + 2]};
  }
  return out;
}

}  // namespace

RgbImage read_image(const std::string& path) {
  switch (sniff(path)) {
    case Format::Png:
      return read_png(path);
    case Format::Jpeg:
      return read_jpeg(path);
    case Format::Unknown:
      break;
  }
  throw IoError("'" + path + "' is neither PNG nor JPEG");
}

void write_png(const std::string& path, const RgbImage& img) {
  img.validate();
  const bool gray = std::all_of(img.pixels.begin(), img.pixels.end(),
                                [](const Rgb8& p) { return p.r == p.g && p.g == p.b; });
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  std::vector<png_byte> buffer;
  buffer.reserve(img.pixels.size() * (gray ? 1 : 3));
  for (const Rgb8& p : img.pixels) {
    buffer.push_back(p.r);
    if (!gray) {
      buffer.push_back(p.g);
      buffer.push_back(p.b);
    }
  }
  if (png_image_write_to_file(&image, path.c_str(), 0, buffer.data(), 0, nullptr) == 0) {
    throw IoError("cannot write PNG '" + path + "': " + image.message);
  }
}

}  // namespace c2g
