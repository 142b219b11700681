#include "trim/image_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include <jpeglib.h>

namespace trim {

namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

FilePtr openFile(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw std::runtime_error("cannot open file: " + path);
  return f;
}

RasterImage fromInterleaved(const std::vector<unsigned char>& buf, int w, int h, int channels) {
  RasterImage img(w, h, channels);
  for (int c = 0; c < channels; ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        img.planes[c](y, x) = buf[(size_t(y) * w + x) * channels + c] / 255.0;
  return img;
}

std::vector<unsigned char> toInterleaved(const RasterImage& img) {
  const int c = img.channels();
  std::vector<unsigned char> buf(size_t(img.width) * img.height * c);
  for (int ch = 0; ch < c; ++ch)
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x) {
        const double v = std::clamp(img.planes[ch](y, x), 0.0, 1.0);
        buf[(size_t(y) * img.width + x) * c + ch] =
            static_cast<unsigned char>(std::lround(v * 255.0));
      }
  return buf;
}

RasterImage readPngFile(FILE* fp, const std::string& path) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("failed to decode PNG: " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  png_set_strip_16(png);
  png_set_packing(png);
  const png_byte color = png_get_color_type(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  const int channels = png_get_channels(png, info);
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("unsupported PNG channel count in " + path);
  }

  std::vector<unsigned char> buf(size_t(w) * h * channels);
  std::vector<png_bytep> rows(h);
  for (int y = 0; y < h; ++y) rows[y] = buf.data() + size_t(y) * w * channels;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return fromInterleaved(buf, w, h, channels);
}

RasterImage readJpegFile(FILE* fp, const std::string& path) {
  jpeg_decompress_struct cinfo;
  jpeg_error_mgr jerr;
  cinfo.err = jpeg_std_error(&jerr);
  jerr.error_exit = [](j_common_ptr ci) {
    char msg[JMSG_LENGTH_MAX];
    (*ci->err->format_message)(ci, msg);
    throw std::runtime_error(std::string("JPEG decode error: ") + msg);
  };
  jpeg_create_decompress(&cinfo);
  try {
    jpeg_stdio_src(&cinfo, fp);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);
    const int w = cinfo.output_width, h = cinfo.output_height;
    const int channels = cinfo.output_components;
    if (channels != 1 && channels != 3)
      throw std::runtime_error("unsupported JPEG channel count in " + path);
    std::vector<unsigned char> buf(size_t(w) * h * channels);
    while (cinfo.output_scanline < cinfo.output_height) {
      unsigned char* row = buf.data() + size_t(cinfo.output_scanline) * w * channels;
      jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return fromInterleaved(buf, w, h, channels);
  } catch (...) {
    jpeg_destroy_decompress(&cinfo);
    throw;
  }
}

}  // namespace

RasterImage readImage(const std::string& path) {
  FilePtr f = openFile(path, "rb");
  unsigned char magic[8] = {0};
  const size_t got = std::fread(magic, 1, sizeof(magic), f.get());
  std::rewind(f.get());
  if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) return readPngFile(f.get(), path);
  if (got >= 2 && magic[0] == 0xFF && magic[1] == 0xD8) return readJpegFile(f.get(), path);
  throw std::runtime_error("unrecognized image format (expect PNG or JPEG): " + path);
}

void writePng(const std::string& path, const RasterImage& img) {
  FilePtr f = openFile(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("failed to encode PNG: " + path);
  }
  png_init_io(png, f.get());
  const int ctype = img.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
  png_set_IHDR(png, info, img.width, img.height, 8, ctype, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  auto buf = toInterleaved(img);
  for (int y = 0; y < img.height; ++y)
    png_write_row(png, buf.data() + size_t(y) * img.width * img.channels());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void writeJpeg(const std::string& path, const RasterImage& img, int quality) {
  FilePtr f = openFile(path, "wb");
  jpeg_compress_struct cinfo;
  jpeg_error_mgr jerr;
  cinfo.err = jpeg_std_error(&jerr);
  jerr.error_exit = [](j_common_ptr ci) {
    char msg[JMSG_LENGTH_MAX];
    (*ci->err->format_message)(ci, msg);
    throw std::runtime_error(std::string("JPEG encode error: ") + msg);
  };
  jpeg_create_compress(&cinfo);
  try {
    jpeg_stdio_dest(&cinfo, f.get());
    cinfo.image_width = img.width;
    cinfo.image_height = img.height;
    cinfo.input_components = img.channels();
    cinfo.in_color_space = img.channels() == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    auto buf = toInterleaved(img);
    while (cinfo.next_scanline < cinfo.image_height) {
      unsigned char* row = buf.data() + size_t(cinfo.next_scanline) * img.width * img.channels();
      jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
  } catch (...) {
    jpeg_destroy_compress(&cinfo);
    throw;
  }
}

}  // namespace trim
