#include "hfsr/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <vector>

namespace hfsr {

namespace {

struct FileCloser {
  void operator()(FILE *f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

RgbImage load_png(FILE *fp, const std::string &path) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("failed to decode PNG: " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  // Normalize everything to 8-bit RGB.
  png_set_strip_16(png);
  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  const size_t stride = png_get_rowbytes(png, info);
  std::vector<uint8_t> buf(stride * h);
  std::vector<png_bytep> rows(h);
  for (int r = 0; r < h; ++r) rows[r] = buf.data() + stride * r;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  RgbImage img(w, h);
  for (int r = 0; r < h; ++r) {
    const uint8_t *row = buf.data() + stride * r;
    for (int c = 0; c < w; ++c) {
      const size_t i = static_cast<size_t>(r) * w + c;
      img.r[i] = row[3 * c];
      img.g[i] = row[3 * c + 1];
      img.b[i] = row[3 * c + 2];
    }
  }
  return img;
}

void save_png(const RgbImage &img, const std::string &path) {
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw std::runtime_error("cannot open for writing: " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("failed to encode PNG: " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<uint8_t> row(static_cast<size_t>(img.width) * 3);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      const size_t i = static_cast<size_t>(r) * img.width + c;
      row[3 * c] = img.r[i];
      row[3 * c + 1] = img.g[i];
      row[3 * c + 2] = img.b[i];
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

uint32_t rd_u32(const uint8_t *p) {
  return static_cast<uint32_t>(p[0]) | (p[1] << 8) | (p[2] << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}
int32_t rd_i32(const uint8_t *p) { return static_cast<int32_t>(rd_u32(p)); }
uint16_t rd_u16(const uint8_t *p) { return static_cast<uint16_t>(p[0] | (p[1] << 8)); }

RgbImage load_bmp(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  std::vector<uint8_t> buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (buf.size() < 54 || buf[0] != 'B' || buf[1] != 'M')
    throw std::runtime_error("not a BMP file: " + path);
  const uint32_t data_off = rd_u32(&buf[10]);
  const int32_t w = rd_i32(&buf[18]);
  const int32_t h_raw = rd_i32(&buf[22]);
  const uint16_t bpp = rd_u16(&buf[28]);
  const uint32_t compression = rd_u32(&buf[30]);
  if (compression != 0 || (bpp != 24 && bpp != 32))
    throw std::runtime_error("unsupported BMP variant (need uncompressed 24/32-bit): " + path);
  const bool bottom_up = h_raw > 0;
  const int h = bottom_up ? h_raw : -h_raw;
  if (w < 1 || h < 1) throw std::runtime_error("bad BMP dimensions: " + path);
  const size_t bytespp = bpp / 8;
  const size_t stride = ((static_cast<size_t>(w) * bytespp + 3) / 4) * 4;
  if (buf.size() < data_off + stride * h) throw std::runtime_error("truncated BMP: " + path);

  RgbImage img(w, h);
  for (int r = 0; r < h; ++r) {
    const uint8_t *row = buf.data() + data_off + stride * (bottom_up ? h - 1 - r : r);
    for (int c = 0; c < w; ++c) {
      const size_t i = static_cast<size_t>(r) * w + c;
      img.b[i] = row[bytespp * c];
      img.g[i] = row[bytespp * c + 1];
      img.r[i] = row[bytespp * c + 2];
    }
  }
  return img;
}

void wr_u32(std::vector<uint8_t> &v, uint32_t x) {
  v.push_back(x & 0xff);
  v.push_back((x >> 8) & 0xff);
  v.push_back((x >> 16) & 0xff);
  v.push_back((x >> 24) & 0xff);
}
void wr_u16(std::vector<uint8_t> &v, uint16_t x) {
  v.push_back(x & 0xff);
  v.push_back((x >> 8) & 0xff);
}

void save_bmp(const RgbImage &img, const std::string &path) {
  const size_t stride = ((static_cast<size_t>(img.width) * 3 + 3) / 4) * 4;
  const uint32_t data_size = static_cast<uint32_t>(stride * img.height);
  std::vector<uint8_t> out;
  out.reserve(54 + data_size);
  out.push_back('B');
  out.push_back('M');
  wr_u32(out, 54 + data_size);
  wr_u32(out, 0);
  wr_u32(out, 54);
  wr_u32(out, 40);  // BITMAPINFOHEADER
  wr_u32(out, static_cast<uint32_t>(img.width));
  wr_u32(out, static_cast<uint32_t>(img.height));
  wr_u16(out, 1);
  wr_u16(out, 24);
  wr_u32(out, 0);
  wr_u32(out, data_size);
  wr_u32(out, 2835);
  wr_u32(out, 2835);
  wr_u32(out, 0);
  wr_u32(out, 0);
  for (int r = img.height - 1; r >= 0; --r) {
    const size_t row_start = out.size();
    for (int c = 0; c < img.width; ++c) {
      const size_t i = static_cast<size_t>(r) * img.width + c;
      out.push_back(img.b[i]);
      out.push_back(img.g[i]);
      out.push_back(img.r[i]);
    }
    while (out.size() - row_start < stride) out.push_back(0);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char *>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

bool has_suffix(const std::string &s, const std::string &suf) {
  if (s.size() < suf.size()) return false;
  std::string tail = s.substr(s.size() - suf.size());
  for (char &c : tail) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return tail == suf;
}

}  // namespace

RgbImage load_image(const std::string &path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw std::runtime_error("cannot open: " + path);
  uint8_t magic[8] = {};
  const size_t n = std::fread(magic, 1, sizeof magic, fp.get());
  if (n >= 2 && magic[0] == 'B' && magic[1] == 'M') {
    fp.reset();
    return load_bmp(path);
  }
  if (n == 8 && png_sig_cmp(magic, 0, 8) == 0) {
    std::rewind(fp.get());
    return load_png(fp.get(), path);
  }
  throw std::runtime_error("unsupported image format (need PNG or BMP): " + path);
}

void save_image(const RgbImage &img, const std::string &path) {
  if (has_suffix(path, ".bmp"))
    save_bmp(img, path);
  else
    save_png(img, path);
}

}  // namespace hfsr
