#include "fakeval/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "fakeval/csv.hpp"
#include "fakeval/error.hpp"

namespace fakeval {
namespace {

std::size_t pixel_count(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::ImageFormat, "image dimensions must be positive");
  }
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
         RasterImage::kChannels;
}

// Reads the next whitespace-separated header token, skipping '#' comments.
std::string_view next_token(std::string_view data, std::size_t& pos) {
  for (;;) {
    while (pos < data.size() && std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    if (pos < data.size() && data[pos] == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  const std::size_t start = pos;
  while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
  return data.substr(start, pos - start);
}

int header_int(std::string_view data, std::size_t& pos, const char* what) {
  std::int64_t v = 0;
  if (!csv::parse_int(next_token(data, pos), v) || v <= 0 || v > (1 << 24)) {
    throw Error(ErrorCode::ImageFormat, std::string("bad PPM ") + what);
  }
  return static_cast<int>(v);
}

}  // namespace

RasterImage::RasterImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (bytes().size() != pixel_count(width, height)) {
    throw Error(ErrorCode::SizeMismatch, "pixel buffer does not match width*height*3");
  }
}

RasterImage::RasterImage(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (values().size() != pixel_count(width, height)) {
    throw Error(ErrorCode::SizeMismatch, "pixel buffer does not match width*height*3");
  }
  for (double v : values()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::ArgumentOutOfRange, "normalized pixel outside [0,1]");
    }
  }
}

const std::vector<std::uint8_t>& RasterImage::bytes() const {
  if (normalized()) throw Error(ErrorCode::AlreadyNormalized, "image holds normalized values");
  return std::get<std::vector<std::uint8_t>>(pixels_);
}

const std::vector<double>& RasterImage::values() const {
  if (!normalized()) throw Error(ErrorCode::ImageFormat, "image holds 8-bit values");
  return std::get<std::vector<double>>(pixels_);
}

double RasterImage::at(int x, int y, int c) const {
  const std::size_t idx =
      (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
          kChannels +
      static_cast<std::size_t>(c);
  return std::visit([idx](const auto& px) { return static_cast<double>(px[idx]); }, pixels_);
}

RasterImage decode_ppm(std::string_view data) {
  std::size_t pos = 0;
  if (next_token(data, pos) != "P6") throw Error(ErrorCode::ImageFormat, "not a binary PPM (P6)");
  const int width = header_int(data, pos, "width");
  const int height = header_int(data, pos, "height");
  const int maxval = header_int(data, pos, "maxval");
  if (maxval != 255) throw Error(ErrorCode::ImageFormat, "only 8-bit PPM (maxval 255) is supported");
  // Exactly one whitespace byte separates the header from the raster.
  if (pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[pos]))) {
    throw Error(ErrorCode::ImageFormat, "truncated PPM header");
  }
  ++pos;
  const std::size_t n = pixel_count(width, height);
  if (data.size() - pos < n) throw Error(ErrorCode::ImageFormat, "truncated PPM raster");
  std::vector<std::uint8_t> px(n);
  std::copy_n(reinterpret_cast<const std::uint8_t*>(data.data() + pos), n, px.begin());
  return RasterImage(width, height, std::move(px));
}

std::string encode_ppm(const RasterImage& image) {
  const auto& px = image.bytes();
  std::string out = "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) +
                    "\n255\n";
  out.append(reinterpret_cast<const char*>(px.data()), px.size());
  return out;
}

RasterImage read_ppm(const std::filesystem::path& path) { return decode_ppm(csv::read_file(path)); }

void write_ppm(const std::filesystem::path& path, const RasterImage& image) {
  csv::write_file(path, encode_ppm(image));
}

BoundingBox clamp_box(const BoundingBox& box, int width, int height) {
  if (box.width <= 0 || box.height <= 0) {
    throw Error(ErrorCode::NonPositiveBox, "bounding box must have positive width and height");
  }
  const long long x0 = std::max<long long>(box.x, 0);
  const long long y0 = std::max<long long>(box.y, 0);
  const long long x1 = std::min<long long>(static_cast<long long>(box.x) + box.width, width);
  const long long y1 = std::min<long long>(static_cast<long long>(box.y) + box.height, height);
  if (x1 <= x0 || y1 <= y0) {
    throw Error(ErrorCode::BoxOutsideImage, "bounding box does not intersect the image");
  }
  return {static_cast<int>(x0), static_cast<int>(y0), static_cast<int>(x1 - x0),
          static_cast<int>(y1 - y0)};
}

namespace {

RasterImage crop(const RasterImage& image, const BoundingBox& b) {
  const std::size_t n = static_cast<std::size_t>(b.width) * static_cast<std::size_t>(b.height) *
                        RasterImage::kChannels;
  auto copy_window = [&](const auto& src, auto& dst) {
    const std::size_t row = static_cast<std::size_t>(b.width) * RasterImage::kChannels;
    for (int y = 0; y < b.height; ++y) {
      const std::size_t from =
          (static_cast<std::size_t>(b.y + y) * static_cast<std::size_t>(image.width()) +
           static_cast<std::size_t>(b.x)) *
          RasterImage::kChannels;
      std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(from), row,
                  dst.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(y) * row));
    }
  };
  if (image.normalized()) {
    std::vector<double> dst(n);
    copy_window(image.values(), dst);
    return RasterImage(b.width, b.height, std::move(dst));
  }
  std::vector<std::uint8_t> dst(n);
  copy_window(image.bytes(), dst);
  return RasterImage(b.width, b.height, std::move(dst));
}

// Source coordinate for output index i with corner-aligned endpoints.
double source_coord(int i, int in_size, int out_size) {
  if (out_size == 1 || in_size == 1) return 0.0;
  return static_cast<double>(i) * static_cast<double>(in_size - 1) / static_cast<double>(out_size - 1);
}

}  // namespace

RasterImage resize_bilinear(const RasterImage& image, int out_width, int out_height) {
  if (out_width <= 0 || out_height <= 0) {
    throw Error(ErrorCode::ArgumentOutOfRange, "target size must be positive");
  }
  const std::size_t n = static_cast<std::size_t>(out_width) * static_cast<std::size_t>(out_height) *
                        RasterImage::kChannels;
  std::vector<double> out(n);
  for (int oy = 0; oy < out_height; ++oy) {
    const double sy = source_coord(oy, image.height(), out_height);
    const int y0 = static_cast<int>(std::floor(sy));
    const int y1 = std::min(y0 + 1, image.height() - 1);
    const double wy = sy - y0;
    for (int ox = 0; ox < out_width; ++ox) {
      const double sx = source_coord(ox, image.width(), out_width);
      const int x0 = static_cast<int>(std::floor(sx));
      const int x1 = std::min(x0 + 1, image.width() - 1);
      const double wx = sx - x0;
      for (int c = 0; c < RasterImage::kChannels; ++c) {
        const double top = image.at(x0, y0, c) * (1.0 - wx) + image.at(x1, y0, c) * wx;
        const double bottom = image.at(x0, y1, c) * (1.0 - wx) + image.at(x1, y1, c) * wx;
        out[(static_cast<std::size_t>(oy) * static_cast<std::size_t>(out_width) +
             static_cast<std::size_t>(ox)) *
                RasterImage::kChannels +
            static_cast<std::size_t>(c)] = top * (1.0 - wy) + bottom * wy;
      }
    }
  }
  if (image.normalized()) {
    for (double& v : out) v = std::clamp(v, 0.0, 1.0);
    return RasterImage(out_width, out_height, std::move(out));
  }
  std::vector<std::uint8_t> bytes(n);
  for (std::size_t i = 0; i < n; ++i) {
    bytes[i] = static_cast<std::uint8_t>(std::clamp(std::lround(out[i]), 0L, 255L));
  }
  return RasterImage(out_width, out_height, std::move(bytes));
}

RasterImage crop_align(const RasterImage& image, const BoundingBox& box, int target) {
  if (target <= 0) throw Error(ErrorCode::ArgumentOutOfRange, "target size must be positive");
  const BoundingBox clamped = clamp_box(box, image.width(), image.height());
  RasterImage window = crop(image, clamped);
  if (window.width() == target && window.height() == target) return window;
  return resize_bilinear(window, target, target);
}

RasterImage normalize(const RasterImage& image) {
  if (image.normalized()) throw Error(ErrorCode::AlreadyNormalized, "image is already normalized");
  const auto& px = image.bytes();
  std::vector<double> out(px.size());
  std::transform(px.begin(), px.end(), out.begin(),
                 [](std::uint8_t v) { return static_cast<double>(v) / 255.0; });
  return RasterImage(image.width(), image.height(), std::move(out));
}

}  // namespace fakeval
