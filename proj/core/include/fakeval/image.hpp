#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fakeval {

struct BoundingBox {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// Row-major interleaved RGB raster, either raw 8-bit or normalized to [0,1].
class RasterImage {
 public:
  static constexpr int kChannels = 3;

  RasterImage() = default;
  RasterImage(int width, int height, std::vector<std::uint8_t> pixels);
  RasterImage(int width, int height, std::vector<double> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool normalized() const noexcept { return std::holds_alternative<std::vector<double>>(pixels_); }

  const std::vector<std::uint8_t>& bytes() const;
  const std::vector<double>& values() const;

  // Channel value as a double, regardless of storage.
  double at(int x, int y, int c) const;

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::variant<std::vector<std::uint8_t>, std::vector<double>> pixels_;
};

inline constexpr int kAlignedSize = 299;

// Binary PPM (P6), maxval 255.
RasterImage decode_ppm(std::string_view data);
std::string encode_ppm(const RasterImage& image);
RasterImage read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const RasterImage& image);

// Intersection of the box with the image bounds. Throws NonPositiveBox or
// BoxOutsideImage.
BoundingBox clamp_box(const BoundingBox& box, int width, int height);

// Crops the clamped box and resamples it bilinearly to target x target
// with corner-aligned endpoints. 8-bit input is rounded back to 8-bit.
RasterImage crop_align(const RasterImage& image, const BoundingBox& box, int target = kAlignedSize);

// Bilinear, corner-aligned resize.
RasterImage resize_bilinear(const RasterImage& image, int out_width, int out_height);

// Maps 8-bit values to [0,1] by dividing by 255. Throws AlreadyNormalized.
RasterImage normalize(const RasterImage& image);

}  // namespace fakeval
