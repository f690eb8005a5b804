#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rvc/chain.hpp"
#include "rvc/ternary.hpp"

namespace rvc {

// Binary raster, one bit per pixel: 0 white, 1 black, rows stored
// top-to-bottom, pixels left-to-right.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(std::uint32_t width, std::uint32_t height)
      : width_(width), height_(height),
        pixels_(static_cast<std::size_t>(width) * height, 0) {}

  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  int pixel(std::uint32_t x, std::uint32_t y) const {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  void set_pixel(std::uint32_t x, std::uint32_t y, int black) {
    pixels_[static_cast<std::size_t>(y) * width_ + x] = black ? 1 : 0;
  }

  const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }

  bool operator==(const BinaryImage&) const = default;

 private:
  std::uint32_t width_ = 0;
  std::uint32_t height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// A share renders each secret pixel as a 1x3 block of subpixels, two
// black and one white; the white position is the block's ternary symbol.
// Stacking two shares ORs the ink, so a white secret pixel (equal
// symbols) keeps one white subpixel while a black one (distinct symbols)
// goes completely dark.
struct SubpixelPattern {
  TernarySymbol white_index;

  static SubpixelPattern from_symbol(TernarySymbol s) noexcept { return {s}; }
  // Throws MalformedBlock unless exactly one subpixel is white.
  static SubpixelPattern from_bits(int black0, int black1, int black2);

  int subpixel(int i) const noexcept { return i == white_index.value() ? 0 : 1; }
};

// A rendered share: 3w x h raster plus the identity and chain geometry
// needed to pull embedded levels back out.
struct ShareImage {
  BinaryImage image;
  ShareIndex share_index;
  ChainLayout layout;
};

// Row-major flattening and its inverse.
BitSeq image_to_bits(const BinaryImage& img);
BinaryImage bits_to_image(std::span<const SecretBit> bits, std::uint32_t width,
                          std::uint32_t height);

// One subpixel block per symbol, expanded horizontally. |symbols| must
// equal width*height and the layout's top length.
ShareImage render_share_image(std::span<const TernarySymbol> symbols, std::uint32_t width,
                              std::uint32_t height, ShareIndex j, const ChainLayout& layout);

// Physical transparency stacking: per-pixel OR, black wins. Pure pixel
// work, no symbol computation.
BinaryImage stack_images(const BinaryImage& a, const BinaryImage& b);
BinaryImage stack_images(const ShareImage& a, const ShareImage& b);

// Machine version of looking at the stack: a block with exactly one
// white subpixel is a white secret pixel, a fully dark block is black.
// Two or three white subpixels cannot come from valid shares ->
// InvalidStack.
BinaryImage perceptual_decode(const BinaryImage& stacked, std::uint32_t width,
                              std::uint32_t height);

// Exact inverse of rendering: white position per block. Throws
// MalformedBlock on any block without exactly one white subpixel.
SymbolSeq symbols_from_share_image(const BinaryImage& share_raster);
SymbolSeq symbols_from_share_image(const ShareImage& share);

struct ImageShareSet {
  ShareSet shares;                   // symbol form, for containers
  std::array<ShareImage, 3> images;  // rendered form, for transparencies
};

// Flattens the images (smallest first, pixel counts tripling) into a
// message chain, encodes it, and renders the three top shares. The
// smaller images' shares live as symbol runs inside the top shares, not
// as rectangles of the rendering; extraction reshapes after the fact.
ImageShareSet encode_image_chain(std::span<const BinaryImage> images, RandomSource& rng);

// Recovers the level-k image from any two rendered shares.
BinaryImage decode_image_level(const ShareImage& share_a, const ShareImage& share_b,
                               std::size_t level);

// PBM, both flavors: P1 text and P4 packed (rows padded to a byte,
// MSB-first, 1 = black in both the format and this library). Reading
// accepts '#' comments; writing is canonical (single spaces, one row
// per line for P1) and never emits comments. Sides are capped at 65536
// pixels.
enum class PbmVariant { Plain, Raw };

BinaryImage read_pbm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pbm(const BinaryImage& img, PbmVariant variant);

}  // namespace rvc
