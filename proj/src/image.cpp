#include "rvc/image.hpp"

#include <cctype>
#include <sstream>
#include <string>

namespace rvc {

namespace {

constexpr std::uint32_t kMaxSide = 65536;

}  // namespace

SubpixelPattern SubpixelPattern::from_bits(int black0, int black1, int black2) {
  const int whites = (black0 ? 0 : 1) + (black1 ? 0 : 1) + (black2 ? 0 : 1);
  if (whites != 1) {
    std::ostringstream msg;
    msg << whites << " white subpixels in a block, expected 1";
    throw Error(ErrorCode::MalformedBlock, msg.str());
  }
  return SubpixelPattern{TernarySymbol(!black0 ? 0 : !black1 ? 1 : 2)};
}

BitSeq image_to_bits(const BinaryImage& img) {
  BitSeq bits;
  bits.reserve(img.pixel_count());
  for (std::uint8_t p : img.pixels()) bits.push_back(SecretBit(p));
  return bits;
}

BinaryImage bits_to_image(std::span<const SecretBit> bits, std::uint32_t width,
                          std::uint32_t height) {
  if (bits.size() != static_cast<std::size_t>(width) * height) {
    std::ostringstream msg;
    msg << bits.size() << " bits do not fill " << width << "x" << height << " pixels";
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  BinaryImage img(width, height);
  std::size_t i = 0;
  for (std::uint32_t y = 0; y < height; ++y)
    for (std::uint32_t x = 0; x < width; ++x) img.set_pixel(x, y, bits[i++].value());
  return img;
}

ShareImage render_share_image(std::span<const TernarySymbol> symbols, std::uint32_t width,
                              std::uint32_t height, ShareIndex j, const ChainLayout& layout) {
  if (symbols.size() != static_cast<std::size_t>(width) * height) {
    std::ostringstream msg;
    msg << symbols.size() << " symbols do not fill " << width << "x" << height << " pixels";
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  if (symbols.size() != layout.top_length()) {
    std::ostringstream msg;
    msg << symbols.size() << " symbols but the layout's top level has "
        << layout.top_length();
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  BinaryImage raster(3 * width, height);
  for (std::uint32_t y = 0; y < height; ++y) {
    for (std::uint32_t x = 0; x < width; ++x) {
      const SubpixelPattern block =
          SubpixelPattern::from_symbol(symbols[static_cast<std::size_t>(y) * width + x]);
      for (int k = 0; k < 3; ++k) raster.set_pixel(3 * x + k, y, block.subpixel(k));
    }
  }
  return ShareImage{std::move(raster), j, layout};
}

BinaryImage stack_images(const BinaryImage& a, const BinaryImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    std::ostringstream msg;
    msg << a.width() << "x" << a.height() << " stacked on " << b.width() << "x"
        << b.height();
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  BinaryImage out(a.width(), a.height());
  for (std::uint32_t y = 0; y < a.height(); ++y)
    for (std::uint32_t x = 0; x < a.width(); ++x)
      out.set_pixel(x, y, a.pixel(x, y) | b.pixel(x, y));
  return out;
}

BinaryImage stack_images(const ShareImage& a, const ShareImage& b) {
  return stack_images(a.image, b.image);
}

BinaryImage perceptual_decode(const BinaryImage& stacked, std::uint32_t width,
                              std::uint32_t height) {
  if (stacked.width() != 3 * width || stacked.height() != height) {
    std::ostringstream msg;
    msg << stacked.width() << "x" << stacked.height() << " is not a stack of " << width
        << "x" << height << " blocks";
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  BinaryImage out(width, height);
  for (std::uint32_t y = 0; y < height; ++y) {
    for (std::uint32_t x = 0; x < width; ++x) {
      int whites = 0;
      for (int k = 0; k < 3; ++k) whites += stacked.pixel(3 * x + k, y) ? 0 : 1;
      if (whites > 1) {
        std::ostringstream msg;
        msg << whites << " white subpixels in the block at (" << x << ", " << y << ")";
        throw Error(ErrorCode::InvalidStack, msg.str(),
                    static_cast<std::size_t>(y) * width + x);
      }
      out.set_pixel(x, y, whites == 0);
    }
  }
  return out;
}

SymbolSeq symbols_from_share_image(const BinaryImage& share_raster) {
  if (share_raster.width() % 3 != 0)
    throw Error(ErrorCode::MalformedBlock, "raster width is not a multiple of 3");
  const std::uint32_t width = share_raster.width() / 3;
  SymbolSeq symbols;
  symbols.reserve(static_cast<std::size_t>(width) * share_raster.height());
  for (std::uint32_t y = 0; y < share_raster.height(); ++y) {
    for (std::uint32_t x = 0; x < width; ++x) {
      int white = -1;
      int whites = 0;
      for (int k = 0; k < 3; ++k) {
        if (!share_raster.pixel(3 * x + k, y)) {
          white = k;
          ++whites;
        }
      }
      if (whites != 1) {
        std::ostringstream msg;
        msg << whites << " white subpixels in the block at (" << x << ", " << y << ")";
        throw Error(ErrorCode::MalformedBlock, msg.str(),
                    static_cast<std::size_t>(y) * width + x);
      }
      symbols.push_back(TernarySymbol(white));
    }
  }
  return symbols;
}

SymbolSeq symbols_from_share_image(const ShareImage& share) {
  return symbols_from_share_image(share.image);
}

ImageShareSet encode_image_chain(std::span<const BinaryImage> images, RandomSource& rng) {
  MessageChain chain;
  for (const BinaryImage& img : images) {
    chain.levels.push_back(image_to_bits(img));
    chain.shapes.push_back(LevelShape{img.width(), img.height()});
  }
  ImageShareSet result;
  result.shares = encode_chain(chain, rng);
  const BinaryImage& top = images.back();
  for (int j = 1; j <= 3; ++j) {
    result.images[j - 1] = render_share_image(result.shares.share(ShareIndex(j)),
                                              top.width(), top.height(), ShareIndex(j),
                                              result.shares.layout);
  }
  return result;
}

BinaryImage decode_image_level(const ShareImage& share_a, const ShareImage& share_b,
                               std::size_t level) {
  if (!(share_a.layout == share_b.layout))
    throw Error(ErrorCode::LayoutMismatch, "shares disagree on the chain layout");
  const SymbolSeq symbols_a = symbols_from_share_image(share_a);
  const SymbolSeq symbols_b = symbols_from_share_image(share_b);
  const BitSeq bits = decode_level(symbols_a, share_a.share_index, symbols_b,
                                   share_b.share_index, share_a.layout, level);
  const std::optional<LevelShape>& shape = share_a.layout.shape(level);
  if (!shape) {
    std::ostringstream msg;
    msg << "level " << level << " has no pixel shape";
    throw Error(ErrorCode::BadImageShape, msg.str());
  }
  return bits_to_image(bits, shape->width, shape->height);
}

namespace {

struct ByteCursor {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;

  bool eof() const { return pos >= data.size(); }
  int peek() const { return eof() ? -1 : data[pos]; }
  int take() { return eof() ? -1 : data[pos++]; }
};

bool is_pbm_space(int c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

void skip_space_and_comments(ByteCursor& c) {
  for (;;) {
    while (is_pbm_space(c.peek())) c.take();
    if (c.peek() != '#') return;
    while (!c.eof() && c.peek() != '\n') c.take();
  }
}

std::uint32_t parse_dimension(ByteCursor& c, const char* what) {
  skip_space_and_comments(c);
  if (!std::isdigit(c.peek()))
    throw Error(ErrorCode::BadHeader, std::string("missing ") + what);
  std::uint64_t v = 0;
  while (std::isdigit(c.peek())) {
    v = v * 10 + static_cast<std::uint64_t>(c.take() - '0');
    if (v > kMaxSide)
      throw Error(ErrorCode::DimensionOverflow, std::string(what) + " exceeds 65536");
  }
  if (v == 0) throw Error(ErrorCode::BadHeader, std::string(what) + " is zero");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

BinaryImage read_pbm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '1' && bytes[1] != '4'))
    throw Error(ErrorCode::BadHeader, "not a PBM P1 or P4 file");
  const bool raw = bytes[1] == '4';
  ByteCursor c{bytes, 2};
  const std::uint32_t width = parse_dimension(c, "width");
  const std::uint32_t height = parse_dimension(c, "height");
  BinaryImage img(width, height);

  if (!raw) {
    for (std::uint32_t y = 0; y < height; ++y) {
      for (std::uint32_t x = 0; x < width; ++x) {
        skip_space_and_comments(c);
        const int ch = c.take();
        if (ch == '0' || ch == '1') {
          img.set_pixel(x, y, ch == '1');
        } else if (ch < 0) {
          std::ostringstream msg;
          msg << "raster ends at pixel (" << x << ", " << y << ")";
          throw Error(ErrorCode::TruncatedRaster, msg.str());
        } else {
          std::ostringstream msg;
          msg << "byte 0x" << std::hex << ch << " in a P1 raster";
          throw Error(ErrorCode::BadHeader, msg.str());
        }
      }
    }
    return img;
  }

  // P4: exactly one whitespace byte after the height, then packed rows,
  // each padded to a byte boundary. Pad bits are ignored.
  const int sep = c.take();
  if (sep < 0) throw Error(ErrorCode::TruncatedRaster, "raster is missing");
  if (!is_pbm_space(sep))
    throw Error(ErrorCode::BadHeader, "no whitespace between the height and the raster");
  const std::size_t row_bytes = (static_cast<std::size_t>(width) + 7) / 8;
  for (std::uint32_t y = 0; y < height; ++y) {
    if (c.data.size() - c.pos < row_bytes) {
      std::ostringstream msg;
      msg << "raster ends inside row " << y;
      throw Error(ErrorCode::TruncatedRaster, msg.str());
    }
    for (std::uint32_t x = 0; x < width; ++x)
      img.set_pixel(x, y, (c.data[c.pos + x / 8] >> (7 - x % 8)) & 1);
    c.pos += row_bytes;
  }
  return img;
}

std::vector<std::uint8_t> write_pbm(const BinaryImage& img, PbmVariant variant) {
  if (img.width() == 0 || img.height() == 0)
    throw Error(ErrorCode::BadImageShape, "empty image");
  if (img.width() > kMaxSide || img.height() > kMaxSide)
    throw Error(ErrorCode::DimensionOverflow, "side exceeds 65536");

  std::ostringstream header;
  header << (variant == PbmVariant::Plain ? "P1" : "P4") << "\n"
         << img.width() << " " << img.height() << "\n";
  const std::string head = header.str();
  std::vector<std::uint8_t> out(head.begin(), head.end());

  if (variant == PbmVariant::Plain) {
    for (std::uint32_t y = 0; y < img.height(); ++y) {
      for (std::uint32_t x = 0; x < img.width(); ++x) {
        if (x) out.push_back(' ');
        out.push_back(img.pixel(x, y) ? '1' : '0');
      }
      out.push_back('\n');
    }
    return out;
  }

  const std::size_t row_bytes = (static_cast<std::size_t>(img.width()) + 7) / 8;
  for (std::uint32_t y = 0; y < img.height(); ++y) {
    const std::size_t row_start = out.size();
    out.resize(out.size() + row_bytes, 0);
    for (std::uint32_t x = 0; x < img.width(); ++x) {
      if (img.pixel(x, y))
        out[row_start + x / 8] |= static_cast<std::uint8_t>(0x80u >> (x % 8));
    }
  }
  return out;
}

}  // namespace rvc
