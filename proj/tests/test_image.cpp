#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "rvc/image.hpp"

using namespace rvc;
using helpers::bits;
using helpers::capture_error;
using helpers::sym;

namespace {

BinaryImage image_from_rows(const std::vector<std::string>& rows) {
  BinaryImage img(static_cast<std::uint32_t>(rows[0].size()),
                  static_cast<std::uint32_t>(rows.size()));
  for (std::uint32_t y = 0; y < img.height(); ++y)
    for (std::uint32_t x = 0; x < img.width(); ++x)
      img.set_pixel(x, y, rows[y][x] == '1');
  return img;
}

std::vector<std::uint8_t> ascii(const std::string& text) {
  return std::vector<std::uint8_t>(text.begin(), text.end());
}

BinaryImage random_image(std::uint32_t w, std::uint32_t h, RandomSource& rng) {
  BinaryImage img(w, h);
  for (std::uint32_t y = 0; y < h; ++y)
    for (std::uint32_t x = 0; x < w; ++x) img.set_pixel(x, y, rng.uniform(2));
  return img;
}

}  // namespace

TEST_CASE("flattening is row-major and invertible") {
  BinaryImage black(1, 1);
  black.set_pixel(0, 0, 1);
  CHECK(image_to_bits(black) == bits("1"));

  const BinaryImage strip = image_from_rows({"010"});
  CHECK(image_to_bits(strip) == bits("010"));

  const BinaryImage grid = image_from_rows({"101", "010", "101"});
  CHECK(image_to_bits(grid) == bits("101010101"));

  CHECK(bits_to_image(bits("1"), 1, 1) == black);
  CHECK(bits_to_image(bits("010"), 3, 1) == strip);
  CHECK(bits_to_image(bits("101010101"), 3, 3) == grid);

  auto err = capture_error([] { bits_to_image(helpers::bits("10"), 3, 1); });
  REQUIRE(err);
  CHECK(err->code() == ErrorCode::ShapeMismatch);
}

TEST_CASE("subpixel patterns have one white cell at the symbol position") {
  for (int s = 0; s < 3; ++s) {
    const SubpixelPattern p = SubpixelPattern::from_symbol(TernarySymbol(s));
    int whites = 0;
    for (int k = 0; k < 3; ++k) {
      if (p.subpixel(k) == 0) {
        ++whites;
        CHECK(k == s);
      }
    }
    CHECK(whites == 1);
  }

  CHECK(SubpixelPattern::from_bits(0, 1, 1).white_index == TernarySymbol(0));
  CHECK(SubpixelPattern::from_bits(1, 0, 1).white_index == TernarySymbol(1));
  CHECK(SubpixelPattern::from_bits(1, 1, 0).white_index == TernarySymbol(2));

  auto none = capture_error([] { SubpixelPattern::from_bits(1, 1, 1); });
  REQUIRE(none);
  CHECK(none->code() == ErrorCode::MalformedBlock);
  auto all = capture_error([] { SubpixelPattern::from_bits(0, 0, 0); });
  REQUIRE(all);
  CHECK(all->code() == ErrorCode::MalformedBlock);
}

TEST_CASE("rendering writes one block per pixel and recovers exactly") {
  const ChainLayout layout = ChainLayout::from_lengths({3}, {LevelShape{3, 1}});
  const ShareImage share = render_share_image(sym("021"), 3, 1, ShareIndex(2), layout);
  CHECK(share.image.width() == 9);
  CHECK(share.image.height() == 1);
  CHECK(share.share_index == ShareIndex(2));

  // symbol 0 -> white black black, 2 -> black black white, 1 -> black white black
  const BinaryImage expected = image_from_rows({"011110101"});
  CHECK(share.image == expected);
  CHECK(symbols_from_share_image(share) == sym("021"));

  auto wrong_count = capture_error(
      [&] { render_share_image(sym("01"), 3, 1, ShareIndex(1), layout); });
  REQUIRE(wrong_count);
  CHECK(wrong_count->code() == ErrorCode::ShapeMismatch);

  auto wrong_layout = capture_error([&] {
    render_share_image(sym("012012"), 3, 2, ShareIndex(1), layout);
  });
  REQUIRE(wrong_layout);
  CHECK(wrong_layout->code() == ErrorCode::ShapeMismatch);
}

TEST_CASE("recovery flags malformed blocks and bad widths") {
  auto bad_width = capture_error(
      [] { symbols_from_share_image(BinaryImage(4, 1)); });
  REQUIRE(bad_width);
  CHECK(bad_width->code() == ErrorCode::MalformedBlock);

  BinaryImage two_white(3, 1);
  two_white.set_pixel(2, 0, 1);
  auto err = capture_error([&] { symbols_from_share_image(two_white); });
  REQUIRE(err);
  CHECK(err->code() == ErrorCode::MalformedBlock);
  CHECK(err->position() == 0);

  // an all-black block is malformed for a single share, though it is a
  // legal stacking result
  BinaryImage all_black = image_from_rows({"111"});
  auto dark = capture_error([&] { symbols_from_share_image(all_black); });
  REQUIRE(dark);
  CHECK(dark->code() == ErrorCode::MalformedBlock);
}

TEST_CASE("stacking matches the pairwise enumeration oracle") {
  const ChainLayout layout = ChainLayout::from_lengths({1}, {LevelShape{1, 1}});
  for (int sa = 0; sa < 3; ++sa) {
    for (int sb = 0; sb < 3; ++sb) {
      const ShareImage a = render_share_image(
          SymbolSeq{TernarySymbol(sa)}, 1, 1, ShareIndex(1), layout);
      const ShareImage b = render_share_image(
          SymbolSeq{TernarySymbol(sb)}, 1, 1, ShareIndex(2), layout);
      const BinaryImage stacked = stack_images(a, b);
      int whites = 0;
      for (int k = 0; k < 3; ++k)
        whites += stacked.pixel(static_cast<std::uint32_t>(k), 0) ? 0 : 1;
      // equal symbols keep their shared white cell, distinct ones cover it
      CHECK(whites == (sa == sb ? 1 : 0));

      const BinaryImage decoded = perceptual_decode(stacked, 1, 1);
      CHECK(decoded.pixel(0, 0) ==
            decode_pair(TernarySymbol(sa), TernarySymbol(sb)).value());
    }
  }
}

TEST_CASE("stacking is pixelwise OR with black absorbing") {
  const BinaryImage a = image_from_rows({"010011"});
  const BinaryImage b = image_from_rows({"110001"});
  CHECK(stack_images(a, b) == image_from_rows({"110011"}));
  CHECK(stack_images(a, a) == a);

  const BinaryImage dark = image_from_rows({"111111"});
  CHECK(stack_images(a, dark) == dark);

  auto err = capture_error([&] { stack_images(a, BinaryImage(3, 1)); });
  REQUIRE(err);
  CHECK(err->code() == ErrorCode::ShapeMismatch);
}

TEST_CASE("perceptual_decode reads blocks and rejects impossible stacks") {
  CHECK(perceptual_decode(image_from_rows({"101"}), 1, 1).pixel(0, 0) == 0);
  CHECK(perceptual_decode(image_from_rows({"111"}), 1, 1).pixel(0, 0) == 1);

  auto invalid = capture_error(
      [] { perceptual_decode(image_from_rows({"001"}), 1, 1); });
  REQUIRE(invalid);
  CHECK(invalid->code() == ErrorCode::InvalidStack);
  CHECK(invalid->position() == 0);

  auto shape = capture_error(
      [] { perceptual_decode(image_from_rows({"1111"}), 1, 1); });
  REQUIRE(shape);
  CHECK(shape->code() == ErrorCode::ShapeMismatch);
}

TEST_CASE("image chains round trip optically and computationally") {
  RandomSource pixel_rng(31337);
  const std::array<BinaryImage, 3> originals{random_image(1, 1, pixel_rng),
                                             random_image(3, 1, pixel_rng),
                                             random_image(3, 3, pixel_rng)};
  RandomSource rng(555);
  const ImageShareSet set = encode_image_chain(originals, rng);

  for (const ShareImage& share : set.images) {
    CHECK(share.image.width() == 9);
    CHECK(share.image.height() == 3);
  }

  for (int a = 1; a <= 3; ++a) {
    for (int b = a + 1; b <= 3; ++b) {
      const ShareImage& sa = set.images[static_cast<std::size_t>(a) - 1];
      const ShareImage& sb = set.images[static_cast<std::size_t>(b) - 1];
      for (std::size_t k = 1; k <= 3; ++k)
        CHECK(decode_image_level(sa, sb, k) == originals[k - 1]);

      // optical path at the top level: stack, then read gray vs dark
      const BinaryImage stacked = stack_images(sa, sb);
      CHECK(perceptual_decode(stacked, 3, 3) == originals[2]);

      // contrast: white source pixels keep exactly one white subpixel,
      // black ones none
      for (std::uint32_t y = 0; y < 3; ++y) {
        for (std::uint32_t x = 0; x < 3; ++x) {
          int whites = 0;
          for (std::uint32_t k = 0; k < 3; ++k)
            whites += stacked.pixel(3 * x + k, y) ? 0 : 1;
          CHECK(whites == (originals[2].pixel(x, y) ? 0 : 1));
        }
      }
    }
  }
}

TEST_CASE("image chains validate their level ratios") {
  RandomSource rng(1);
  const std::array<BinaryImage, 2> wrong{BinaryImage(2, 1), BinaryImage(3, 3)};
  auto err = capture_error([&] { encode_image_chain(wrong, rng); });
  REQUIRE(err);
  CHECK(err->code() == ErrorCode::BadLengthRatio);
}

TEST_CASE("decode_image_level rejects mismatched and duplicate shares") {
  RandomSource rng(7);
  const std::array<BinaryImage, 2> originals{random_image(2, 1, rng),
                                             random_image(3, 2, rng)};
  const ImageShareSet set = encode_image_chain(originals, rng);

  auto dup = capture_error(
      [&] { decode_image_level(set.images[0], set.images[0], 1); });
  REQUIRE(dup);
  CHECK(dup->code() == ErrorCode::DuplicateShareIndex);

  auto level = capture_error(
      [&] { decode_image_level(set.images[0], set.images[1], 3); });
  REQUIRE(level);
  CHECK(level->code() == ErrorCode::LevelOutOfRange);
}

TEST_CASE("single shares are uniform-density textures") {
  // regardless of the secret, each rendered block has one white cell;
  // with seeded draws the white position is near-uniform per block
  RandomSource rng(2024);
  const BinaryImage secret = random_image(10, 10, rng);
  const std::array<BinaryImage, 1> chain{secret};
  const ImageShareSet set = encode_image_chain(chain, rng);

  std::array<int, 3> position_counts{};
  for (const ShareImage& share : set.images) {
    for (std::uint32_t y = 0; y < 10; ++y) {
      for (std::uint32_t x = 0; x < 10; ++x) {
        int whites = 0;
        for (std::uint32_t k = 0; k < 3; ++k) {
          if (!share.image.pixel(3 * x + k, y)) {
            ++whites;
            position_counts[k]++;
          }
        }
        CHECK(whites == 1);
      }
    }
  }
  const int total = 300;
  for (int count : position_counts) {
    const double freq = static_cast<double>(count) / total;
    CHECK(freq > 1.0 / 3 - 0.15);
    CHECK(freq < 1.0 / 3 + 0.15);
  }
}

TEST_CASE("PBM P1 reads and writes canonically") {
  const BinaryImage diag = read_pbm(ascii("P1\n2 2\n1 0\n0 1\n"));
  CHECK(diag == image_from_rows({"10", "01"}));

  // comments and loose whitespace are accepted
  const BinaryImage commented =
      read_pbm(ascii("P1 # magic\n# a comment line\n 2\t2 \n1 0 0 1"));
  CHECK(commented == diag);

  const std::vector<std::uint8_t> canonical = write_pbm(diag, PbmVariant::Plain);
  CHECK(canonical == ascii("P1\n2 2\n1 0\n0 1\n"));
  CHECK(read_pbm(canonical) == diag);
  CHECK(write_pbm(read_pbm(canonical), PbmVariant::Plain) == canonical);
}

TEST_CASE("PBM P4 packs rows MSB-first with padded bytes") {
  const BinaryImage strip = image_from_rows({"010"});
  const std::vector<std::uint8_t> raw = write_pbm(strip, PbmVariant::Raw);
  std::vector<std::uint8_t> expected = ascii("P4\n3 1\n");
  expected.push_back(0x40);
  CHECK(raw == expected);
  CHECK(read_pbm(raw) == strip);

  // 9 pixels a row: two raster bytes per row, pad bits ignored on read
  const BinaryImage wide = image_from_rows({"101010101", "010101010"});
  const std::vector<std::uint8_t> packed = write_pbm(wide, PbmVariant::Raw);
  CHECK(read_pbm(packed) == wide);
  CHECK(write_pbm(read_pbm(packed), PbmVariant::Raw) == packed);

  // both variants describe the same pixels
  CHECK(read_pbm(write_pbm(wide, PbmVariant::Plain)) == wide);
}

TEST_CASE("PBM readers reject malformed files") {
  auto magic = capture_error([] { read_pbm(ascii("P2\n2 2\n0")); });
  REQUIRE(magic);
  CHECK(magic->code() == ErrorCode::BadHeader);

  auto missing = capture_error([] { read_pbm(ascii("P1\n2\n")); });
  REQUIRE(missing);
  CHECK(missing->code() == ErrorCode::BadHeader);

  auto zero = capture_error([] { read_pbm(ascii("P1\n0 2\n")); });
  REQUIRE(zero);
  CHECK(zero->code() == ErrorCode::BadHeader);

  auto junk = capture_error([] { read_pbm(ascii("P1\n2 1\n1 x\n")); });
  REQUIRE(junk);
  CHECK(junk->code() == ErrorCode::BadHeader);

  auto huge = capture_error([] { read_pbm(ascii("P1\n65537 1\n")); });
  REQUIRE(huge);
  CHECK(huge->code() == ErrorCode::DimensionOverflow);

  auto short_p1 = capture_error([] { read_pbm(ascii("P1\n2 2\n1 0 0")); });
  REQUIRE(short_p1);
  CHECK(short_p1->code() == ErrorCode::TruncatedRaster);

  auto short_p4 = capture_error([] {
    std::vector<std::uint8_t> bytes = ascii("P4\n9 2\n");
    bytes.push_back(0xFF);
    bytes.push_back(0xFF);
    bytes.push_back(0xFF);  // second row needs two bytes, only one left
    read_pbm(bytes);
  });
  REQUIRE(short_p4);
  CHECK(short_p4->code() == ErrorCode::TruncatedRaster);
}

TEST_CASE("PBM writers reject degenerate shapes") {
  auto empty = capture_error([] { write_pbm(BinaryImage(), PbmVariant::Plain); });
  REQUIRE(empty);
  CHECK(empty->code() == ErrorCode::BadImageShape);
}

TEST_CASE("share images survive a PBM round trip") {
  RandomSource rng(808);
  const std::array<BinaryImage, 2> originals{random_image(3, 1, rng),
                                             random_image(3, 3, rng)};
  const ImageShareSet set = encode_image_chain(originals, rng);

  for (int j = 0; j < 3; ++j) {
    const std::vector<std::uint8_t> file =
        write_pbm(set.images[static_cast<std::size_t>(j)].image, PbmVariant::Raw);
    const BinaryImage back = read_pbm(file);
    CHECK(back == set.images[static_cast<std::size_t>(j)].image);
    CHECK(symbols_from_share_image(back) ==
          set.shares.share(ShareIndex(j + 1)));
  }
}
