#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rvc/chain.hpp"
#include "rvc/ternary.hpp"

namespace rvc {

// Prefix code for the share alphabet: 0 -> "0", 1 -> "10", 2 -> "11".
// No codeword prefixes another, so the bit stream needs no separators;
// the symbol count is carried alongside because the trailing zero
// padding would otherwise be indistinguishable from "0" codewords.
struct PrefixBitstream {
  std::vector<std::uint8_t> bytes;  // MSB-first within each byte
  std::size_t bit_count = 0;        // meaningful bits; the rest of the last byte is zero
  std::size_t symbol_count = 0;
};

PrefixBitstream prefix_encode(std::span<const TernarySymbol> symbols);

// Exact inverse of prefix_encode. Throws TruncatedStream when the bits
// run out mid-codeword or before symbol_count symbols, NonzeroPadding
// when a bit after the last codeword is set, TrailingData when whole
// surplus bytes follow the padding.
SymbolSeq prefix_decode(const PrefixBitstream& stream);

// CRC-32, IEEE 802.3 polynomial (reflected 0xEDB88320), as used by zip
// and PNG. crc32("123456789") == 0xCBF43926.
std::uint32_t crc32(std::span<const std::uint8_t> data);

enum class PayloadKind : std::uint8_t { Text = 0, Image = 1 };

// One player's share at rest: who it belongs to, the chain geometry it
// was cut from, and the symbol payload. Image-kind containers record a
// pixel shape for every level.
struct ShareContainer {
  ShareIndex share_index;
  PayloadKind kind = PayloadKind::Text;
  ChainLayout layout;
  SymbolSeq symbols;  // the full top-level share, layout.top_length() symbols

  bool operator==(const ShareContainer&) const = default;
};

// Byte layout (all integers big-endian):
//
//   "RVC1"                     4 bytes magic
//   version                    1 byte, currently 0x01
//   share_index                1 byte, 1..3
//   kind                       1 byte, 0 text / 1 image
//   level_count                1 byte, >= 1
//   per level, ascending:      n_k u32; for image kind width u32, height u32
//   symbol_count               u32, equals n_L
//   crc32 of payload bytes     u32
//   payload                    prefix bitstream, zero-padded to a byte
//
// The format is fixed bit-exactly: serialize(parse(b)) == b for every
// valid b. Conventional file extension: .rvcs
std::vector<std::uint8_t> serialize_share(const ShareContainer& container);
ShareContainer parse_share(std::span<const std::uint8_t> bytes);

// Exact ratio arithmetic for the efficiency report; always reduced,
// denominator positive.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;  // "40/81", or "9" when the denominator is 1

  bool operator==(const Rational&) const = default;
};

// With H = total secret bits across all levels and n = top share length:
//   ternary_efficiency      H / 3n   secret bits per share symbol
//   binary_efficiency       H / 5n   secret bits per share bit once the
//                                    symbols are prefix-coded (a bit costs
//                                    five share bits on average)
//   raw_subpixel_expansion  9        share bits per secret bit with the
//                                    subpixels stored unpacked
//   improvement_ratio       H / n    binary efficiency over the 1/5
//                                    single-level baseline
// A single-level layout lands exactly on the 1/3 and 1/5 baselines.
struct EfficiencyMetrics {
  Rational ternary_efficiency;
  Rational binary_efficiency;
  Rational raw_subpixel_expansion;
  Rational improvement_ratio;
};

EfficiencyMetrics efficiency_report(const ChainLayout& layout);

}  // namespace rvc
