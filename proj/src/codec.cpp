#include "rvc/codec.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rvc {

namespace {

constexpr char kMagic[4] = {'R', 'V', 'C', '1'};
constexpr std::uint8_t kVersion = 0x01;

struct BitWriter {
  std::vector<std::uint8_t> bytes;
  std::size_t bit_count = 0;

  void push(int bit) {
    if (bit_count % 8 == 0) bytes.push_back(0);
    if (bit) bytes.back() |= static_cast<std::uint8_t>(0x80u >> (bit_count % 8));
    ++bit_count;
  }
};

constexpr std::array<std::uint32_t, 256> make_crc_table() {
  std::array<std::uint32_t, 256> table{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    table[i] = c;
  }
  return table;
}

constexpr auto kCrcTable = make_crc_table();

void push_u32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max())
    throw Error(ErrorCode::InvariantViolation, std::string(what) + " exceeds 32 bits");
  return static_cast<std::uint32_t>(v);
}

struct ByteReader {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;

  std::size_t remaining() const { return data.size() - pos; }

  std::uint8_t u8(const char* what) {
    if (remaining() < 1)
      throw Error(ErrorCode::TruncatedPayload, std::string("ends before ") + what);
    return data[pos++];
  }

  std::uint32_t u32be(const char* what) {
    if (remaining() < 4)
      throw Error(ErrorCode::TruncatedPayload, std::string("ends before ") + what);
    std::uint32_t v = (static_cast<std::uint32_t>(data[pos]) << 24) |
                      (static_cast<std::uint32_t>(data[pos + 1]) << 16) |
                      (static_cast<std::uint32_t>(data[pos + 2]) << 8) |
                      static_cast<std::uint32_t>(data[pos + 3]);
    pos += 4;
    return v;
  }
};

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> data) {
  std::uint32_t c = 0xFFFFFFFFu;
  for (std::uint8_t b : data) c = kCrcTable[(c ^ b) & 0xFFu] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

PrefixBitstream prefix_encode(std::span<const TernarySymbol> symbols) {
  BitWriter w;
  for (TernarySymbol s : symbols) {
    switch (s.value()) {
      case 0: w.push(0); break;
      case 1: w.push(1); w.push(0); break;
      default: w.push(1); w.push(1); break;
    }
  }
  return PrefixBitstream{std::move(w.bytes), w.bit_count, symbols.size()};
}

SymbolSeq prefix_decode(const PrefixBitstream& stream) {
  if (stream.bytes.size() != (stream.bit_count + 7) / 8)
    throw Error(ErrorCode::InvariantViolation,
                "byte buffer does not match the declared bit count");

  std::size_t pos = 0;
  const auto read_bit = [&]() -> int {
    if (pos >= stream.bit_count)
      throw Error(ErrorCode::TruncatedStream, "bits exhausted mid-stream", pos);
    const int bit = (stream.bytes[pos / 8] >> (7 - pos % 8)) & 1;
    ++pos;
    return bit;
  };

  SymbolSeq symbols;
  symbols.reserve(stream.symbol_count);
  for (std::size_t i = 0; i < stream.symbol_count; ++i) {
    if (read_bit() == 0) {
      symbols.push_back(TernarySymbol(0));
    } else {
      symbols.push_back(TernarySymbol(read_bit() == 0 ? 1 : 2));
    }
  }

  const std::size_t pad_end = std::min(stream.bit_count, (pos + 7) / 8 * 8);
  for (std::size_t i = pos; i < pad_end; ++i) {
    if ((stream.bytes[i / 8] >> (7 - i % 8)) & 1)
      throw Error(ErrorCode::NonzeroPadding, "set bit after the last codeword", i);
  }
  if ((pos + 7) / 8 < stream.bytes.size())
    throw Error(ErrorCode::TrailingData, "surplus bytes after the padding");
  return symbols;
}

std::vector<std::uint8_t> serialize_share(const ShareContainer& container) {
  const ChainLayout& layout = container.layout;
  if (container.symbols.size() != layout.top_length())
    throw Error(ErrorCode::InvariantViolation,
                "payload length does not match the layout's top level");
  if (layout.level_count() > 255)
    throw Error(ErrorCode::InvariantViolation, "more than 255 levels");
  for (std::size_t k = 1; k <= layout.level_count(); ++k) {
    const bool shaped = layout.shape(k).has_value();
    if (container.kind == PayloadKind::Image && !shaped)
      throw Error(ErrorCode::InvariantViolation, "image container with an unshaped level");
    if (container.kind == PayloadKind::Text && shaped)
      throw Error(ErrorCode::InvariantViolation, "text container with a shaped level");
  }

  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(container.share_index.value()));
  out.push_back(static_cast<std::uint8_t>(container.kind));
  out.push_back(static_cast<std::uint8_t>(layout.level_count()));
  for (std::size_t k = 1; k <= layout.level_count(); ++k) {
    push_u32be(out, checked_u32(layout.length(k), "level length"));
    if (container.kind == PayloadKind::Image) {
      push_u32be(out, layout.shape(k)->width);
      push_u32be(out, layout.shape(k)->height);
    }
  }
  push_u32be(out, checked_u32(container.symbols.size(), "symbol count"));

  const PrefixBitstream payload = prefix_encode(container.symbols);
  push_u32be(out, crc32(payload.bytes));
  out.insert(out.end(), payload.bytes.begin(), payload.bytes.end());
  return out;
}

ShareContainer parse_share(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !std::equal(kMagic, kMagic + 4, bytes.begin()))
    throw Error(ErrorCode::BadMagic, "not a share container");
  ByteReader r{bytes, 4};

  const std::uint8_t version = r.u8("version");
  if (version != kVersion) {
    std::ostringstream msg;
    msg << "version " << int(version) << ", expected " << int(kVersion);
    throw Error(ErrorCode::UnsupportedVersion, msg.str());
  }
  const std::uint8_t index_byte = r.u8("share index");
  if (index_byte < 1 || index_byte > 3) {
    std::ostringstream msg;
    msg << "share index byte " << int(index_byte);
    throw Error(ErrorCode::BadShareIndex, msg.str());
  }
  const std::uint8_t kind_byte = r.u8("payload kind");
  if (kind_byte > 1) {
    std::ostringstream msg;
    msg << "payload kind byte " << int(kind_byte);
    throw Error(ErrorCode::BadPayloadKind, msg.str());
  }
  const PayloadKind kind = static_cast<PayloadKind>(kind_byte);

  const std::uint8_t level_count = r.u8("level count");
  std::vector<std::size_t> lengths;
  std::vector<std::optional<LevelShape>> shapes;
  for (std::size_t k = 0; k < level_count; ++k) {
    lengths.push_back(r.u32be("level length"));
    if (kind == PayloadKind::Image) {
      const std::uint32_t w = r.u32be("level width");
      const std::uint32_t h = r.u32be("level height");
      shapes.push_back(LevelShape{w, h});
    }
  }
  ChainLayout layout = ChainLayout::from_lengths(std::move(lengths), std::move(shapes));

  const std::uint32_t symbol_count = r.u32be("symbol count");
  if (symbol_count != layout.top_length()) {
    std::ostringstream msg;
    msg << "symbol count " << symbol_count << " but the top level has "
        << layout.top_length() << " bits";
    throw Error(ErrorCode::InvariantViolation, msg.str());
  }
  const std::uint32_t stored_crc = r.u32be("checksum");

  std::vector<std::uint8_t> payload(bytes.begin() + static_cast<std::ptrdiff_t>(r.pos),
                                    bytes.end());
  const std::uint32_t actual_crc = crc32(payload);
  if (actual_crc != stored_crc) {
    std::ostringstream msg;
    msg << "payload crc " << std::hex << actual_crc << ", header says " << stored_crc;
    throw Error(ErrorCode::ChecksumMismatch, msg.str());
  }

  const std::size_t payload_bits = payload.size() * 8;
  SymbolSeq symbols;
  try {
    symbols = prefix_decode(PrefixBitstream{std::move(payload), payload_bits, symbol_count});
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TruncatedStream)
      throw Error(ErrorCode::TruncatedPayload, "payload ends mid-symbol");
    throw;
  }

  return ShareContainer{ShareIndex(index_byte), kind, std::move(layout),
                        std::move(symbols)};
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return Rational{g ? num / g : num, g ? den / g : den};
}

std::string Rational::str() const {
  std::ostringstream out;
  out << num;
  if (den != 1) out << "/" << den;
  return out.str();
}

EfficiencyMetrics efficiency_report(const ChainLayout& layout) {
  std::int64_t total_secret_bits = 0;
  for (std::size_t n : layout.lengths())
    total_secret_bits += static_cast<std::int64_t>(n);
  const std::int64_t top = static_cast<std::int64_t>(layout.top_length());

  EfficiencyMetrics m;
  m.ternary_efficiency = Rational::make(total_secret_bits, 3 * top);
  m.binary_efficiency = Rational::make(total_secret_bits, 5 * top);
  m.raw_subpixel_expansion = Rational::make(9, 1);
  m.improvement_ratio = Rational::make(total_secret_bits, top);
  return m;
}

}  // namespace rvc
