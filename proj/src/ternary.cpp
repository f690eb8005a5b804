#include "rvc/ternary.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace rvc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InconsistentTriple: return "inconsistent triple";
    case ErrorCode::LengthMismatch: return "length mismatch";
    case ErrorCode::DuplicateShareIndex: return "duplicate share index";
    case ErrorCode::ConstraintOutOfRange: return "constraint out of range";
    case ErrorCode::ConstraintConflict: return "constraint conflict";
    case ErrorCode::BadLengthRatio: return "bad length ratio";
    case ErrorCode::EmptyChain: return "empty chain";
    case ErrorCode::BadImageShape: return "bad image shape";
    case ErrorCode::LevelOutOfRange: return "level out of range";
    case ErrorCode::TruncatedStream: return "truncated stream";
    case ErrorCode::NonzeroPadding: return "nonzero padding";
    case ErrorCode::TrailingData: return "trailing data";
    case ErrorCode::BadMagic: return "bad magic";
    case ErrorCode::UnsupportedVersion: return "unsupported version";
    case ErrorCode::BadShareIndex: return "bad share index";
    case ErrorCode::BadPayloadKind: return "bad payload kind";
    case ErrorCode::ChecksumMismatch: return "checksum mismatch";
    case ErrorCode::TruncatedPayload: return "truncated payload";
    case ErrorCode::InvariantViolation: return "invariant violation";
    case ErrorCode::LayoutMismatch: return "layout mismatch";
    case ErrorCode::ShapeMismatch: return "shape mismatch";
    case ErrorCode::InvalidStack: return "invalid stack";
    case ErrorCode::MalformedBlock: return "malformed block";
    case ErrorCode::BadHeader: return "bad header";
    case ErrorCode::DimensionOverflow: return "dimension overflow";
    case ErrorCode::TruncatedRaster: return "truncated raster";
  }
  return "unknown error";
}

SymbolTriple::SymbolTriple(TernarySymbol p1, TernarySymbol p2, TernarySymbol p3)
    : p_{p1, p2, p3} {
  const bool equal = p1 == p2 && p2 == p3;
  const bool distinct = p1 != p2 && p2 != p3 && p1 != p3;
  if (!equal && !distinct) {
    std::ostringstream msg;
    msg << "pieces " << p1.value() << p2.value() << p3.value()
        << " are neither all equal nor all distinct";
    throw Error(ErrorCode::InconsistentTriple, msg.str());
  }
}

namespace {

// The six permutations of 012, lexicographic.
constexpr int kDistinctOptions[6][3] = {
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
};

}  // namespace

int bit_option_count(SecretBit bit) noexcept { return bit.value() == 0 ? 3 : 6; }

SymbolTriple bit_triple_option(SecretBit bit, int option) {
  if (option < 0 || option >= bit_option_count(bit))
    throw std::out_of_range("triple option out of range");
  if (bit.value() == 0) {
    TernarySymbol s(option);
    return SymbolTriple(s, s, s);
  }
  const int* p = kDistinctOptions[option];
  return SymbolTriple(TernarySymbol(p[0]), TernarySymbol(p[1]), TernarySymbol(p[2]));
}

int constrained_option_count(SecretBit bit) noexcept { return bit.value() == 0 ? 1 : 2; }

SymbolTriple constrained_triple_option(SecretBit bit, ShareIndex fixed_share,
                                       TernarySymbol fixed_symbol, int option) {
  if (option < 0 || option >= constrained_option_count(bit))
    throw std::out_of_range("triple option out of range");
  if (bit.value() == 0)
    return SymbolTriple(fixed_symbol, fixed_symbol, fixed_symbol);

  const int s = fixed_symbol.value();
  const int lo = s == 0 ? 1 : 0;  // the two symbols not pinned, ascending
  const int hi = s == 2 ? 1 : 2;
  const int fixed_pos = fixed_share.value() - 1;
  const int free0 = fixed_pos == 0 ? 1 : 0;
  const int free1 = fixed_pos == 2 ? 1 : 2;

  int p[3];
  p[fixed_pos] = s;
  p[free0] = option == 0 ? lo : hi;
  p[free1] = option == 0 ? hi : lo;
  return SymbolTriple(TernarySymbol(p[0]), TernarySymbol(p[1]), TernarySymbol(p[2]));
}

SymbolTriple split_bit(SecretBit bit, RandomSource& rng) {
  return bit_triple_option(bit, static_cast<int>(rng.uniform(bit_option_count(bit))));
}

SymbolTriple split_bit_constrained(SecretBit bit, ShareIndex fixed_share,
                                   TernarySymbol fixed_symbol, RandomSource& rng) {
  const int option = static_cast<int>(rng.uniform(constrained_option_count(bit)));
  return constrained_triple_option(bit, fixed_share, fixed_symbol, option);
}

SecretBit decode_pair(TernarySymbol a, TernarySymbol b) noexcept {
  return SecretBit(a == b ? 0 : 1);
}

SecretBit verify_triple(TernarySymbol p1, TernarySymbol p2, TernarySymbol p3) {
  return SymbolTriple(p1, p2, p3).bit();
}

std::array<SymbolSeq, 3> split_message(std::span<const SecretBit> bits,
                                       std::span<const PositionConstraint> constraints,
                                       RandomSource& rng) {
  std::vector<std::optional<std::pair<ShareIndex, TernarySymbol>>> pinned(bits.size());
  for (const PositionConstraint& c : constraints) {
    if (c.position >= bits.size()) {
      std::ostringstream msg;
      msg << "position " << c.position << " in a " << bits.size() << "-bit message";
      throw Error(ErrorCode::ConstraintOutOfRange, msg.str(), c.position);
    }
    if (pinned[c.position]) {
      std::ostringstream msg;
      msg << "two constraints on position " << c.position;
      throw Error(ErrorCode::ConstraintConflict, msg.str(), c.position);
    }
    pinned[c.position] = {c.share, c.symbol};
  }

  std::array<SymbolSeq, 3> shares;
  for (SymbolSeq& s : shares) s.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const SymbolTriple t = pinned[i]
        ? split_bit_constrained(bits[i], pinned[i]->first, pinned[i]->second, rng)
        : split_bit(bits[i], rng);
    shares[0].push_back(t.p1());
    shares[1].push_back(t.p2());
    shares[2].push_back(t.p3());
  }
  return shares;
}

BitSeq decode_message_pair(std::span<const TernarySymbol> seq_a, ShareIndex idx_a,
                           std::span<const TernarySymbol> seq_b, ShareIndex idx_b) {
  if (idx_a == idx_b) {
    std::ostringstream msg;
    msg << "both sequences claim share " << idx_a.value();
    throw Error(ErrorCode::DuplicateShareIndex, msg.str());
  }
  if (seq_a.size() != seq_b.size()) {
    std::ostringstream msg;
    msg << seq_a.size() << " symbols vs " << seq_b.size();
    throw Error(ErrorCode::LengthMismatch, msg.str());
  }
  BitSeq bits;
  bits.reserve(seq_a.size());
  for (std::size_t i = 0; i < seq_a.size(); ++i)
    bits.push_back(decode_pair(seq_a[i], seq_b[i]));
  return bits;
}

SymbolSeq symbols_from_string(std::string_view text) {
  SymbolSeq out;
  out.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '2')
      throw std::invalid_argument(std::string("invalid symbol character '") + c + "'");
    out.push_back(TernarySymbol(c - '0'));
  }
  return out;
}

BitSeq bits_from_string(std::string_view text) {
  BitSeq out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      out.push_back(SecretBit(c - '0'));
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f') {
      continue;
    } else {
      throw std::invalid_argument(std::string("invalid bit character '") + c + "'");
    }
  }
  return out;
}

std::string to_string(std::span<const TernarySymbol> symbols) {
  std::string out;
  out.reserve(symbols.size());
  for (TernarySymbol s : symbols) out.push_back(static_cast<char>('0' + s.value()));
  return out;
}

std::string to_string(std::span<const SecretBit> bits) {
  std::string out;
  out.reserve(bits.size());
  for (SecretBit b : bits) out.push_back(static_cast<char>('0' + b.value()));
  return out;
}

}  // namespace rvc
