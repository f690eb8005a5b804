#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rvc/errors.hpp"
#include "rvc/random.hpp"

namespace rvc {

// The 2-of-3 scheme runs on a three-letter alphabet. Each secret bit is
// split into one piece per share: the bit is 0 when all three pieces
// agree and 1 when they are pairwise distinct, so any two pieces settle
// the comparison while a single piece says nothing.

class TernarySymbol {
 public:
  constexpr TernarySymbol() = default;
  explicit constexpr TernarySymbol(int v) : v_(static_cast<std::uint8_t>(v)) {
    if (v < 0 || v > 2) throw std::out_of_range("ternary symbol must be 0, 1 or 2");
  }
  constexpr int value() const noexcept { return v_; }
  constexpr bool operator==(const TernarySymbol&) const = default;

 private:
  std::uint8_t v_ = 0;
};

class SecretBit {
 public:
  constexpr SecretBit() = default;
  explicit constexpr SecretBit(int v) : v_(static_cast<std::uint8_t>(v)) {
    if (v < 0 || v > 1) throw std::out_of_range("secret bit must be 0 or 1");
  }
  constexpr int value() const noexcept { return v_; }
  constexpr bool operator==(const SecretBit&) const = default;

 private:
  std::uint8_t v_ = 0;
};

// Player / share number, 1 to 3.
class ShareIndex {
 public:
  constexpr ShareIndex() = default;
  explicit constexpr ShareIndex(int v) : v_(static_cast<std::uint8_t>(v)) {
    if (v < 1 || v > 3) throw std::out_of_range("share index must be 1, 2 or 3");
  }
  constexpr int value() const noexcept { return v_; }
  constexpr bool operator==(const ShareIndex&) const = default;

 private:
  std::uint8_t v_ = 1;
};

using SymbolSeq = std::vector<TernarySymbol>;
using BitSeq = std::vector<SecretBit>;

// One column across the three shares. Only two states exist: all pieces
// equal (bit 0) or all pieces distinct (bit 1). A column with exactly two
// equal pieces is not a triple at all; constructing one throws
// InconsistentTriple, which is how tampering surfaces.
class SymbolTriple {
 public:
  SymbolTriple(TernarySymbol p1, TernarySymbol p2, TernarySymbol p3);

  TernarySymbol piece(ShareIndex i) const noexcept { return p_[i.value() - 1]; }
  TernarySymbol p1() const noexcept { return p_[0]; }
  TernarySymbol p2() const noexcept { return p_[1]; }
  TernarySymbol p3() const noexcept { return p_[2]; }

  bool all_equal() const noexcept { return p_[0] == p_[1] && p_[1] == p_[2]; }
  SecretBit bit() const noexcept { return SecretBit(all_equal() ? 0 : 1); }

  bool operator==(const SymbolTriple&) const = default;

 private:
  TernarySymbol p_[3];
};

// Candidate triples in canonical order. Bit 0 has three options
// (000, 111, 222); bit 1 has the six permutations of 012 listed
// lexicographically: 012, 021, 102, 120, 201, 210. Splitting picks one
// option uniformly; uniformity is what keeps a single share silent
// about the secret.
int bit_option_count(SecretBit bit) noexcept;
SymbolTriple bit_triple_option(SecretBit bit, int option);

// Candidates when one piece is pinned to a given value (used when a
// lower-level share is being embedded). Bit 0 leaves exactly one choice,
// all pieces equal to the pinned symbol. Bit 1 leaves two: the remaining
// symbols fill the free positions in ascending order (option 0) or
// descending order (option 1).
int constrained_option_count(SecretBit bit) noexcept;
SymbolTriple constrained_triple_option(SecretBit bit, ShareIndex fixed_share,
                                       TernarySymbol fixed_symbol, int option);

// One uniform draw per call: m = 3 or 6 unconstrained, 1 or 2 constrained.
SymbolTriple split_bit(SecretBit bit, RandomSource& rng);
SymbolTriple split_bit_constrained(SecretBit bit, ShareIndex fixed_share,
                                   TernarySymbol fixed_symbol, RandomSource& rng);

// Two pieces from distinct shares recover the bit: equal means 0,
// different means 1. A pair carries no redundancy, so corruption is
// invisible here; verify_triple is the checked path.
SecretBit decode_pair(TernarySymbol a, TernarySymbol b) noexcept;

// All three pieces, independently received. Throws InconsistentTriple
// when exactly two agree.
SecretBit verify_triple(TernarySymbol p1, TernarySymbol p2, TernarySymbol p3);

// Pins the piece of one share at one position to a fixed symbol.
// Positions are 0-based.
struct PositionConstraint {
  std::size_t position;
  ShareIndex share;
  TernarySymbol symbol;
};

// Splits a whole message, one triple per bit, positions in ascending
// order (this fixes the rng draw sequence). At most one constraint per
// position; a position outside the message is ConstraintOutOfRange, two
// constraints on one position are ConstraintConflict. Empty messages
// yield three empty shares.
std::array<SymbolSeq, 3> split_message(std::span<const SecretBit> bits,
                                       std::span<const PositionConstraint> constraints,
                                       RandomSource& rng);

// Pairwise decode of two full shares. Throws DuplicateShareIndex or
// LengthMismatch.
BitSeq decode_message_pair(std::span<const TernarySymbol> seq_a, ShareIndex idx_a,
                           std::span<const TernarySymbol> seq_b, ShareIndex idx_b);

// Text helpers: '0'..'2' for symbols, '0'/'1' for bits. bits_from_string
// skips whitespace; both throw std::invalid_argument on anything else.
SymbolSeq symbols_from_string(std::string_view text);
BitSeq bits_from_string(std::string_view text);
std::string to_string(std::span<const TernarySymbol> symbols);
std::string to_string(std::span<const SecretBit> bits);

}  // namespace rvc
