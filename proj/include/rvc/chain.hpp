#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rvc/ternary.hpp"

namespace rvc {

// A chain of nested secrets M_1 .. M_L, smallest first. Each bit is split
// into three share pieces, so each level must be exactly three times the
// size of the one below it; the shares of level k are embedded verbatim
// inside the shares of level k+1, one block per share, until the top
// level's shares carry the whole stack.

struct LevelShape {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  bool operator==(const LevelShape&) const = default;
};

struct MessageChain {
  // levels[0] is the smallest secret, levels.back() the cover message.
  std::vector<BitSeq> levels;
  // Optional pixel shape per level (set when the bits came from an
  // image; flattening is row-major). Either empty or one entry per level.
  std::vector<std::optional<LevelShape>> shapes;
};

// Validated level sizes plus the placement arithmetic. Levels are
// numbered 1..L throughout.
class ChainLayout {
 public:
  ChainLayout() = default;

  // Throws EmptyChain, BadLengthRatio or BadImageShape. `shapes` must be
  // empty or match `lengths` in size; shape products must equal lengths.
  static ChainLayout from_lengths(std::vector<std::size_t> lengths,
                                  std::vector<std::optional<LevelShape>> shapes = {});

  std::size_t level_count() const noexcept { return lengths_.size(); }
  std::size_t top_length() const noexcept { return lengths_.empty() ? 0 : lengths_.back(); }
  std::size_t length(std::size_t level) const;                    // bits at a level
  const std::optional<LevelShape>& shape(std::size_t level) const;

  const std::vector<std::size_t>& lengths() const noexcept { return lengths_; }
  const std::vector<std::optional<LevelShape>>& shapes() const noexcept { return shapes_; }

  bool operator==(const ChainLayout&) const = default;

 private:
  std::vector<std::size_t> lengths_;
  std::vector<std::optional<LevelShape>> shapes_;
};

// Checks the tripling rule (and shape products) and returns the layout.
ChainLayout validate_chain(const MessageChain& chain);

// Start of the level-k share j inside top share j, in symbols:
//   (j-1) * n_k * (3^(L-k) - 1) / 2
// which is the closed form of "block j of block j of ...": each level's
// share j occupies block j (of three equal blocks) of the share above.
// The slice is [offset, offset + n_k).
std::size_t level_offset(const ChainLayout& layout, std::size_t level, ShareIndex j);

struct ShareSet {
  std::array<SymbolSeq, 3> shares;  // index 0 holds share 1
  ChainLayout layout;

  const SymbolSeq& share(ShareIndex j) const { return shares[j.value() - 1]; }
};

// Splits every level, pinning each share's embedded block to the share
// generated one level below, and returns the top-level shares. Draws are
// consumed levels ascending, positions ascending within a level. No
// single share ever receives two distinct shares of a lower level.
ShareSet encode_chain(const MessageChain& chain, RandomSource& rng);

// The level-k slice of one top share.
SymbolSeq extract_level_share(std::span<const TernarySymbol> top_share, ShareIndex j,
                              const ChainLayout& layout, std::size_t level);

// Extracts the level-k slices of two top shares and pair-decodes them.
BitSeq decode_level(std::span<const TernarySymbol> share_a, ShareIndex idx_a,
                    std::span<const TernarySymbol> share_b, ShareIndex idx_b,
                    const ChainLayout& layout, std::size_t level);

// Three-way audit: every column of every level must be a valid triple.
// Returns all messages M_1..M_L on success; throws InconsistentTriple
// carrying the first offending position otherwise.
std::vector<BitSeq> verify_shares(std::span<const TernarySymbol> s1,
                                  std::span<const TernarySymbol> s2,
                                  std::span<const TernarySymbol> s3,
                                  const ChainLayout& layout);

}  // namespace rvc
