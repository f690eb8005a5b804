#include "rvc/chain.hpp"

#include <algorithm>
#include <sstream>

namespace rvc {

ChainLayout ChainLayout::from_lengths(std::vector<std::size_t> lengths,
                                      std::vector<std::optional<LevelShape>> shapes) {
  if (lengths.empty())
    throw Error(ErrorCode::EmptyChain, "a chain needs at least one level");
  if (lengths.front() == 0)
    throw Error(ErrorCode::EmptyChain, "level 1 is empty");
  for (std::size_t k = 1; k < lengths.size(); ++k) {
    if (lengths[k] != 3 * lengths[k - 1]) {
      std::ostringstream msg;
      msg << "level " << k + 1 << " has " << lengths[k] << " bits, expected 3 x "
          << lengths[k - 1] << " = " << 3 * lengths[k - 1];
      throw Error(ErrorCode::BadLengthRatio, msg.str());
    }
  }
  if (!shapes.empty()) {
    if (shapes.size() != lengths.size())
      throw Error(ErrorCode::BadImageShape, "shape annotations must cover every level");
    for (std::size_t k = 0; k < shapes.size(); ++k) {
      if (!shapes[k]) continue;
      const std::size_t pixels =
          static_cast<std::size_t>(shapes[k]->width) * shapes[k]->height;
      if (pixels != lengths[k]) {
        std::ostringstream msg;
        msg << "level " << k + 1 << " shape " << shapes[k]->width << "x"
            << shapes[k]->height << " = " << pixels << " pixels, expected " << lengths[k];
        throw Error(ErrorCode::BadImageShape, msg.str());
      }
    }
  }
  ChainLayout layout;
  layout.lengths_ = std::move(lengths);
  layout.shapes_ = std::move(shapes);
  if (layout.shapes_.empty()) layout.shapes_.resize(layout.lengths_.size());
  return layout;
}

std::size_t ChainLayout::length(std::size_t level) const {
  if (level < 1 || level > lengths_.size()) {
    std::ostringstream msg;
    msg << "level " << level << " of " << lengths_.size();
    throw Error(ErrorCode::LevelOutOfRange, msg.str());
  }
  return lengths_[level - 1];
}

const std::optional<LevelShape>& ChainLayout::shape(std::size_t level) const {
  if (level < 1 || level > shapes_.size()) {
    std::ostringstream msg;
    msg << "level " << level << " of " << shapes_.size();
    throw Error(ErrorCode::LevelOutOfRange, msg.str());
  }
  return shapes_[level - 1];
}

ChainLayout validate_chain(const MessageChain& chain) {
  std::vector<std::size_t> lengths;
  lengths.reserve(chain.levels.size());
  for (const BitSeq& level : chain.levels) lengths.push_back(level.size());
  return ChainLayout::from_lengths(std::move(lengths), chain.shapes);
}

std::size_t level_offset(const ChainLayout& layout, std::size_t level, ShareIndex j) {
  const std::size_t L = layout.level_count();
  const std::size_t n_k = layout.length(level);  // validates the level
  std::size_t pow3 = 1;                          // 3^(L - level)
  for (std::size_t m = level; m < L; ++m) pow3 *= 3;
  return static_cast<std::size_t>(j.value() - 1) * n_k * (pow3 - 1) / 2;
}

ShareSet encode_chain(const MessageChain& chain, RandomSource& rng) {
  ChainLayout layout = validate_chain(chain);

  std::array<SymbolSeq, 3> current = split_message(chain.levels[0], {}, rng);
  std::vector<PositionConstraint> constraints;
  for (std::size_t k = 2; k <= layout.level_count(); ++k) {
    const std::size_t prev_len = layout.length(k - 1);
    // Block j of this level's message pins share j to the share built one
    // level below; the three blocks tile the message, so every position
    // has exactly one pinned share.
    constraints.clear();
    constraints.reserve(3 * prev_len);
    for (int j = 1; j <= 3; ++j) {
      const SymbolSeq& embedded = current[j - 1];
      for (std::size_t i = 0; i < prev_len; ++i)
        constraints.push_back({(j - 1) * prev_len + i, ShareIndex(j), embedded[i]});
    }
    std::array<SymbolSeq, 3> next = split_message(chain.levels[k - 1], constraints, rng);
    for (int j = 0; j < 3; ++j) {
      const auto block = next[j].begin() + static_cast<std::ptrdiff_t>(j * prev_len);
      if (!std::equal(current[j].begin(), current[j].end(), block))
        throw Error(ErrorCode::InvariantViolation,
                    "embedded block does not reproduce the lower-level share");
    }
    current = std::move(next);
  }
  return ShareSet{std::move(current), std::move(layout)};
}

SymbolSeq extract_level_share(std::span<const TernarySymbol> top_share, ShareIndex j,
                              const ChainLayout& layout, std::size_t level) {
  if (top_share.size() != layout.top_length()) {
    std::ostringstream msg;
    msg << "share has " << top_share.size() << " symbols, layout expects "
        << layout.top_length();
    throw Error(ErrorCode::LengthMismatch, msg.str());
  }
  const std::size_t offset = level_offset(layout, level, j);
  const std::size_t n_k = layout.length(level);
  return SymbolSeq(top_share.begin() + static_cast<std::ptrdiff_t>(offset),
                   top_share.begin() + static_cast<std::ptrdiff_t>(offset + n_k));
}

BitSeq decode_level(std::span<const TernarySymbol> share_a, ShareIndex idx_a,
                    std::span<const TernarySymbol> share_b, ShareIndex idx_b,
                    const ChainLayout& layout, std::size_t level) {
  const SymbolSeq slice_a = extract_level_share(share_a, idx_a, layout, level);
  const SymbolSeq slice_b = extract_level_share(share_b, idx_b, layout, level);
  return decode_message_pair(slice_a, idx_a, slice_b, idx_b);
}

std::vector<BitSeq> verify_shares(std::span<const TernarySymbol> s1,
                                  std::span<const TernarySymbol> s2,
                                  std::span<const TernarySymbol> s3,
                                  const ChainLayout& layout) {
  const std::size_t n = layout.top_length();
  if (s1.size() != n || s2.size() != n || s3.size() != n)
    throw Error(ErrorCode::LengthMismatch, "all three shares must match the layout");

  for (std::size_t i = 0; i < n; ++i) {
    try {
      verify_triple(s1[i], s2[i], s3[i]);
    } catch (const Error&) {
      std::ostringstream msg;
      msg << "position " << i << " of the top level";
      throw Error(ErrorCode::InconsistentTriple, msg.str(), i);
    }
  }

  std::vector<BitSeq> messages;
  messages.reserve(layout.level_count());
  for (std::size_t k = 1; k <= layout.level_count(); ++k) {
    const SymbolSeq a = extract_level_share(s1, ShareIndex(1), layout, k);
    const SymbolSeq b = extract_level_share(s2, ShareIndex(2), layout, k);
    const SymbolSeq c = extract_level_share(s3, ShareIndex(3), layout, k);
    // The embedded slices sit at different offsets per share, so their
    // columns are not covered by the top-level scan above.
    if (k < layout.level_count()) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        try {
          verify_triple(a[i], b[i], c[i]);
        } catch (const Error&) {
          std::ostringstream msg;
          msg << "position " << i << " of level " << k;
          throw Error(ErrorCode::InconsistentTriple, msg.str(), i);
        }
      }
    }
    messages.push_back(decode_message_pair(a, ShareIndex(1), b, ShareIndex(2)));
  }
  return messages;
}

}  // namespace rvc
