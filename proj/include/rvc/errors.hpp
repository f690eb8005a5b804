#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rvc {

// Every failure the library can signal. The CLI maps these onto its
// exit-code contract (see tools/rvc_main.cpp).
enum class ErrorCode {
  // ternary core
  InconsistentTriple,   // exactly two of three symbols equal: corruption or forgery
  LengthMismatch,
  DuplicateShareIndex,
  ConstraintOutOfRange,
  ConstraintConflict,
  // chain scheduling
  BadLengthRatio,       // levels must triple in size
  EmptyChain,
  BadImageShape,
  LevelOutOfRange,
  // prefix bitstreams
  TruncatedStream,
  NonzeroPadding,
  TrailingData,
  // share containers
  BadMagic,
  UnsupportedVersion,
  BadShareIndex,
  BadPayloadKind,
  ChecksumMismatch,
  TruncatedPayload,
  InvariantViolation,
  LayoutMismatch,
  // images
  ShapeMismatch,
  InvalidStack,
  MalformedBlock,
  // PBM files
  BadHeader,
  DimensionOverflow,
  TruncatedRaster,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Error(ErrorCode code, const std::string& message, std::size_t position)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        position_(position),
        has_position_(true) {}

  ErrorCode code() const noexcept { return code_; }

  // Offending index, when the failure points at one (symbol position,
  // byte offset, ...). Meaningful only if has_position().
  bool has_position() const noexcept { return has_position_; }
  std::size_t position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::size_t position_ = 0;
  bool has_position_ = false;
};

}  // namespace rvc
