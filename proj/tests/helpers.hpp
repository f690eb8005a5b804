#pragma once

#include <optional>
#include <utility>

#include "rvc/errors.hpp"
#include "rvc/ternary.hpp"

namespace helpers {

// Runs fn expecting an rvc::Error; hands it back for code and position
// checks, or nullopt if nothing was thrown.
template <typename F>
std::optional<rvc::Error> capture_error(F&& fn) {
  try {
    std::forward<F>(fn)();
  } catch (const rvc::Error& e) {
    return e;
  }
  return std::nullopt;
}

inline rvc::SymbolSeq sym(const char* text) { return rvc::symbols_from_string(text); }
inline rvc::BitSeq bits(const char* text) { return rvc::bits_from_string(text); }

}  // namespace helpers
