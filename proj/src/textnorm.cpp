// SPDX-License-Identifier: Apache-2.0
#include <cstdint>

#include "botlens/lexsent.hpp"

namespace botlens {
namespace {

bool ascii_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// ASCII replacement for a Latin-1 code point, or 0 to drop it.
char fold(std::uint32_t cp) {
  switch (cp) {
    case 0xE1: case 0xC1: return 'a';
    case 0xE9: case 0xC9: return 'e';
    case 0xED: case 0xCD: return 'i';
    case 0xF3: case 0xD3: return 'o';
    case 0xFA: case 0xDA: case 0xFC: case 0xDC: return 'u';
    case 0xF1: case 0xD1: return 'n';
    case 0xBF: return '?';
    case 0xA1: return '!';
    default: return 0;
  }
}

// Folds and lowercases one whitespace-free raw token. Malformed UTF-8 bytes
// are dropped like any other non-ASCII input.
std::string fold_token(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    auto c = static_cast<unsigned char>(raw[i]);
    if (c < 0x80) {
      out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
      ++i;
      continue;
    }
    std::size_t len = (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : (c & 0xF8) == 0xF0 ? 4 : 0;
    if (len == 0 || i + len > raw.size()) {
      ++i;
      continue;
    }
    bool valid = true;
    std::uint32_t cp = c & (0x7F >> len);
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(raw[i + k]);
      if ((cc & 0xC0) != 0x80) {
        valid = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!valid) {
      ++i;
      continue;
    }
    if (char f = fold(cp)) out.push_back(f);
    i += len;
  }
  return out;
}

}  // namespace

TokenList normalize_text(std::string_view text) {
  TokenList tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && ascii_space(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !ascii_space(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;
    // The http test runs after folding so that dropped bytes cannot expose a
    // URL prefix; for plain ASCII it is the same as testing the raw token.
    std::string token = fold_token(text.substr(start, i - start));
    if (token.empty() || token[0] < 'a' || token[0] > 'z') continue;
    if (token.starts_with("http")) continue;
    tokens.push_back(std::move(token));
  }
  return tokens;
}

}  // namespace botlens
