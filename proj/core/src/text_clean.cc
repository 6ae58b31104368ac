/*
 * Copyright 2026 The nftsignal Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "nftsignal/text_clean.h"

#include <cstdint>

namespace nftsignal {
namespace {

struct Decoded {
  char32_t cp;
  std::size_t length;  // bytes consumed; 0 for an invalid sequence byte
};

Decoded DecodeUtf8(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  int extra;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    return {0, 0};
  }
  if (i + extra >= s.size()) return {0, 0};
  for (int k = 1; k <= extra; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {0, 0};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, static_cast<std::size_t>(extra) + 1};
}

bool IsAsciiWordChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Non-ASCII code points treated as letters: everything outside the emoji,
// punctuation and symbol blocks.
bool IsNonAsciiLetter(char32_t cp) {
  if (cp < 0x80 || IsEmojiCodePoint(cp)) return false;
  if (cp >= 0x80 && cp <= 0xBF) return false;          // Latin-1 punctuation
  if (cp == 0xD7 || cp == 0xF7) return false;          // multiply, divide
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;      // punctuation, symbols
  if (cp >= 0x3000 && cp <= 0x303F) return false;      // CJK punctuation
  if (cp >= 0xFE00 && cp <= 0xFE6F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  return true;
}

std::string RemoveEmoji(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const Decoded d = DecodeUtf8(s, i);
    if (d.length == 0) {
      ++i;  // drop invalid byte
      continue;
    }
    if (IsEmojiCodePoint(d.cp)) {
      // Keep a word boundary where an emoji separated two words.
      out.push_back(' ');
    } else {
      out.append(s.substr(i, d.length));
    }
    i += d.length;
  }
  return out;
}

bool StartsWithNoCase(std::string_view s, std::size_t pos,
                      std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    char c = s[pos + k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[k]) return false;
  }
  return true;
}

std::string RemoveLinks(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (StartsWithNoCase(s, i, "http://") ||
        StartsWithNoCase(s, i, "https://") || StartsWithNoCase(s, i, "www.")) {
      while (i < s.size() && !IsSpace(s[i])) ++i;
      out.push_back(' ');
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

// Length in bytes of the handle/tag body starting at `pos`.
std::size_t HandleLength(std::string_view s, std::size_t pos) {
  std::size_t i = pos;
  while (i < s.size()) {
    if (IsAsciiWordChar(s[i])) {
      ++i;
      continue;
    }
    const Decoded d = DecodeUtf8(s, i);
    if (d.length > 0 && d.cp >= 0x80 && IsNonAsciiLetter(d.cp)) {
      i += d.length;
      continue;
    }
    break;
  }
  return i - pos;
}

std::string RemoveMentionsAndTags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '@' || s[i] == '#') {
      const std::size_t body = HandleLength(s, i + 1);
      if (body > 0) {
        i += 1 + body;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace

bool IsEmojiCodePoint(char32_t cp) {
  return (cp >= 0x1F000 && cp <= 0x1FAFF) ||  // pictographs, emoticons, flags
         (cp >= 0x2600 && cp <= 0x27BF) ||    // misc symbols, dingbats
         (cp >= 0x2300 && cp <= 0x23FF) ||    // misc technical
         (cp >= 0x2B00 && cp <= 0x2BFF) ||    // arrows, stars
         (cp >= 0xFE00 && cp <= 0xFE0F) ||    // variation selectors
         (cp >= 0xE0000 && cp <= 0xE007F) ||  // tag characters
         cp == 0x200D || cp == 0x20E3 || cp == 0x3030 || cp == 0x303D;
}

std::string StripLinksTagsEmoji(std::string_view raw) {
  std::string current(raw);
  for (;;) {
    std::string next = CollapseWhitespace(
        RemoveMentionsAndTags(RemoveLinks(RemoveEmoji(current))));
    if (next == current) return next;
    current = std::move(next);
  }
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string CleanText(std::string_view raw) {
  // Lowercasing cannot create a removable span (link matching is
  // case-insensitive), so one strip pass after lowercasing is stable.
  return AsciiLower(StripLinksTagsEmoji(raw));
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t code_points = 0;
  const auto flush = [&] {
    if (code_points >= 2) tokens.push_back(current);
    current.clear();
    code_points = 0;
  };
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (static_cast<unsigned char>(c) < 0x80) {
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
          (c >= '0' && c <= '9')) {
        current.push_back(c);
        ++code_points;
      } else {
        flush();
      }
      ++i;
      continue;
    }
    const Decoded d = DecodeUtf8(text, i);
    if (d.length == 0) {
      flush();
      ++i;
      continue;
    }
    if (IsNonAsciiLetter(d.cp)) {
      current.append(text.substr(i, d.length));
      ++code_points;
    } else {
      flush();
    }
    i += d.length;
  }
  flush();
  return tokens;
}

}  // namespace nftsignal
