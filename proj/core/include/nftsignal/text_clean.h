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

// Tweet text normalization: link/mention/hashtag/emoji stripping and word
// tokenization.
#ifndef NFTSIGNAL_TEXT_CLEAN_H_
#define NFTSIGNAL_TEXT_CLEAN_H_

#include <string>
#include <string_view>
#include <vector>

namespace nftsignal {

// Removes URLs (http://, https://, www. up to the next whitespace),
// @-mentions, #-tags and emoji code points, then collapses whitespace. Case
// is preserved. Applied to a fixpoint, so the result is stable under
// reapplication.
std::string StripLinksTagsEmoji(std::string_view raw);

// StripLinksTagsEmoji followed by ASCII lowercasing. Idempotent.
std::string CleanText(std::string_view raw);

// Splits on every code point that is not an ASCII letter or digit or a
// non-ASCII letter-like code point; drops tokens shorter than 2 code points.
// Case is preserved.
std::vector<std::string> Tokenize(std::string_view text);

std::string AsciiLower(std::string_view s);

// True for code points removed as emoji (pictographs, dingbats, regional
// indicators, skin-tone modifiers, variation selectors, ZWJ, tag characters).
bool IsEmojiCodePoint(char32_t cp);

}  // namespace nftsignal

#endif  // NFTSIGNAL_TEXT_CLEAN_H_
