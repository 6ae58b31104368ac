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

// Part-of-speech tagging interface and the built-in lexicon tagger.
#ifndef NFTSIGNAL_POS_TAGGER_H_
#define NFTSIGNAL_POS_TAGGER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nftsignal {

enum class PosTag { kNoun, kVerb, kOther };

std::string_view ToString(PosTag tag);

// Adapter point for taggers. Implementations return one tag per token and
// must be safe to call concurrently.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::vector<PosTag> Tag(
      std::span<const std::string> tokens) const = 0;
};

// Deterministic English tagger built from closed-class and open-class
// lexicons, a few context rules and suffix heuristics:
//
//  1. numbers and closed-class words (determiners, pronouns, prepositions,
//     conjunctions, auxiliaries, common adverbs and adjectives) -> OTHER
//  2. words in both the verb and noun lexicons follow their left context:
//     after a determiner or possessive -> NOUN, after "to", a modal or a
//     subject pronoun -> VERB, otherwise the lexicon's preferred tag
//  3. lexicon hits -> their tag (irregular verb forms included)
//  4. suffixes: -ing/-ed/-ize/-ify -> VERB, -ly/-ous/-ful/-ive/-able/-ible/
//     -less/-ish/-est -> OTHER, each with an exception list; plural -s takes
//     the tag of its verb-lexicon stem
//  5. anything else -> NOUN
//
// Matching is case-insensitive.
class LexiconPosTagger : public PosTagger {
 public:
  std::vector<PosTag> Tag(std::span<const std::string> tokens) const override;

  // Context-free tag of a single word.
  PosTag TagWord(std::string_view word) const;
};

// Shared instance of the built-in tagger.
const PosTagger& DefaultPosTagger();

}  // namespace nftsignal

#endif  // NFTSIGNAL_POS_TAGGER_H_
