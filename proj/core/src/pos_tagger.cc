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

#include "nftsignal/pos_tagger.h"

#include <string>
#include <unordered_set>

#include "nftsignal/text_clean.h"

namespace nftsignal {
namespace {

using WordSet = std::unordered_set<std::string_view>;

const WordSet& ClosedClass() {
  static const WordSet words = {
      // determiners and quantifiers
      "the", "an", "this", "that", "these", "those", "some", "any", "every",
      "each", "no", "all", "both", "either", "neither", "much", "many", "more",
      "most", "few", "fewer", "less", "least", "several", "another", "other",
      "such", "what", "which", "whose", "whatever", "whichever",
      // pronouns
      "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves",
      "you", "your", "yours", "yourself", "yourselves", "he", "him", "his",
      "himself", "she", "her", "hers", "herself", "it", "its", "itself",
      "they", "them", "their", "theirs", "themselves", "who", "whom",
      "someone", "anyone", "everyone", "nobody", "somebody", "anybody",
      "everybody", "something", "anything", "everything", "nothing", "im",
      "ive", "youre", "dont", "cant", "wont", "didnt", "doesnt", "isnt",
      // prepositions and conjunctions
      "of", "in", "on", "at", "by", "for", "with", "about", "against",
      "between", "into", "through", "during", "before", "after", "above",
      "below", "to", "from", "up", "down", "out", "off", "over", "under",
      "again", "further", "then", "once", "as", "until", "while", "since",
      "than", "via", "per", "without", "within", "among", "across", "behind",
      "beyond", "upon", "onto", "toward", "towards", "around", "along",
      "and", "but", "or", "nor", "so", "yet", "if", "because", "although",
      "though", "unless", "whether", "whereas", "also", "plus",
      // auxiliaries and modals
      "is", "are", "was", "were", "be", "been", "being", "am", "do", "does",
      "did", "doing", "have", "has", "had", "having", "will", "would", "can",
      "could", "should", "may", "might", "must", "shall", "ll", "re", "ve",
      // adverbs
      "not", "very", "too", "just", "only", "now", "here", "there", "when",
      "where", "why", "how", "ever", "never", "always", "often", "soon",
      "still", "already", "even", "again", "almost", "maybe", "perhaps",
      "really", "quite", "rather", "well", "back", "away", "together",
      "else", "instead", "tomorrow", "tonight", "yesterday", "ago", "yes",
      "yeah", "ok", "okay", "lol", "lmao", "omg", "gm", "gn", "wow", "hey",
      "hi", "hello", "please", "thanks", "thank",
      // common adjectives
      "new", "old", "good", "great", "best", "better", "big", "small", "high",
      "low", "long", "short", "little", "own", "same", "different", "next",
      "last", "first", "second", "third", "few", "huge", "amazing", "awesome",
      "cool", "nice", "bad", "worst", "rare", "free", "early", "late", "real",
      "sure", "full", "open", "live", "top", "hot", "happy", "excited",
      "bullish", "bearish", "available", "possible", "able", "whole", "true",
      "false", "cheap", "expensive", "ready", "official", "exclusive",
      "one", "two", "three", "four", "five", "ten", "hundred", "thousand",
      "million", "billion"};
  return words;
}

const WordSet& VerbLexicon() {
  static const WordSet words = {
      "buy", "sell", "mint", "hold", "join", "like", "love", "get", "go",
      "make", "take", "see", "know", "think", "come", "want", "look", "use",
      "find", "give", "tell", "work", "call", "try", "ask", "need", "feel",
      "become", "leave", "put", "mean", "keep", "let", "begin", "seem",
      "help", "show", "hear", "play", "run", "move", "believe", "bring",
      "happen", "write", "sit", "stand", "lose", "pay", "meet", "include",
      "continue", "set", "learn", "change", "lead", "understand", "watch",
      "follow", "stop", "create", "speak", "read", "spend", "grow", "walk",
      "win", "offer", "remember", "consider", "appear", "wait", "serve",
      "die", "send", "expect", "build", "stay", "fall", "cut", "reach",
      "kill", "remain", "check", "miss", "start", "flip", "earn", "list",
      "delist", "launch", "drop", "burn", "stake", "claim", "trade", "raise",
      "cancel", "fail", "afford", "ape", "pump", "dump", "reveal", "announce",
      "breed", "sweep", "snipe", "vote", "share", "retweet", "tag", "enter",
      "celebrate", "congrat", "congratulate", "welcome", "sign", "connect",
      "collect", "receive", "transfer", "send", "swap", "bid", "sold",
      "bought", "held", "got", "went", "made", "took", "saw", "knew",
      "thought", "came", "gave", "told", "felt", "became", "left", "meant",
      "kept", "began", "brought", "wrote", "sat", "stood", "lost", "paid",
      "met", "led", "understood", "spent", "grew", "won", "sent", "built",
      "fell", "ran", "hit", "fix", "save", "hope", "guess", "wish", "deserve",
      "dream", "invest", "hodl", "rug", "scam", "ship", "unlock", "airdrop",
      "giveaway", "own", "suit"};
  return words;
}

// Words that are verbs by lexicon but default to NOUN without context.
const WordSet& NounPreferred() {
  static const WordSet words = {
      "mint", "drop", "list", "love", "trade", "sale", "floor", "hold",
      "airdrop", "giveaway", "work", "show", "play", "change", "offer",
      "bid", "swap", "vote", "share", "tag", "burn", "claim", "launch",
      "call", "set", "ship", "scam", "rug", "dream", "hope", "wish", "win",
      "check", "suit", "help", "start", "fix", "walk", "run", "stake"};
  return words;
}

const WordSet& NounLexicon() {
  static const WordSet words = {
      "floor", "price", "sale", "team", "project", "holder", "owner",
      "wallet", "market", "volume", "eth", "nft", "nfts", "token", "community",
      "collection", "thing", "king", "ring", "string", "spring", "wing",
      "ceiling", "morning", "evening", "wedding", "pudding", "sibling",
      "darling", "bed", "shed", "seed", "speed", "feed", "weed", "deed",
      "family", "supply", "rally", "ally", "belly", "table", "cable",
      "vegetable", "variable", "bible", "fish", "dish", "test", "rest",
      "nest", "chest", "quest", "interest", "contest", "harvest", "request",
      "forest", "guest", "protest", "objective", "initiative", "detective",
      "archive", "alternative", "executive", "incentive", "relative",
      "perspective", "collective", "size", "prize", "noise", "promise",
      "enterprise", "exercise", "franchise", "surprise", "merchandise",
      "expertise", "building", "meeting", "news", "series", "gas", "bus",
      "week", "month", "hour", "day", "today", "year", "time", "roadmap",
      "founder", "member", "chain", "avatar", "pfp", "derivative", "whale",
      "money", "transaction", "garden", "milk", "banana", "serum", "ape",
      "apes", "cat", "punk", "bird", "toad"};
  return words;
}

const WordSet& ContextNounTriggers() {
  static const WordSet words = {
      "the", "a", "an", "this", "that", "these", "those", "my", "your", "our",
      "their", "his", "her", "its", "every", "each", "some", "no", "any",
      "first", "next", "last", "new", "public", "free", "big"};
  return words;
}

const WordSet& ContextVerbTriggers() {
  static const WordSet words = {
      "to", "will", "would", "can", "could", "should", "may", "might", "must",
      "shall", "i", "we", "you", "they", "he", "she", "lets", "let", "pls",
      "please", "dont", "cant", "wont", "didnt", "never", "gonna", "wanna"};
  return words;
}

const WordSet& AdjectiveLyExceptions() {
  static const WordSet words = {"family", "supply", "rally", "ally", "belly",
                                "bully", "reply", "apply", "fly", "jelly",
                                "lily", "holly", "italy", "july"};
  return words;
}

bool EndsWith(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool IsNumeric(std::string_view w) {
  int digits = 0;
  for (char c : w) {
    if (c >= '0' && c <= '9') ++digits;
  }
  // "10k", "3eth" and similar count as numbers.
  return digits * 2 >= static_cast<int>(w.size());
}

bool IsAscii(std::string_view w) {
  for (char c : w) {
    if (static_cast<unsigned char>(c) >= 0x80) return false;
  }
  return true;
}

PosTag SuffixTag(std::string_view w) {
  const auto& nouns = NounLexicon();
  if (nouns.contains(w)) return PosTag::kNoun;
  if (w.size() > 4 && EndsWith(w, "ing")) return PosTag::kVerb;
  if (w.size() > 3 && EndsWith(w, "ed")) return PosTag::kVerb;
  if (w.size() > 5 && (EndsWith(w, "ize") || EndsWith(w, "ify"))) {
    return PosTag::kVerb;
  }
  if (w.size() > 3 && EndsWith(w, "ly")) {
    return AdjectiveLyExceptions().contains(w) ? PosTag::kNoun
                                               : PosTag::kOther;
  }
  for (std::string_view suffix :
       {"ous", "ful", "ive", "able", "ible", "less", "ish", "est"}) {
    if (w.size() > suffix.size() + 2 && EndsWith(w, suffix)) {
      return PosTag::kOther;
    }
  }
  // Plural nouns and third-person verbs share -s; follow the stem.
  if (w.size() > 3 && EndsWith(w, "s") && !EndsWith(w, "ss")) {
    const auto& verbs = VerbLexicon();
    std::string stem(w.substr(0, w.size() - 1));
    if (EndsWith(w, "ies")) stem = std::string(w.substr(0, w.size() - 3)) + "y";
    if (verbs.contains(stem) && !nouns.contains(stem)) return PosTag::kVerb;
    if (EndsWith(w, "es")) {
      const std::string es_stem(w.substr(0, w.size() - 2));
      if (verbs.contains(es_stem) && !nouns.contains(es_stem)) {
        return PosTag::kVerb;
      }
    }
  }
  return PosTag::kNoun;
}

}  // namespace

std::string_view ToString(PosTag tag) {
  switch (tag) {
    case PosTag::kNoun:
      return "NOUN";
    case PosTag::kVerb:
      return "VERB";
    case PosTag::kOther:
      return "OTHER";
  }
  return "OTHER";
}

PosTag LexiconPosTagger::TagWord(std::string_view word) const {
  const std::string w = AsciiLower(word);
  if (w.empty() || IsNumeric(w)) return PosTag::kOther;
  if (!IsAscii(w)) return PosTag::kNoun;
  if (ClosedClass().contains(w)) return PosTag::kOther;
  if (VerbLexicon().contains(w)) {
    return NounPreferred().contains(w) ? PosTag::kNoun : PosTag::kVerb;
  }
  return SuffixTag(w);
}

std::vector<PosTag> LexiconPosTagger::Tag(
    std::span<const std::string> tokens) const {
  std::vector<PosTag> tags;
  tags.reserve(tokens.size());
  std::string previous;
  for (const auto& token : tokens) {
    const std::string w = AsciiLower(token);
    PosTag tag = TagWord(w);
    const bool ambiguous =
        VerbLexicon().contains(w) &&
        (NounPreferred().contains(w) || NounLexicon().contains(w));
    if (ambiguous && !previous.empty()) {
      if (ContextNounTriggers().contains(previous)) {
        tag = PosTag::kNoun;
      } else if (ContextVerbTriggers().contains(previous)) {
        tag = PosTag::kVerb;
      }
    }
    tags.push_back(tag);
    previous = w;
  }
  return tags;
}

const PosTagger& DefaultPosTagger() {
  static const LexiconPosTagger tagger;
  return tagger;
}

}  // namespace nftsignal
