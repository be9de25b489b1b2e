// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_PARSE_HPP_
#define DISSBUS_PARSE_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dissbus/types.hpp"

namespace dissbus {

struct DependencyPair {
  Token word1;  // dependent
  Token word2;  // head
  std::string relation;
  std::size_t dependent = 0;  // index of word1 in the owning sentence
  std::size_t head = 0;       // index of word2
};

struct TaggedSentence {
  std::vector<Token> tokens;
  std::vector<DependencyPair> pairs;
  // True when heads came from a parser; fallback sentences get their pairs
  // from derive_pairs once clause boundaries are known.
  bool parsed = false;
};

using ParsedCorpus = std::map<std::string, std::vector<TaggedSentence>>;

// Maps a Penn Treebank XPOS (or, failing that, a UD UPOS) onto the
// internal tagset.
Pos map_treebank_tag(std::string_view xpos, std::string_view upos = {});

// Reads CoNLL-U. Each sentence must carry `# review_id = <id>`; sentences
// of one review are kept in file order. Throws ValidationError with the
// offending line number on malformed input.
ParsedCorpus load_parsed(const std::filesystem::path& path);
ParsedCorpus parse_conllu(std::string_view data, std::string_view source = "<conllu>");

// Closed-class helpers shared by the tagger, segmenter and pair heuristic.
bool is_pronoun(std::string_view lower_word);
bool is_auxiliary(std::string_view lower_word);

// Rule-based fallback tagger used when no CoNLL-U parse exists for a review.
class Tagger {
 public:
  // Open-class lexicon: lowercase word -> tag.
  explicit Tagger(std::unordered_map<std::string, Pos> lexicon = {});

  // Lexicon TSV `word<TAB>tag`; tags use the internal names or Penn tags.
  static Tagger load(const std::filesystem::path& path);

  // Whitespace/punctuation tokenizer; decimals, contractions and
  // internal-period abbreviations (e.g) stay whole.
  static std::vector<Token> tokenize(std::string_view text);

  std::vector<Token> tag_tokens(std::string_view text) const;
  Pos tag_word(std::string_view word) const;

  std::size_t lexicon_size() const { return lexicon_.size(); }

 private:
  bool known_verb(const std::string& base) const;

  std::unordered_map<std::string, Pos> lexicon_;
};

// Heuristic head/dependent pairs for a tagged clause (no parser available).
std::vector<DependencyPair> derive_pairs(const std::vector<Token>& tokens);

// Wraps fallback tagger output as one unparsed sentence covering the text.
TaggedSentence tag_sentence(const Tagger& tagger, std::string_view text);

}  // namespace dissbus

#endif  // DISSBUS_PARSE_HPP_
