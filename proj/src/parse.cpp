// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/parse.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <sstream>

#include "dissbus/stemmer.hpp"
#include "dissbus/text.hpp"

namespace dissbus {

namespace {

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& list, std::string_view w) {
  return std::find(list.begin(), list.end(), w) != list.end();
}

constexpr std::array<std::string_view, 22> kDeterminers{
    "the",  "a",     "an",   "this", "that", "these", "those", "every", "each", "some", "any",
    "my",   "your",  "our",  "their", "his", "her",   "its",   "no",    "all",  "both", "another"};

constexpr std::array<std::string_view, 6> kCoordinators{"and", "but", "or", "nor", "yet", "so"};

constexpr std::array<std::string_view, 34> kPrepositions{
    "for",    "in",      "on",     "at",    "by",    "from",   "with",   "of",    "to",
    "about",  "before",  "after",  "into",  "over",  "under",  "than",   "as",    "because",
    "when",   "while",   "although", "though", "if", "since",  "unless", "until", "through",
    "during", "without", "around", "near",  "across", "behind", "between"};

constexpr std::array<std::string_view, 21> kInterjections{
    "wow", "oh",  "ah",    "hey", "omg", "yay",  "yum",  "yummy", "hmm",   "ugh",  "whoa",
    "ok",  "okay", "oops", "yikes", "meh", "yes", "alas", "aww",   "bravo", "hooray"};

constexpr std::array<std::string_view, 30> kPronouns{
    "i",      "me",    "we",      "us",   "you",     "he",       "him",      "she",
    "it",     "they",  "them",    "myself", "ourselves", "yourself", "itself", "themselves",
    "this",   "that",  "mine",    "ours", "yours",   "theirs",   "someone",  "everyone",
    "everything", "something", "nothing", "anything", "one", "who"};

constexpr std::array<std::string_view, 44> kAuxiliaries{
    "be",     "am",     "is",     "are",    "was",    "were",   "been",    "being",  "'s",
    "'re",    "'m",     "have",   "has",    "had",    "having", "'ve",     "do",     "does",
    "did",    "will",   "would",  "shall",  "should", "can",    "could",   "may",    "might",
    "must",   "'ll",    "'d",     "don't",  "doesn't", "didn't", "won't",  "can't",  "isn't",
    "wasn't", "aren't", "weren't", "wouldn't", "couldn't", "shouldn't", "hasn't", "haven't"};

constexpr std::array<std::string_view, 6> kNegationAdverbs{"not", "never", "n't", "neither", "hardly", "barely"};

// Closed-class tag, if the word belongs to one of the function-word lists.
std::optional<Pos> closed_class(std::string_view w) {
  if (contains(kNegationAdverbs, w)) return Pos::RB;
  if (contains(kAuxiliaries, w)) return Pos::VB;
  if (contains(kCoordinators, w)) return Pos::CC;
  if (contains(kInterjections, w)) return Pos::UH;
  if (contains(kPrepositions, w)) return Pos::IN;
  // "this"/"that" are determiners before nouns; the pronoun list covers the
  // standalone reading for the segmenter.
  if (contains(kDeterminers, w)) return Pos::DT;
  if (contains(kPronouns, w)) return Pos::OTHER;
  return std::nullopt;
}

Token make_token(std::string surface, Pos pos, bool space_after) {
  Token t;
  t.stem = stem(surface);
  t.surface = std::move(surface);
  t.pos = pos;
  t.space_after = space_after;
  return t;
}

bool is_terminal_char(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || (static_cast<unsigned char>(c) & 0x80) != 0;
}

// Splits one whitespace-free chunk into leading punctuation, a core and
// trailing punctuation.
void split_chunk(std::string_view chunk, std::vector<std::string>& out) {
  std::size_t begin = 0;
  while (begin < chunk.size() && !is_word_char(chunk[begin])) {
    // A run of terminal marks stays together ("...", "?!").
    std::size_t end = begin + 1;
    if (is_terminal_char(chunk[begin])) {
      while (end < chunk.size() && is_terminal_char(chunk[end])) ++end;
    }
    out.emplace_back(chunk.substr(begin, end - begin));
    begin = end;
  }
  if (begin == chunk.size()) return;

  std::vector<std::string> trailing;
  std::size_t end = chunk.size();
  while (end > begin && !is_word_char(chunk[end - 1])) {
    std::size_t start = end - 1;
    if (is_terminal_char(chunk[start])) {
      while (start > begin && is_terminal_char(chunk[start - 1])) --start;
    }
    trailing.emplace_back(chunk.substr(start, end - start));
    end = start;
  }
  out.emplace_back(chunk.substr(begin, end - begin));
  out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

constexpr std::array<std::string_view, 14> kDegreeAdverbs{
    "very", "really", "so", "too", "pretty", "quite", "extremely", "super", "absolutely",
    "rather", "incredibly", "fairly", "truly", "most"};

bool is_degree_adverb(const Token& t) { return contains(kDegreeAdverbs, text::normalize_word(t.surface)); }

bool is_content_verb(const Token& t) {
  return t.pos == Pos::VB && !is_auxiliary(text::normalize_word(t.surface));
}

// Nearest index in direction `step` (+1 or -1) from `from` whose token
// satisfies `pred`.
template <typename Pred>
std::optional<std::size_t> nearest(const std::vector<Token>& tokens, std::size_t from, int step, Pred pred) {
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(from) + step;
  while (i >= 0 && i < static_cast<std::ptrdiff_t>(tokens.size())) {
    if (pred(tokens[static_cast<std::size_t>(i)])) return static_cast<std::size_t>(i);
    i += step;
  }
  return std::nullopt;
}

DependencyPair make_pair(const std::vector<Token>& tokens, std::size_t dep, std::size_t head, std::string rel) {
  return {tokens[dep], tokens[head], std::move(rel), dep, head};
}

std::string conllu_error(std::string_view source, std::size_t line, const std::string& msg) {
  return std::string(source) + ":" + std::to_string(line) + ": " + msg;
}

}  // namespace

bool is_pronoun(std::string_view lower_word) { return contains(kPronouns, lower_word); }

bool is_auxiliary(std::string_view lower_word) { return contains(kAuxiliaries, lower_word); }

Pos map_treebank_tag(std::string_view xpos, std::string_view upos) {
  const std::string x(xpos);
  if (!x.empty() && x != "_") {
    if (x.rfind("JJ", 0) == 0) return Pos::ADJ;
    if (x.rfind("RB", 0) == 0 || x == "WRB") return Pos::RB;
    if (x.rfind("NN", 0) == 0) return Pos::NN;
    if (x.rfind("VB", 0) == 0 || x == "MD") return Pos::VB;
    if (x == "IN" || x == "TO") return Pos::IN;
    if (x == "DT" || x == "PDT" || x == "WDT") return Pos::DT;
    if (x == "CC") return Pos::CC;
    if (x == "UH") return Pos::UH;
    if (x == "." || x == "," || x == ":" || x == "``" || x == "''" || x == "-LRB-" || x == "-RRB-" ||
        x == "HYPH" || x == "NFP" || x == "PUNCT") {
      return Pos::PUNCT;
    }
    if (auto internal = parse_pos(x)) return *internal;
  }
  const std::string u(upos);
  if (u == "NOUN" || u == "PROPN") return Pos::NN;
  if (u == "VERB" || u == "AUX") return Pos::VB;
  if (u == "ADJ") return Pos::ADJ;
  if (u == "ADV" || u == "PART") return Pos::RB;
  if (u == "ADP" || u == "SCONJ") return Pos::IN;
  if (u == "DET") return Pos::DT;
  if (u == "CCONJ") return Pos::CC;
  if (u == "INTJ") return Pos::UH;
  if (u == "PUNCT") return Pos::PUNCT;
  return Pos::OTHER;
}

ParsedCorpus load_parsed(const std::filesystem::path& path) {
  return parse_conllu(text::read_file(path), path.string());
}

ParsedCorpus parse_conllu(std::string_view data, std::string_view source) {
  ParsedCorpus out;
  std::istringstream in{std::string(data)};
  std::string line;
  std::size_t lineno = 0;

  std::string review_id;
  std::size_t sentence_line = 0;
  struct Row {
    Token token;
    long head = 0;
    std::string deprel;
    std::size_t line = 0;
  };
  std::vector<Row> rows;

  const auto flush = [&]() {
    if (rows.empty()) {
      review_id.clear();
      return;
    }
    if (review_id.empty()) {
      throw ValidationError(conllu_error(source, sentence_line, "sentence without '# review_id =' comment"));
    }
    TaggedSentence sentence;
    sentence.parsed = true;
    for (const Row& r : rows) sentence.tokens.push_back(r.token);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const long head = rows[i].head;
      if (head == 0) continue;
      if (head < 0 || static_cast<std::size_t>(head) > rows.size()) {
        throw ValidationError(conllu_error(source, rows[i].line, "HEAD out of range"));
      }
      const auto h = static_cast<std::size_t>(head - 1);
      sentence.pairs.push_back({sentence.tokens[i], sentence.tokens[h], rows[i].deprel, i, h});
    }
    out[review_id].push_back(std::move(sentence));
    rows.clear();
    review_id.clear();
    sentence_line = 0;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') {
      const auto body = text::trim(std::string_view(line).substr(1));
      if (body.rfind("review_id", 0) == 0) {
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
          throw ValidationError(conllu_error(source, lineno, "malformed review_id comment"));
        }
        review_id = std::string(text::trim(body.substr(eq + 1)));
        if (rows.empty() && sentence_line == 0) sentence_line = lineno;
      }
      continue;
    }
    const auto cols = text::split(line, '\t');
    if (cols.size() != 10) {
      throw ValidationError(conllu_error(source, lineno, "expected 10 tab-separated columns, got " +
                                                            std::to_string(cols.size())));
    }
    // Multiword ranges (3-4) and empty nodes (3.1) carry no tree position.
    if (cols[0].find_first_of("-.") != std::string::npos) continue;
    long id = 0;
    long head = 0;
    try {
      id = text::parse_long(cols[0], "ID");
      head = cols[6] == "_" ? 0 : text::parse_long(cols[6], "HEAD");
    } catch (const ValidationError& e) {
      throw ValidationError(conllu_error(source, lineno, e.what()));
    }
    if (id != static_cast<long>(rows.size()) + 1) {
      throw ValidationError(conllu_error(source, lineno, "token ids must be consecutive from 1"));
    }
    if (rows.empty() && sentence_line == 0) sentence_line = lineno;
    const bool space_after = cols[9].find("SpaceAfter=No") == std::string::npos;
    Row row;
    row.token = make_token(cols[1], map_treebank_tag(cols[4], cols[3]), space_after);
    row.head = head;
    row.deprel = cols[7] == "_" ? "" : cols[7];
    row.line = lineno;
    rows.push_back(std::move(row));
  }
  flush();
  return out;
}

Tagger::Tagger(std::unordered_map<std::string, Pos> lexicon) : lexicon_(std::move(lexicon)) {}

Tagger Tagger::load(const std::filesystem::path& path) {
  std::unordered_map<std::string, Pos> lexicon;
  std::istringstream in(text::read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 2) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected word<TAB>tag");
    }
    const std::string tag(text::trim(cols[1]));
    auto pos = parse_pos(tag);
    if (!pos) pos = map_treebank_tag(tag);
    lexicon[text::normalize_word(text::trim(cols[0]))] = *pos;
  }
  return Tagger(std::move(lexicon));
}

std::vector<Token> Tagger::tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::vector<std::string> parts;
    split_chunk(text.substr(i, j - i), parts);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      Token t;
      t.surface = std::move(parts[k]);
      t.space_after = k + 1 == parts.size();
      tokens.push_back(std::move(t));
    }
    i = j;
  }
  return tokens;
}

bool Tagger::known_verb(const std::string& base) const {
  const auto it = lexicon_.find(base);
  return it != lexicon_.end() && it->second == Pos::VB;
}

Pos Tagger::tag_word(std::string_view word) const {
  if (text::is_punct_token(word)) return Pos::PUNCT;
  if (text::is_number(word)) return Pos::OTHER;
  const std::string w = text::normalize_word(word);
  if (auto closed = closed_class(w)) return *closed;
  if (const auto it = lexicon_.find(w); it != lexicon_.end()) return it->second;

  const auto ends = [&](std::string_view s) { return w.size() > s.size() + 1 && w.ends_with(s); };
  if (ends("ly")) return Pos::RB;
  if (ends("ous") || ends("ful") || ends("ive") || ends("able")) return Pos::ADJ;
  if (ends("ing") || ends("ed")) {
    const std::string base = w.substr(0, w.size() - (w.ends_with("ing") ? 3 : 2));
    // planned -> plan, baked -> bake, tried -> try
    if (known_verb(base) || known_verb(base + "e")) return Pos::VB;
    if (base.size() >= 2 && base.back() == base[base.size() - 2] && known_verb(base.substr(0, base.size() - 1))) {
      return Pos::VB;
    }
    if (w.ends_with("ied") && known_verb(w.substr(0, w.size() - 3) + "y")) return Pos::VB;
  }
  if (ends("s")) {
    const std::string base = w.substr(0, w.size() - 1);
    if (known_verb(base)) return Pos::VB;
    if (w.ends_with("es") && known_verb(w.substr(0, w.size() - 2))) return Pos::VB;
  }
  return Pos::NN;
}

std::vector<Token> Tagger::tag_tokens(std::string_view text) const {
  if (text::trim(text).empty()) throw ParameterError("tag_tokens: text must be non-empty");
  std::vector<Token> tokens = tokenize(text);
  for (Token& t : tokens) {
    t.pos = tag_word(t.surface);
    t.stem = stem(t.surface);
  }
  // "so" directly before an adjective or adverb is an intensifier.
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (text::normalize_word(tokens[i].surface) == "so" &&
        (tokens[i + 1].pos == Pos::ADJ || tokens[i + 1].pos == Pos::RB)) {
      tokens[i].pos = Pos::RB;
    }
  }
  // "never tried poke before." ends on an adverb, not a preposition.
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string w = text::normalize_word(tokens[i].surface);
    if ((w == "before" || w == "after" || w == "since") &&
        (i + 1 == tokens.size() || tokens[i + 1].pos == Pos::PUNCT)) {
      tokens[i].pos = Pos::RB;
    }
  }
  return tokens;
}

TaggedSentence tag_sentence(const Tagger& tagger, std::string_view text) {
  TaggedSentence s;
  s.tokens = tagger.tag_tokens(text);
  return s;
}

std::vector<DependencyPair> derive_pairs(const std::vector<Token>& tokens) {
  std::vector<DependencyPair> pairs;
  const auto is_noun = [](const Token& t) { return t.pos == Pos::NN; };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.pos == Pos::RB) {
      // Degree modifier: "very good", "really well"; "back home" stays on the verb.
      if (i + 1 < tokens.size() && (tokens[i + 1].pos == Pos::ADJ ||
                                    (tokens[i + 1].pos == Pos::RB && is_degree_adverb(t)))) {
        pairs.push_back(make_pair(tokens, i, i + 1, "advmod"));
        continue;
      }
      auto target = nearest(tokens, i, +1, is_content_verb);
      if (!target) target = nearest(tokens, i, -1, is_content_verb);
      if (!target) target = nearest(tokens, i, +1, is_noun);
      if (!target) target = nearest(tokens, i, -1, is_noun);
      if (target) pairs.push_back(make_pair(tokens, i, *target, "advmod"));
    } else if (t.pos == Pos::ADJ) {
      auto target = nearest(tokens, i, +1, is_noun);
      if (!target) target = nearest(tokens, i, -1, is_noun);
      if (!target) target = nearest(tokens, i, +1, is_content_verb);
      if (!target) target = nearest(tokens, i, -1, is_content_verb);
      if (target) pairs.push_back(make_pair(tokens, i, *target, "amod"));
    }
  }

  const auto main_verb = std::find_if(tokens.begin(), tokens.end(), is_content_verb);
  if (main_verb != tokens.end()) {
    const auto v = static_cast<std::size_t>(main_verb - tokens.begin());
    if (auto subj = nearest(tokens, v, -1, is_noun)) pairs.push_back(make_pair(tokens, *subj, v, "nsubj"));
    if (auto obj = nearest(tokens, v, +1, is_noun)) pairs.push_back(make_pair(tokens, *obj, v, "dobj"));
  }
  return pairs;
}

}  // namespace dissbus
