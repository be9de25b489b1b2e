// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/stemmer.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <utility>

#include "dissbus/text.hpp"

namespace dissbus {

namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_double(const std::string& w) {
  if (w.size() < 2) return false;
  const char c = w.back();
  if (c != w[w.size() - 2]) return false;
  return c == 'b' || c == 'd' || c == 'f' || c == 'g' || c == 'm' || c == 'n' || c == 'p' ||
         c == 'r' || c == 't';
}

bool valid_li_ending(char c) {
  return c == 'c' || c == 'd' || c == 'e' || c == 'g' || c == 'h' || c == 'k' || c == 'm' ||
         c == 'n' || c == 'r' || c == 't';
}

// Start of the region after the first non-vowel that follows a vowel.
std::size_t region_after(const std::string& w, std::size_t from) {
  for (std::size_t i = from + 1; i < w.size(); ++i) {
    if (!is_vowel(w[i]) && is_vowel(w[i - 1])) return i + 1;
  }
  return w.size();
}

class Porter2 {
 public:
  explicit Porter2(std::string word) : w_(std::move(word)) {}

  std::string run() {
    if (w_.size() <= 2) return w_;
    if (auto special = exception1()) return *special;

    if (w_.front() == '\'') w_.erase(0, 1);
    if (w_.empty()) return w_;
    mark_consonant_y();
    compute_regions();

    step0();
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5();
    return restore_y();
  }

 private:
  std::optional<std::string> exception1() const {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 15> kSpecial{{
        {"skis", "ski"},    {"skies", "sky"},  {"idly", "idl"},       {"gently", "gentl"}, {"ugly", "ugli"},
        {"early", "earli"}, {"only", "onli"},  {"singly", "singl"},   {"sky", "sky"},      {"news", "news"},
        {"howe", "howe"},   {"atlas", "atlas"}, {"cosmos", "cosmos"}, {"bias", "bias"},    {"andes", "andes"},
    }};
    for (const auto& [from, to] : kSpecial) {
      if (w_ == from) return std::string(to);
    }
    return std::nullopt;
  }

  void mark_consonant_y() {
    if (w_[0] == 'y') w_[0] = 'Y';
    for (std::size_t i = 1; i < w_.size(); ++i) {
      if (w_[i] == 'y' && is_vowel(w_[i - 1])) w_[i] = 'Y';
    }
  }

  std::string restore_y() {
    for (char& c : w_) {
      if (c == 'Y') c = 'y';
    }
    return w_;
  }

  void compute_regions() {
    static constexpr std::array<std::string_view, 9> kPrefixes{
        "arsen", "commun", "emerg", "gener", "inter", "later", "organ", "past", "univers"};
    r1_ = region_after(w_, 0);
    for (auto p : kPrefixes) {
      if (w_.rfind(p, 0) == 0) {
        r1_ = p.size();
        break;
      }
    }
    r2_ = r1_ >= w_.size() ? w_.size() : region_after(w_, r1_);
  }

  bool in_r1(std::size_t suffix_len) const { return w_.size() >= suffix_len && w_.size() - suffix_len >= r1_; }
  bool in_r2(std::size_t suffix_len) const { return w_.size() >= suffix_len && w_.size() - suffix_len >= r2_; }

  void replace_suffix(std::size_t len, std::string_view with) {
    w_.erase(w_.size() - len);
    w_.append(with);
  }

  bool has_vowel_before(std::size_t end) const {
    for (std::size_t i = 0; i < end; ++i) {
      if (is_vowel(w_[i])) return true;
    }
    return false;
  }

  // Short syllable ending at position `end` (exclusive).
  bool ends_in_short_syllable(std::size_t end) const {
    if (end >= 4 && w_.compare(end - 4, 4, "past") == 0) return true;
    if (end == 2) return is_vowel(w_[0]) && !is_vowel(w_[1]);
    if (end < 3) return false;
    const char a = w_[end - 3];
    const char b = w_[end - 2];
    const char c = w_[end - 1];
    return !is_vowel(a) && is_vowel(b) && !is_vowel(c) && c != 'w' && c != 'x' && c != 'Y';
  }

  bool is_short_word() const { return r1_ >= w_.size() && ends_in_short_syllable(w_.size()); }

  void step0() {
    for (std::string_view s : {"'s'", "'s", "'"}) {
      if (ends_with(w_, s)) {
        replace_suffix(s.size(), "");
        return;
      }
    }
  }

  void step1a() {
    if (ends_with(w_, "sses")) {
      replace_suffix(4, "ss");
    } else if (ends_with(w_, "ied") || ends_with(w_, "ies")) {
      replace_suffix(3, w_.size() > 4 ? "i" : "ie");
    } else if (ends_with(w_, "us") || ends_with(w_, "ss")) {
      // unchanged
    } else if (ends_with(w_, "s")) {
      // Delete if the part before the s holds a vowel not directly before it.
      if (w_.size() >= 2 && has_vowel_before(w_.size() - 2)) w_.pop_back();
    }
  }

  void step1b() {
    static constexpr std::array<std::string_view, 6> kSuffixes{"eedly", "ingly", "edly", "eed", "ing", "ed"};
    for (auto s : kSuffixes) {
      if (!ends_with(w_, s)) continue;
      const std::size_t stem_len = w_.size() - s.size();
      if (s == "eed" || s == "eedly") {
        const std::string_view head(w_.data(), stem_len);
        if (in_r1(s.size()) && head != "succ" && head != "proc" && head != "exc") replace_suffix(s.size(), "ee");
        return;
      }
      if (s == "ing") {
        const std::string_view head(w_.data(), stem_len);
        // dying -> die, lying -> lie
        if (stem_len == 2 && head[1] == 'y' && !is_vowel(head[0])) {
          replace_suffix(4, "ie");
          return;
        }
        if (head == "even" || head == "cann" || head == "inn" || head == "earr" || head == "herr" ||
            head == "out") {
          return;
        }
      }
      if (!has_vowel_before(stem_len)) return;
      replace_suffix(s.size(), "");
      if (ends_with(w_, "at") || ends_with(w_, "bl") || ends_with(w_, "iz")) {
        w_.push_back('e');
      } else if (is_double(w_)) {
        // "add", "egg" keep their double
        if (w_.size() == 3 && (w_[0] == 'a' || w_[0] == 'e' || w_[0] == 'o')) return;
        w_.pop_back();
      } else if (is_short_word()) {
        w_.push_back('e');
      }
      return;
    }
  }

  void step1c() {
    if (w_.size() > 2 && (w_.back() == 'y' || w_.back() == 'Y') && !is_vowel(w_[w_.size() - 2])) {
      w_.back() = 'i';
    }
  }

  void step2() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 25> kRules{{
        {"ization", "ize"}, {"ational", "ate"}, {"fulness", "ful"}, {"ousness", "ous"},
        {"iveness", "ive"}, {"tional", "tion"}, {"biliti", "ble"},  {"lessli", "less"},
        {"ogist", "og"},    {"entli", "ent"},   {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
        {"ousli", "ous"},   {"iviti", "ive"},   {"fulli", "ful"},   {"enci", "ence"},
        {"anci", "ance"},   {"abli", "able"},   {"izer", "ize"},    {"ator", "ate"},
        {"alli", "al"},     {"bli", "ble"},     {"ogi", "og"},      {"li", ""},
    }};
    for (const auto& [suffix, repl] : kRules) {
      if (!ends_with(w_, suffix)) continue;
      if (!in_r1(suffix.size())) return;
      if (suffix == "ogi") {
        if (w_.size() > 3 && w_[w_.size() - 4] == 'l') replace_suffix(3, repl);
      } else if (suffix == "li") {
        if (w_.size() > 2 && valid_li_ending(w_[w_.size() - 3])) replace_suffix(2, repl);
      } else {
        replace_suffix(suffix.size(), repl);
      }
      return;
    }
  }

  void step3() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 9> kRules{{
        {"ational", "ate"}, {"tional", "tion"}, {"alize", "al"}, {"icate", "ic"}, {"iciti", "ic"},
        {"ative", ""},      {"ical", "ic"},     {"ness", ""},    {"ful", ""},
    }};
    for (const auto& [suffix, repl] : kRules) {
      if (!ends_with(w_, suffix)) continue;
      if (!in_r1(suffix.size())) return;
      if (suffix == "ative" && !in_r2(suffix.size())) return;
      replace_suffix(suffix.size(), repl);
      return;
    }
  }

  void step4() {
    static constexpr std::array<std::string_view, 18> kSuffixes{
        "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism",
        "ate",   "iti",  "ous",  "ive",  "ize",  "ion",  "al",  "er",  "ic"};
    for (auto s : kSuffixes) {
      if (!ends_with(w_, s)) continue;
      if (!in_r2(s.size())) return;
      if (s == "ion") {
        const char before = w_.size() > 3 ? w_[w_.size() - 4] : '\0';
        if (before == 's' || before == 't') replace_suffix(3, "");
      } else {
        replace_suffix(s.size(), "");
      }
      return;
    }
  }

  void step5() {
    if (ends_with(w_, "e")) {
      if (in_r2(1) || (in_r1(1) && !ends_in_short_syllable(w_.size() - 1))) w_.pop_back();
    } else if (ends_with(w_, "l")) {
      if (in_r2(1) && w_.size() >= 2 && w_[w_.size() - 2] == 'l') w_.pop_back();
    }
  }

  std::string w_;
  std::size_t r1_ = 0;
  std::size_t r2_ = 0;
};

}  // namespace

std::string stem(std::string_view word) {
  std::string lower = text::normalize_word(word);
  for (char c : lower) {
    if (!std::islower(static_cast<unsigned char>(c)) && c != '\'') return lower;
  }
  return Porter2(std::move(lower)).run();
}

}  // namespace dissbus
