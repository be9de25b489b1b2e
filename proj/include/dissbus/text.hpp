// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_TEXT_HPP_
#define DISSBUS_TEXT_HPP_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dissbus::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

// Collapses whitespace runs to a single space and trims both ends.
std::string normalize_whitespace(std::string_view s);

// Lowercases and folds typographic apostrophes (U+2019, U+2018, `) to '.
std::string normalize_word(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

bool is_alpha_word(std::string_view s);
bool is_number(std::string_view s);
bool is_punct_token(std::string_view s);

std::string read_file(const std::filesystem::path& path);

// Plain-text list: one lowercase entry per line; blank lines and lines
// starting with '#' are skipped.
std::set<std::string> read_word_list(const std::filesystem::path& path);

// Parses a decimal number, throwing ValidationError on trailing garbage.
double parse_double(std::string_view s, std::string_view what);
long parse_long(std::string_view s, std::string_view what);

// Fixed four-decimal rendering with negative zero folded to zero.
std::string format_real(double v);

}  // namespace dissbus::text

#endif  // DISSBUS_TEXT_HPP_
