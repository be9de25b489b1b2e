// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_STEMMER_HPP_
#define DISSBUS_STEMMER_HPP_

#include <string>
#include <string_view>

namespace dissbus {

// English (Porter2 / Snowball) suffix stripper. Input is lowercased first;
// words with non-letters other than an apostrophe are only lowercased.
std::string stem(std::string_view word);

}  // namespace dissbus

#endif  // DISSBUS_STEMMER_HPP_
