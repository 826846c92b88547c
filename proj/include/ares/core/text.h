/* Copyright 2026 The ARES Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ares::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

// Trims both ends and collapses every internal whitespace run to one space.
std::string collapse_whitespace(std::string_view s);

// First whitespace-delimited token, or empty.
std::string_view first_token(std::string_view s);

// Splits into sentences. A sentence ends at '.', '?' or '!' followed by
// whitespace or end of text; a trailing unterminated segment also counts.
// Returned sentences are trimmed and never empty.
std::vector<std::string> split_sentences(std::string_view s);

bool starts_with_icase(std::string_view s, std::string_view prefix);

// Replaces every occurrence of `from` in `s`.
std::string replace_all(std::string s, std::string_view from,
                        std::string_view to);

}  // namespace ares::text
