// Copyright 2026 The GeoQA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GEOQA_TEXT_H_
#define GEOQA_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers with Turkish casing rules. Only the Latin-1 / Latin
// Extended-A letters used by Turkish are case-mapped; everything else is
// passed through unchanged.
namespace geoqa::text {

// Lowercases with Turkish rules: 'I' -> 'ı', 'İ' -> 'i', then the usual
// ASCII and Turkish letter mappings (Ç Ğ Ö Ş Ü).
std::string foldTurkish(std::string_view s);

// Uppercases the first code point with Turkish rules ('i' -> 'İ').
std::string capitalizeTurkish(std::string_view s);

// foldTurkish followed by stripping Turkish diacritics to ASCII
// (ı->i ç->c ğ->g ö->o ş->s ü->u, also â î û). Used for
// case-insensitive matching of labels against ASCII identifiers.
std::string searchFold(std::string_view s);

// Splits into UTF-8 code points (each element is one encoded code point).
std::vector<std::string> codePoints(std::string_view s);

std::size_t codePointCount(std::string_view s);

bool isVowel(std::string_view codePoint);

// Last vowel code point of `s`, or "" when there is none.
std::string lastVowel(std::string_view s);

bool endsWith(std::string_view s, std::string_view suffix);
bool startsWith(std::string_view s, std::string_view prefix);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> splitWhitespace(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace geoqa::text

#endif  // GEOQA_TEXT_H_
