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

#include "geoqa/text.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace geoqa::text {
namespace {

struct CaseMapping {
  std::string_view upper;
  std::string_view lower;
};

// Turkish letters outside ASCII. Dotted/dotless i handled separately.
constexpr std::array<CaseMapping, 8> kTurkishLetters = {{
    {"Ç", "ç"}, {"Ğ", "ğ"}, {"Ö", "ö"}, {"Ş", "ş"},
    {"Ü", "ü"}, {"Â", "â"}, {"Î", "î"}, {"Û", "û"},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, 9>
    kAsciiFold = {{
        {"ı", "i"}, {"ç", "c"}, {"ğ", "g"}, {"ö", "o"}, {"ş", "s"},
        {"ü", "u"}, {"â", "a"}, {"î", "i"}, {"û", "u"},
    }};

std::size_t codePointLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

}  // namespace

std::vector<std::string> codePoints(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t len = std::min(codePointLength(s[i]), s.size() - i);
    out.emplace_back(s.substr(i, len));
    i += len;
  }
  return out;
}

std::size_t codePointCount(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); i += codePointLength(s[i])) ++n;
  return n;
}

std::string foldTurkish(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const std::string& cp : codePoints(s)) {
    if (cp == "I") {
      out += "ı";
    } else if (cp == "İ") {
      out += "i";
    } else if (cp.size() == 1) {
      out += static_cast<char>(
          std::tolower(static_cast<unsigned char>(cp[0])));
    } else {
      auto it = std::find_if(kTurkishLetters.begin(), kTurkishLetters.end(),
                             [&](const CaseMapping& m) { return m.upper == cp; });
      out += it != kTurkishLetters.end() ? std::string(it->lower) : cp;
    }
  }
  return out;
}

std::string capitalizeTurkish(std::string_view s) {
  if (s.empty()) return {};
  std::vector<std::string> cps = codePoints(s);
  std::string& first = cps.front();
  if (first == "i") {
    first = "İ";
  } else if (first == "ı") {
    first = "I";
  } else if (first.size() == 1) {
    first[0] = static_cast<char>(
        std::toupper(static_cast<unsigned char>(first[0])));
  } else {
    auto it = std::find_if(kTurkishLetters.begin(), kTurkishLetters.end(),
                           [&](const CaseMapping& m) { return m.lower == first; });
    if (it != kTurkishLetters.end()) first = std::string(it->upper);
  }
  return join(cps, "");
}

std::string searchFold(std::string_view s) {
  std::string folded = foldTurkish(s);
  std::string out;
  out.reserve(folded.size());
  for (const std::string& cp : codePoints(folded)) {
    auto it = std::find_if(kAsciiFold.begin(), kAsciiFold.end(),
                           [&](const auto& m) { return m.first == cp; });
    out += it != kAsciiFold.end() ? std::string(it->second) : cp;
  }
  return out;
}

bool isVowel(std::string_view cp) {
  static constexpr std::array<std::string_view, 16> kVowels = {
      "a", "e", "ı", "i", "o", "ö", "u", "ü",
      "A", "E", "I", "İ", "O", "Ö", "U", "Ü"};
  return std::find(kVowels.begin(), kVowels.end(), cp) != kVowels.end() ||
         cp == "â" || cp == "î" || cp == "û";
}

std::string lastVowel(std::string_view s) {
  std::vector<std::string> cps = codePoints(s);
  for (auto it = cps.rbegin(); it != cps.rend(); ++it) {
    if (isVowel(*it)) return *it;
  }
  return {};
}

bool endsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool startsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string trim(std::string_view s) {
  auto isSpace = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  };
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && isSpace(s[b])) ++b;
  while (e > b && isSpace(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> splitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace geoqa::text
