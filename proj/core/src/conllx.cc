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

#include <charconv>

#include "geoqa/nlp.h"
#include "geoqa/text.h"

namespace geoqa::nlp {
namespace {

std::optional<int> parseInt(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

struct RawRow {
  std::vector<std::string> cols;
  std::size_t line;
};

std::vector<DepRow> convert(const std::vector<RawRow>& raw) {
  // Head index in DEPREL (column 8) marks the alternate layout.
  bool shifted = true;
  for (const RawRow& r : raw) shifted = shifted && parseInt(r.cols[7]).has_value();
  std::vector<DepRow> rows;
  for (const RawRow& r : raw) {
    const auto& c = r.cols;
    DepRow row;
    auto id = parseInt(c[0]);
    if (!id) throw ParseError("conll", "non-numeric token id", r.line);
    row.id = *id;
    row.form = c[1];
    row.lemma = c[2];
    row.cpostag = c[3];
    row.postag = c[4];
    row.feats = c[5];
    const std::string& headText = shifted ? c[7] : c[6];
    const std::string& relText = shifted ? c[9] : c[7];
    auto head = parseInt(headText);
    if (!head) throw ParseError("conll", "non-numeric head index '" + headText + "'", r.line);
    row.head = *head;
    auto rel = parseRelation(relText);
    if (!rel) throw ParseError("conll", "unknown relation '" + relText + "'", r.line);
    row.relation = *rel;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<std::vector<DepRow>> readConllX(std::string_view text) {
  std::vector<std::vector<DepRow>> sentences;
  std::vector<RawRow> current;
  std::size_t lineNo = 0;
  auto flush = [&] {
    if (!current.empty()) sentences.push_back(convert(current));
    current.clear();
  };
  for (std::string line : text::split(text, '\n')) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) {
      flush();
      continue;
    }
    if (current.empty() && line.front() == '#') continue;  // comment before a sentence
    std::vector<std::string> cols = text::split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError("conll",
                       "expected 10 columns, found " + std::to_string(cols.size()) + " in row " +
                           std::to_string(lineNo),
                       lineNo);
    }
    current.push_back(RawRow{std::move(cols), lineNo});
  }
  flush();
  return sentences;
}

std::string writeConllX(const std::vector<std::vector<DepRow>>& sentences) {
  std::string out;
  for (const auto& sentence : sentences) {
    for (const DepRow& r : sentence) {
      out += std::to_string(r.id) + "\t" + r.form + "\t" + r.lemma + "\t" + r.cpostag + "\t" +
             r.postag + "\t" + r.feats + "\t" + std::to_string(r.head) + "\t" +
             std::string(relationName(r.relation)) + "\t_\t_\n";
    }
    out += "\n";
  }
  return out;
}

}  // namespace geoqa::nlp
