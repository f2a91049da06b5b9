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


#include "geoqa/config.h"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>


namespace geoqa::config {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string resolve(std::string_view value, const std::string& baseDir) {
  fs::path p{std::string(value)};
  if (p.is_relative()) p = fs::path(baseDir) / p;
  return p.lexically_normal().string();
}

void requireFile(const std::string& path, std::string_view key) {
  if (!fs::is_regular_file(path)) {
    throw Error("config", std::string(key) + ": file not found: " + path);
  }
}

}  // namespace

std::string readFile(const std::string& path, std::string_view stage) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(std::string(stage), "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Config parseConfig(std::string_view text, const std::string& baseDir) {
  Config c;
  bool haveSchema = false, haveInstances = false, haveLexicon = false, haveSup = false;
  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++lineNo;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("config", "expected key = value", lineNo);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ParseError("config", "empty key or value", lineNo);

    if (key == "schema") {
      c.schemaPath = resolve(value, baseDir);
      haveSchema = true;
    } else if (key == "instances") {
      c.instancePaths.clear();
      std::string_view rest = value;
      while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        std::string_view item = trim(rest.substr(0, comma));
        if (item.empty()) throw ParseError("config", "empty entry in instances", lineNo);
        c.instancePaths.push_back(resolve(item, baseDir));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      haveInstances = true;
    } else if (key == "lexicon") {
      c.lexiconPath = resolve(value, baseDir);
      haveLexicon = true;
    } else if (key == "superlatives") {
      c.superlativeLexiconPath = resolve(value, baseDir);
      haveSup = true;
    } else if (key == "seed") {
      std::uint32_t seed = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ParseError("config", "seed must be a non-negative integer", lineNo);
      }
      c.seed = seed;
    } else if (key == "gold_conll") {
      c.goldConllPath = resolve(value, baseDir);
    } else if (key == "suite") {
      c.suitePath = resolve(value, baseDir);
    } else if (key == "qt2_frames") {
      c.framesPath = resolve(value, baseDir);
    } else if (key.substr(0, 7) == "prefix.") {
      std::string name(key.substr(7));
      if (name.empty()) throw ParseError("config", "empty prefix name", lineNo);
      c.prefixMap[name] = std::string(value);
    } else {
      throw ParseError("config", "unknown key '" + std::string(key) + "'", lineNo);
    }
  }
  if (!haveSchema) throw Error("config", "missing key: schema");
  if (!haveInstances) throw Error("config", "missing key: instances");
  if (!haveLexicon) throw Error("config", "missing key: lexicon");
  if (!haveSup) throw Error("config", "missing key: superlatives");
  requireFile(c.schemaPath, "schema");
  for (const std::string& p : c.instancePaths) requireFile(p, "instances");
  requireFile(c.lexiconPath, "lexicon");
  requireFile(c.superlativeLexiconPath, "superlatives");
  if (c.goldConllPath) requireFile(*c.goldConllPath, "gold_conll");
  return c;
}

Config loadConfig(const std::string& path) {
  const std::string text = readFile(path);
  fs::path dir = fs::path(path).parent_path();
  return parseConfig(text, dir.empty() ? std::string(".") : dir.string());
}

std::string configPath(const std::string& fallback) {
  if (const char* env = std::getenv("GEOQA_CONFIG"); env && *env) return env;
  return fallback;
}

std::unique_ptr<Resources> loadResources(const Config& c) {
  auto r = std::make_unique<Resources>();
  r->config = c;
  r->lexicon = std::make_unique<nlp::LemmaLexicon>(nlp::LemmaLexicon::parse(readFile(c.lexiconPath)));
  r->kb = std::make_unique<kb::KnowledgeBase>(kb::loadSchema(readFile(c.schemaPath)), c.prefixMap);
  for (const std::string& path : c.instancePaths) {
    r->kb->addInstances(kb::loadInstances(readFile(path), r->kb->schema()));
  }
  r->assertedTriples = r->kb->size();
  r->kb->rekeyLabels(nlp::labelKeyFunction(*r->lexicon));
  r->closure = r->kb->applyClosure();
  r->superlatives = std::make_unique<formulation::SuperlativeLexicon>(
      formulation::SuperlativeLexicon::parse(readFile(c.superlativeLexiconPath), r->kb->schema()));
  return r;
}

// FNV-1a over the space-joined forms.
std::uint64_t tokenHash(const std::vector<std::string>& forms) {
  std::uint64_t h = 14695981039346656037ull;
  auto feed = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (i) feed(' ');
    for (unsigned char c : forms[i]) feed(c);
  }
  return h;
}

std::uint64_t tokenHash(const std::vector<nlp::Token>& tokens) {
  std::vector<std::string> forms;
  forms.reserve(tokens.size());
  for (const nlp::Token& t : tokens) forms.push_back(t.surface);
  return tokenHash(forms);
}

GoldParses goldParsesFromConll(std::string_view conll) {
  GoldParses out;
  for (std::vector<nlp::DepRow>& sentence : nlp::readConllX(conll)) {
    std::vector<std::string> forms;
    for (const nlp::DepRow& row : sentence) forms.push_back(row.form);
    nlp::validateDepRows(sentence);
    out[tokenHash(forms)] = std::move(sentence);
  }
  return out;
}

std::function<std::optional<std::vector<nlp::DepRow>>(const std::vector<nlp::Token>&)> goldParseLookup(
    std::shared_ptr<const GoldParses> parses) {
  return [parses = std::move(parses)](const std::vector<nlp::Token>& tokens)
             -> std::optional<std::vector<nlp::DepRow>> {
    auto it = parses->find(tokenHash(tokens));
    if (it == parses->end()) return std::nullopt;
    return it->second;
  };
}

}  // namespace geoqa::config
