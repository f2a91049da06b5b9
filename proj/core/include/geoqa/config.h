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


#ifndef GEOQA_CONFIG_H_
#define GEOQA_CONFIG_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoqa/formulation.h"
#include "geoqa/kb.h"
#include "geoqa/nlp.h"

namespace geoqa::config {

// `key = value` lines, '#' comments. Relative paths are resolved against
// the directory of the config file.
//   schema, instances (comma separated), lexicon, superlatives,
//   seed, gold_conll, suite, qt2_frames, prefix.<name> = <namespace IRI>
struct Config {
  std::string schemaPath;
  std::vector<std::string> instancePaths;
  std::string lexiconPath;
  std::string superlativeLexiconPath;
  kb::PrefixMap prefixMap = kb::defaultPrefixMap();
  std::uint32_t seed = 7;
  std::optional<std::string> goldConllPath;
  std::optional<std::string> suitePath;
  std::optional<std::string> framesPath;
};

// Throws ParseError("config", ..., line) on syntax errors and
// Error("config", ...) for missing keys or files.
Config parseConfig(std::string_view text, const std::string& baseDir = ".");
Config loadConfig(const std::string& path);

// GEOQA_CONFIG when set, otherwise `fallback`.
std::string configPath(const std::string& fallback);

std::string readFile(const std::string& path, std::string_view stage = "config");

// Loaded KB (closed, gazetteer keyed by lemma) and lexicons. Not movable
// once built: the pipeline holds references into it.
struct Resources {
  Config config;
  std::unique_ptr<nlp::LemmaLexicon> lexicon;
  std::unique_ptr<kb::KnowledgeBase> kb;
  std::unique_ptr<formulation::SuperlativeLexicon> superlatives;
  kb::ClosureStats closure;
  std::size_t assertedTriples = 0;

  formulation::Pipeline pipeline() const { return {*kb, *lexicon, *superlatives}; }
};

std::unique_ptr<Resources> loadResources(const Config& config);

// Gold dependency parses keyed by a hash of the question's token forms.
using GoldParses = std::map<std::uint64_t, std::vector<nlp::DepRow>>;

std::uint64_t tokenHash(const std::vector<std::string>& forms);
std::uint64_t tokenHash(const std::vector<nlp::Token>& tokens);
GoldParses goldParsesFromConll(std::string_view conll);
std::function<std::optional<std::vector<nlp::DepRow>>(const std::vector<nlp::Token>&)> goldParseLookup(
    std::shared_ptr<const GoldParses> parses);

}  // namespace geoqa::config

#endif  // GEOQA_CONFIG_H_
