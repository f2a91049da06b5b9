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


#ifndef GEOQA_TESTS_SUPPORT_H_
#define GEOQA_TESTS_SUPPORT_H_

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "geoqa/config.h"
#include "geoqa/kb.h"
#include "geoqa/sparql.h"

namespace geoqa::testing {

std::string dataPath(const std::string& relative);
std::string readData(const std::string& relative);

// Bundled resources, loaded once per process.
const config::Resources& bundled();

// The three worked example questions.
// Questions of the bundled evaluation suite.
std::vector<std::string> suiteQuestions();

extern const char* const kSentence1;
extern const char* const kSentence2;
extern const char* const kSentence3;

// (lemma, relation, head) rows for the three sample sentences.
using DepTriple = std::tuple<std::string, std::string, int>;
std::vector<DepTriple> referenceTable(int sentence);

// Plain scan of the schema and instance files with closure applied by
// hand. Shares no code with the KB.
class TsvOracle {
 public:
  TsvOracle(const std::string& schemaText, const std::string& instanceText);

  // Individuals (local names) of class `cls` or a subclass.
  std::set<std::string> ofClass(const std::string& cls) const;
  // o with (s, p, o).
  std::set<std::string> objects(const std::string& s, const std::string& p) const;
  // s with (s, p, o).
  std::set<std::string> subjects(const std::string& p, const std::string& o) const;
  std::vector<std::string> values(const std::string& s, const std::string& p) const;

 private:
  std::map<std::string, std::set<std::string>> parents_;
  std::map<std::string, std::string> cls_;
  std::set<std::tuple<std::string, std::string, std::string>> edges_;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> values_;
};

// Reference SELECT evaluation by enumerating every assignment of the
// group's variables over the active domain.
std::vector<sparql::Solution> oracleEvaluate(const sparql::SelectQuery& q, const kb::KnowledgeBase& kb);

// Order-independent rendering of a solution bag.
std::vector<std::string> canonicalRows(const std::vector<sparql::Solution>& rows);

// Small schema with an inverse pair, a symmetric property and a subclass.
std::string randomSchemaText();
// At most `maxTriples` asserted triples over the random schema, not closed.
kb::KnowledgeBase randomKb(std::mt19937& rng, int maxTriples = 30);
sparql::SelectQuery randomQuery(std::mt19937& rng);

// Closure invariants; returns violations, empty when all hold.
std::vector<std::string> closureViolations(const kb::KnowledgeBase& kb);

// SPARQL tokens with PREFIX declarations removed.
std::vector<std::string> queryTokens(const std::string& text);

}  // namespace geoqa::testing

#endif  // GEOQA_TESTS_SUPPORT_H_
