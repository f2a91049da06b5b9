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


#ifndef GEOQA_EVAL_H_
#define GEOQA_EVAL_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoqa/formulation.h"
#include "geoqa/sparql.h"

// Suite-driven evaluation of the hybrid pipeline against the
// ontology-only baseline.
namespace geoqa::eval {

struct GoldRecord {
  std::string question;
  std::vector<std::string> gold;  // prefix:local IRIs or literal lexical forms
  std::optional<std::string> goldQuery;
  std::vector<std::string> tags;

  bool hasTag(std::string_view tag) const;
  bool unanswerable() const { return hasTag("unanswerable"); }
};

// One JSON object per line; blank lines and lines starting with '#' are
// skipped. Throws ParseError("suite", ..., line).
std::vector<GoldRecord> loadSuite(std::string_view jsonl);
std::vector<GoldRecord> loadSuiteFile(const std::string& path);

struct Metrics {
  double precision = 0;
  double recall = 0;
  double f = 0;
};

// Set precision/recall over canonical answer strings. Unanswerable
// questions score 1 when nothing is returned and 0 otherwise.
Metrics score(const std::vector<std::string>& returned, const std::vector<std::string>& gold,
              bool unanswerable);

// Numbers are compared by value: "79000", "79000.0" and "7.9e4" agree.
std::string canonicalAnswer(std::string_view text);

// Values of the first projected variable, canonical, sorted, unique.
std::vector<std::string> answerSet(const sparql::SolutionSet& solutions);

struct QuestionResult {
  std::string question;
  std::vector<std::string> tags;
  std::vector<std::string> returned;
  std::vector<std::string> gold;
  Metrics metrics;
  std::string queryText;           // empty when formulation failed
  std::optional<std::string> error;  // "stage: message"
  std::vector<std::string> notes;  // e.g. ambiguity flags
};

struct EvalReport {
  std::string method;  // row label
  std::vector<QuestionResult> perQuestion;
  Metrics aggregate;  // macro average
};

struct RunOptions {
  const formulation::FrameClassifier* classifier = nullptr;
  std::function<std::optional<std::vector<nlp::DepRow>>(const std::vector<nlp::Token>&)> goldParse;
  unsigned threads = 0;  // 0: hardware concurrency
};

EvalReport runMethod1(const std::vector<GoldRecord>& suite, const formulation::Pipeline& pipeline,
                      const RunOptions& options = {});
EvalReport runMethod2(const std::vector<GoldRecord>& suite, const formulation::Pipeline& pipeline,
                      const RunOptions& options = {});

// Ontology-only formulation: every lemma is looked up on its own, no NER
// and no dependency parse.
struct BaselineResult {
  sparql::SelectQuery query;
  formulation::QueryFrame frame;
  std::vector<std::string> notes;
};

BaselineResult baselineQuery(std::string_view question, const formulation::Pipeline& pipeline);

Metrics macroAverage(const std::vector<QuestionResult>& rows);

// Table with one row per report; throws Error("eval") when the reports
// cover different questions.
std::string comparisonTable(const std::vector<const EvalReport*>& reports);
// Table plus the questions on which the two methods returned different sets.
std::string compareMethods(const EvalReport& r1, const EvalReport& r2);
std::vector<std::string> disagreements(const EvalReport& r1, const EvalReport& r2);

std::string reportJson(const std::vector<const EvalReport*>& reports);

}  // namespace geoqa::eval

#endif  // GEOQA_EVAL_H_
