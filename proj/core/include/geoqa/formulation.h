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

#ifndef GEOQA_FORMULATION_H_
#define GEOQA_FORMULATION_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoqa/error.h"
#include "geoqa/kb.h"
#include "geoqa/nlp.h"
#include "geoqa/sparql.h"

// Question typing, the dependency-driven QT1 query builder, QT2 frame
// classification and the aggregate query templates.
namespace geoqa::formulation {

enum class QuestionType { kQT1, kQT2 };

std::string_view questionTypeName(QuestionType type);

enum class FunctionName { kCount, kMin, kMax, kSum };

std::string_view functionNameString(FunctionName fn);  // "count", ...
std::optional<FunctionName> parseFunctionName(std::string_view name);

struct QueryFrame {
  std::optional<kb::Iri> targetClass;
  std::optional<kb::Iri> entityClass;
  std::optional<kb::Iri> dataProperty;
  std::optional<kb::Iri> objectProperty;
  std::optional<FunctionName> functionName;
  std::optional<std::string> namedEntityFilter;

  friend bool operator==(const QueryFrame&, const QueryFrame&) = default;
};

class FormulationError : public Error {
 public:
  explicit FormulationError(const std::string& message) : Error("formulate", message) {}
};

// Superlative adjectives and the data property / direction they select.
// An entry without a property ("en çok", "en az") takes the property from
// the noun that follows it.
class SuperlativeLexicon {
 public:
  struct Entry {
    std::optional<kb::Iri> dataProperty;
    FunctionName polarity = FunctionName::kMax;  // kMin or kMax
  };

  // `adjLemma<TAB>dataProperty|*<TAB>min|max`; properties must exist in
  // the schema.
  static SuperlativeLexicon parse(std::string_view tsv, const kb::OntologySchema& schema);

  const Entry* find(std::string_view foldedLemma) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, Entry, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

bool isQuantitative(const nlp::AnnotatedSentence& sentence, const kb::KnowledgeBase& kb);

// Regex literal for an entity span: the first token's lemma, capitalized
// when its surface form is.
std::string entityFilterLiteral(const nlp::AnnotatedSentence& sentence, const nlp::EntitySpan& span);

// Interface for QT2 frame classifiers.
class FrameClassifier {
 public:
  virtual ~FrameClassifier() = default;
  virtual QueryFrame classify(const nlp::AnnotatedSentence& sentence,
                              const kb::KnowledgeBase& kb) const = 0;
  virtual std::string name() const = 0;
};

QueryFrame classifyQT2(const nlp::AnnotatedSentence& sentence, const SuperlativeLexicon& lex,
                       const kb::KnowledgeBase& kb);

class RuleFrameClassifier : public FrameClassifier {
 public:
  explicit RuleFrameClassifier(const SuperlativeLexicon& lex) : lex_(lex) {}
  QueryFrame classify(const nlp::AnnotatedSentence& sentence,
                      const kb::KnowledgeBase& kb) const override {
    return classifyQT2(sentence, lex_, kb);
  }
  std::string name() const override { return "rules"; }

 private:
  const SuperlativeLexicon& lex_;
};

struct Qt1Result {
  sparql::SelectQuery query;
  QueryFrame frame;                 // slots resolved along the way
  std::vector<std::string> trace;  // one line per algorithm step
};

Qt1Result generateSparqlQT1(const nlp::AnnotatedSentence& sentence, const kb::KnowledgeBase& kb);

// Two-class pattern linking entity and target through the object
// property, optionally projecting a data property of the target.
sparql::SelectQuery twoClassQuery(const kb::Iri& targetClass, const kb::Iri& entityClass,
                                  const kb::Iri& objectProperty,
                                  const std::optional<kb::Iri>& dataProperty,
                                  const std::string& filter, const kb::OntologySchema& schema);

// Data property of the entity itself.
sparql::SelectQuery singleClassQuery(const kb::Iri& entityClass, const kb::Iri& dataProperty,
                                     const std::string& filter);

// Type 1 (min/max, nested select) or Type 2 (count/sum) aggregate query.
sparql::SelectQuery instantiateTemplate(const QueryFrame& frame, const kb::OntologySchema& schema);

// True when instances of `targetClass` are the subjects of `property` in
// triples reaching `entityClass` (or the property is symmetric).
bool targetIsSubject(const kb::Iri& property, const kb::Iri& targetClass,
                     const kb::Iri& entityClass, const kb::OntologySchema& schema);

struct AnswerOptions {
  const FrameClassifier* classifier = nullptr;  // rule classifier when null
  bool evaluate = true;
  // Replaces the heuristic dependency parse when it returns rows.
  std::function<std::optional<std::vector<nlp::DepRow>>(const std::vector<nlp::Token>&)> goldParse;
};

struct Answer {
  std::string question;
  QuestionType type = QuestionType::kQT1;
  nlp::AnnotatedSentence sentence;
  QueryFrame frame;
  std::vector<std::string> trace;
  sparql::SelectQuery query;
  std::string queryText;
  sparql::SolutionSet solutions;
};

// Lexicons and the KB used by `answer`.
struct Pipeline {
  const kb::KnowledgeBase& kb;
  const nlp::LemmaLexicon& lexicon;
  const SuperlativeLexicon& superlatives;
};

// Tokenize, analyze, tag, parse, route, build the query, serialize and
// evaluate. Errors keep the stage of the step that failed.
Answer answer(std::string_view question, const Pipeline& pipeline, const AnswerOptions& options = {});

}  // namespace geoqa::formulation

#endif  // GEOQA_FORMULATION_H_
