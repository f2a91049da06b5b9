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

#ifndef GEOQA_NLP_H_
#define GEOQA_NLP_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoqa/error.h"
#include "geoqa/kb.h"

// Tokenization, suffix-stripping morphology, gazetteer NER and a
// rule-based dependency parser for the question shapes the system handles.
namespace geoqa::nlp {

struct Token {
  std::string surface;
  int index = 0;  // 1-based

  friend bool operator==(const Token&, const Token&) = default;
};

enum class Pos { kNoun, kVerb, kAdj, kAdv, kPron, kPostp, kPunc, kNum, kConj, kDet };

std::string_view posName(Pos pos);
std::optional<Pos> parsePos(std::string_view name);

// One inflectional group after a ^DB boundary.
struct Derivation {
  Pos pos = Pos::kNoun;
  std::vector<std::string> features;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

struct MorphAnalysis {
  std::string lemma;  // display form; unknown words keep their surface
  Pos pos = Pos::kNoun;
  std::vector<std::string> features;
  std::vector<Derivation> derivations;

  friend bool operator==(const MorphAnalysis&, const MorphAnalysis&) = default;

  // Case-folded lemma used for every lookup.
  std::string lemmaKey() const;
  // "A3sg|P3sg|Loc^DB|Adj|Rel", or "_" when there are no features.
  std::string featureString() const;
  // "bölge+Noun+A3sg+P3sg+Gen" style listing.
  std::string tagString() const;
  // POS of the last inflectional group.
  Pos finalPos() const;
  // Features of the last inflectional group.
  const std::vector<std::string>& finalFeatures() const;
  bool hasFeature(std::string_view tag) const;  // any group
  bool isProper() const { return hasFeature("Prop"); }
};

enum class NerLabel { kBLocation, kILocation, kO };

std::string_view nerLabelName(NerLabel label);

enum class Relation {
  kSubject, kObject, kModifier, kPossessor, kArgument, kPredicate, kPunctuation, kClassifier
};

std::string_view relationName(Relation relation);
std::optional<Relation> parseRelation(std::string_view name);

struct DepRow {
  int id = 0;
  std::string form;
  std::string lemma;
  std::string cpostag;
  std::string postag;
  std::string feats;
  int head = 0;
  Relation relation = Relation::kModifier;

  friend bool operator==(const DepRow&, const DepRow&) = default;
};

struct EntitySpan {
  int start = 0;  // 1-based, inclusive
  int end = 0;
  std::vector<std::string> lemmas;
  std::optional<kb::Iri> resolved;     // set when exactly one candidate
  std::vector<kb::Iri> candidates;

  bool contains(int index) const { return index >= start && index <= end; }
};

struct AnnotatedSentence {
  std::vector<Token> tokens;
  std::vector<MorphAnalysis> analyses;
  std::vector<NerLabel> nerLabels;
  std::vector<DepRow> depRows;
  std::vector<EntitySpan> entitySpans;

  int size() const { return static_cast<int>(tokens.size()); }
  const MorphAnalysis& analysis(int index) const { return analyses.at(index - 1); }
  const DepRow& row(int index) const { return depRows.at(index - 1); }
  // Ids of rows whose head is `index`, ascending.
  std::vector<int> dependents(int index) const;
  const EntitySpan* spanAt(int index) const;
};

class NlpError : public Error {
 public:
  NlpError(std::string stage, const std::string& message) : Error(std::move(stage), message) {}
};

// Lemma -> POS list, from a `lemma<TAB>POS` file. Lemmas are folded.
class LemmaLexicon {
 public:
  static LemmaLexicon parse(std::string_view tsv);

  void add(std::string_view lemma, Pos pos);
  // POS values for the folded lemma, in file order.
  const std::vector<Pos>* find(std::string_view foldedLemma) const;
  bool contains(std::string_view foldedLemma) const { return find(foldedLemma) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  // Folded lemmas in sorted order.
  std::vector<std::string> lemmas() const;

 private:
  std::map<std::string, std::vector<Pos>, std::less<>> entries_;
};

std::vector<Token> tokenize(std::string_view question);

// Every accepted (stem, suffix sequence) reading of the token.
std::vector<MorphAnalysis> analyzeMorphology(const Token& token, const LemmaLexicon& lexicon);

// One reading per token: longest stem; then Noun > Adj > Verb > others;
// then, between possessive and non-possessive readings, the possessive one
// only when a genitive or bare proper noun precedes the noun phrase.
std::vector<MorphAnalysis> disambiguate(const std::vector<std::vector<MorphAnalysis>>& candidates);

struct NerResult {
  std::vector<NerLabel> labels;
  std::vector<EntitySpan> spans;
};

NerResult tagEntities(const std::vector<Token>& tokens, const std::vector<MorphAnalysis>& analyses,
                      const kb::KnowledgeBase& kb);

// Throws NlpError("dependency", "no predicate") when neither a question
// particle nor a verb is present.
std::vector<DepRow> parseDependencies(const std::vector<Token>& tokens,
                                      const std::vector<MorphAnalysis>& analyses,
                                      const std::vector<NerLabel>& labels);

// Checks one root, heads in range, no self-heads and no cycles.
void validateDepRows(const std::vector<DepRow>& rows);

// tokenize, analyze, disambiguate and tag; depRows stays empty.
AnnotatedSentence annotateLexical(std::string_view question, const LemmaLexicon& lexicon,
                                  const kb::KnowledgeBase& kb);

// annotateLexical followed by parseDependencies.
AnnotatedSentence annotate(std::string_view question, const LemmaLexicon& lexicon,
                           const kb::KnowledgeBase& kb);

// Gazetteer key function: the lemma keys of the label's tokens.
kb::LabelKeyFn labelKeyFunction(const LemmaLexicon& lexicon);

// Sentences of rows. Accepts the standard layout and the layout with the
// head index in DEPREL and the relation in PDEPREL, detected per sentence.
// Lines starting with '#' between sentences are ignored.
std::vector<std::vector<DepRow>> readConllX(std::string_view text);
// Standard layout, blank line after every sentence.
std::string writeConllX(const std::vector<std::vector<DepRow>>& sentences);

}  // namespace geoqa::nlp

#endif  // GEOQA_NLP_H_
