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

#include <algorithm>

#include "geoqa/nlp.h"
#include "geoqa/text.h"

namespace geoqa::nlp {

std::string_view nerLabelName(NerLabel label) {
  switch (label) {
    case NerLabel::kBLocation: return "B-LOCATION";
    case NerLabel::kILocation: return "I-LOCATION";
    case NerLabel::kO: return "O";
  }
  return "O";
}

std::string_view relationName(Relation relation) {
  switch (relation) {
    case Relation::kSubject: return "SUBJECT";
    case Relation::kObject: return "OBJECT";
    case Relation::kModifier: return "MODIFIER";
    case Relation::kPossessor: return "POSSESSOR";
    case Relation::kArgument: return "ARGUMENT";
    case Relation::kPredicate: return "PREDICATE";
    case Relation::kPunctuation: return "PUNCTUATION";
    case Relation::kClassifier: return "CLASSIFIER";
  }
  return "MODIFIER";
}

std::optional<Relation> parseRelation(std::string_view name) {
  for (Relation r : {Relation::kSubject, Relation::kObject, Relation::kModifier, Relation::kPossessor,
                     Relation::kArgument, Relation::kPredicate, Relation::kPunctuation,
                     Relation::kClassifier}) {
    if (relationName(r) == name) return r;
  }
  return std::nullopt;
}

std::vector<int> AnnotatedSentence::dependents(int index) const {
  std::vector<int> out;
  for (const DepRow& r : depRows) {
    if (r.head == index) out.push_back(r.id);
  }
  return out;
}

const EntitySpan* AnnotatedSentence::spanAt(int index) const {
  for (const EntitySpan& s : entitySpans) {
    if (s.contains(index)) return &s;
  }
  return nullptr;
}

std::vector<Token> tokenize(std::string_view question) {
  std::vector<Token> out;
  auto push = [&](std::string s) { out.push_back(Token{std::move(s), static_cast<int>(out.size()) + 1}); };
  for (std::string word : text::splitWhitespace(question)) {
    std::vector<std::string> trailing;
    while (word.size() > 1 && std::string_view("?.,!").find(word.back()) != std::string_view::npos) {
      trailing.insert(trailing.begin(), std::string(1, word.back()));
      word.pop_back();
    }
    push(word);
    for (std::string& p : trailing) push(std::move(p));
  }
  return out;
}

namespace {

int posRank(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return 0;
    case Pos::kAdj: return 1;
    case Pos::kVerb: return 2;
    default: return 3;
  }
}

bool hasIn(const std::vector<std::string>& fs, std::string_view tag) {
  return std::find(fs.begin(), fs.end(), tag) != fs.end();
}

bool isBareProper(const MorphAnalysis& a) {
  return a.isProper() && a.derivations.empty() && hasIn(a.features, "Nom") && hasIn(a.features, "Pnon");
}

bool isGenitive(const MorphAnalysis& a) {
  return a.finalPos() == Pos::kNoun && a.derivations.empty() && hasIn(a.features, "Gen");
}

bool isModifierWord(const MorphAnalysis& a) {
  Pos p = a.finalPos();
  return (p == Pos::kAdj || p == Pos::kAdv || p == Pos::kDet) && a.derivations.empty();
}

// True when the noun phrase ending before `index` opens with a genitive or
// a bare proper noun.
bool possessorBefore(const std::vector<MorphAnalysis>& chosen, std::size_t index) {
  std::size_t i = index;
  while (i > 0) {
    const MorphAnalysis& prev = chosen[i - 1];
    if (isModifierWord(prev)) {
      --i;
      continue;
    }
    return isGenitive(prev) || isBareProper(prev);
  }
  return false;
}

}  // namespace

std::vector<MorphAnalysis> disambiguate(const std::vector<std::vector<MorphAnalysis>>& candidates) {
  std::vector<MorphAnalysis> chosen;
  chosen.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& options = candidates[i];
    if (options.empty()) throw NlpError("morphology", "token without analyses");
    const bool wantPossessive = possessorBefore(chosen, i);
    std::vector<std::size_t> order(options.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      const MorphAnalysis& a = options[x];
      const MorphAnalysis& b = options[y];
      std::size_t la = text::codePointCount(a.lemmaKey());
      std::size_t lb = text::codePointCount(b.lemmaKey());
      if (la != lb) return la > lb;
      if (posRank(a.pos) != posRank(b.pos)) return posRank(a.pos) < posRank(b.pos);
      bool pa = a.hasFeature("P3sg");
      bool pb = b.hasFeature("P3sg");
      if (pa != pb) return wantPossessive ? pa : pb;
      return false;
    });
    chosen.push_back(options[order.front()]);
  }
  return chosen;
}

NerResult tagEntities(const std::vector<Token>& tokens, const std::vector<MorphAnalysis>& analyses,
                      const kb::KnowledgeBase& kb) {
  if (tokens.size() != analyses.size()) throw NlpError("ner", "token/analysis count mismatch");
  NerResult result;
  result.labels.assign(tokens.size(), NerLabel::kO);
  std::vector<std::string> keys;
  for (const MorphAnalysis& a : analyses) keys.push_back(a.lemmaKey());
  std::size_t i = 0;
  while (i < keys.size()) {
    if (analyses[i].pos == Pos::kPunc) {
      ++i;
      continue;
    }
    // stop at punctuation so spans never cross it
    std::size_t limit = i;
    while (limit < keys.size() && analyses[limit].pos != Pos::kPunc) ++limit;
    kb::LabelLookup hit =
        kb.lookupIndividualByLabel(std::span<const std::string>(keys).subspan(i, limit - i));
    if (!hit.found()) {
      ++i;
      continue;
    }
    EntitySpan span;
    span.start = static_cast<int>(i) + 1;
    span.end = static_cast<int>(i + hit.matchedLength);
    for (std::size_t k = i; k < i + hit.matchedLength; ++k) {
      span.lemmas.push_back(keys[k]);
      result.labels[k] = k == i ? NerLabel::kBLocation : NerLabel::kILocation;
    }
    span.candidates = hit.candidates;
    if (hit.candidates.size() == 1) span.resolved = hit.candidates.front();
    result.spans.push_back(std::move(span));
    i += hit.matchedLength;
  }
  return result;
}

namespace {

bool isVerbLike(const MorphAnalysis& a) {
  return a.pos == Pos::kVerb || a.finalPos() == Pos::kVerb;
}

bool isFiniteVerb(const MorphAnalysis& a) { return a.finalPos() == Pos::kVerb; }

bool isParticiple(const MorphAnalysis& a) {
  return a.pos == Pos::kVerb && a.finalPos() == Pos::kAdj;
}

bool isLocRel(const MorphAnalysis& a) {
  return a.pos == Pos::kNoun && a.finalPos() == Pos::kAdj && hasIn(a.features, "Loc");
}

bool isPlainNoun(const MorphAnalysis& a) { return a.pos == Pos::kNoun && a.derivations.empty(); }

bool isInterrogativeWord(const MorphAnalysis& a) {
  return a.hasFeature("Ques") || a.lemmaKey() == "hangi" || a.lemmaKey() == "nerede" ||
         a.lemmaKey() == "kaç";
}

}  // namespace

std::vector<DepRow> parseDependencies(const std::vector<Token>& tokens,
                                      const std::vector<MorphAnalysis>& analyses,
                                      const std::vector<NerLabel>& labels) {
  const int n = static_cast<int>(tokens.size());
  if (analyses.size() != tokens.size() || labels.size() != tokens.size()) {
    throw NlpError("dependency", "annotation layers differ in length");
  }
  auto A = [&](int id) -> const MorphAnalysis& { return analyses[static_cast<std::size_t>(id - 1)]; };

  int pred = 0;
  for (int id = n; id >= 1 && pred == 0; --id) {
    if (A(id).pos == Pos::kPostp && A(id).lemmaKey() == "mi") pred = id;
  }
  for (int id = n; id >= 1 && pred == 0; --id) {
    if (isFiniteVerb(A(id))) pred = id;
  }
  if (pred == 0) throw NlpError("dependency", "no predicate");

  std::vector<DepRow> rows(static_cast<std::size_t>(n));
  std::vector<bool> done(static_cast<std::size_t>(n) + 1, false);
  auto set = [&](int id, int head, Relation rel) {
    rows[static_cast<std::size_t>(id - 1)].head = head;
    rows[static_cast<std::size_t>(id - 1)].relation = rel;
    done[static_cast<std::size_t>(id)] = true;
  };
  auto nextWhere = [&](int from, auto&& pred_) {
    for (int k = from + 1; k <= n; ++k) {
      if (pred_(A(k))) return k;
    }
    return 0;
  };

  for (int id = 1; id <= n; ++id) {
    const DepRow base{id,
                      tokens[static_cast<std::size_t>(id - 1)].surface,
                      A(id).lemma,
                      std::string(posName(A(id).pos)),
                      std::string(posName(A(id).pos)),
                      A(id).featureString(),
                      0,
                      Relation::kModifier};
    rows[static_cast<std::size_t>(id - 1)] = base;
  }

  set(pred, 0, Relation::kPredicate);
  for (int id = 1; id <= n; ++id) {
    if (!done[id] && A(id).pos == Pos::kPunc) set(id, pred, Relation::kPunctuation);
  }
  if (pred > 1 && !done[pred - 1] && isFiniteVerb(A(pred - 1)) && A(pred - 1).pos == Pos::kVerb) {
    set(pred - 1, pred, Relation::kArgument);
  }

  for (int id = 1; id <= n; ++id) {
    if (done[id]) continue;
    const MorphAnalysis& a = A(id);
    const std::vector<std::string>& ff = a.finalFeatures();

    if (isPlainNoun(a) && hasIn(ff, "Acc")) {
      int head = nextWhere(id, isVerbLike);
      set(id, head ? head : pred, Relation::kObject);
      continue;
    }
    if (isPlainNoun(a) && hasIn(ff, "Nom") && hasIn(ff, "P3sg") && id < n &&
        (id + 1 == pred || isInterrogativeWord(A(id + 1)))) {
      set(id, pred, Relation::kSubject);
      continue;
    }
    if (isGenitive(a)) {
      int head = nextWhere(id, [](const MorphAnalysis& m) { return m.pos == Pos::kNoun && m.hasFeature("P3sg"); });
      if (head) {
        set(id, head, Relation::kPossessor);
        continue;
      }
    }
    if (isBareProper(a) && id < n && A(id + 1).pos == Pos::kNoun && A(id + 1).hasFeature("P3sg")) {
      set(id, id + 1, Relation::kPossessor);
      continue;
    }
    if (a.pos == Pos::kAdj && a.derivations.empty()) {
      int head = nextWhere(id, [](const MorphAnalysis& m) { return m.finalPos() == Pos::kNoun || isVerbLike(m); });
      set(id, head ? head : pred, Relation::kModifier);
      continue;
    }
    if (isParticiple(a) || isLocRel(a)) {
      int head = nextWhere(id, isFiniteVerb);
      set(id, head ? head : pred, Relation::kModifier);
      continue;
    }
    if (isPlainNoun(a) && (hasIn(ff, "Dat") || hasIn(ff, "Loc") || hasIn(ff, "Abl"))) {
      int head = nextWhere(id, isVerbLike);
      set(id, head ? head : pred, Relation::kModifier);
      continue;
    }
    if (a.pos == Pos::kPron) {
      set(id, pred, Relation::kArgument);
      continue;
    }
    if (isPlainNoun(a) && hasIn(ff, "Nom") && id < pred) {
      set(id, pred, Relation::kSubject);
      continue;
    }
    int head = nextWhere(id, [](const MorphAnalysis& m) { return m.pos != Pos::kPunc; });
    set(id, head ? head : pred, Relation::kModifier);
  }
  validateDepRows(rows);
  return rows;
}

void validateDepRows(const std::vector<DepRow>& rows) {
  const int n = static_cast<int>(rows.size());
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const DepRow& r = rows[static_cast<std::size_t>(i)];
    if (r.id != i + 1) throw NlpError("dependency", "row ids must run 1..n");
    if (r.head < 0 || r.head > n) throw NlpError("dependency", "head out of range in row " + std::to_string(r.id));
    if (r.head == r.id) throw NlpError("dependency", "row " + std::to_string(r.id) + " heads itself");
    if (r.head != 0) continue;
    if (r.relation != Relation::kPredicate) {
      throw NlpError("dependency", "root row " + std::to_string(r.id) + " is not a PREDICATE");
    }
    ++roots;
  }
  if (roots != 1) throw NlpError("dependency", "expected exactly one PREDICATE root");
  for (int i = 0; i < n; ++i) {
    int cur = rows[static_cast<std::size_t>(i)].head;
    int steps = 0;
    while (cur != 0) {
      if (++steps > n) throw NlpError("dependency", "cycle through row " + std::to_string(i + 1));
      cur = rows[static_cast<std::size_t>(cur - 1)].head;
    }
  }
}

AnnotatedSentence annotateLexical(std::string_view question, const LemmaLexicon& lexicon,
                                  const kb::KnowledgeBase& kb) {
  AnnotatedSentence s;
  s.tokens = tokenize(question);
  if (s.tokens.empty()) throw NlpError("tokenize", "empty question");
  std::vector<std::vector<MorphAnalysis>> candidates;
  for (const Token& t : s.tokens) candidates.push_back(analyzeMorphology(t, lexicon));
  s.analyses = disambiguate(candidates);
  NerResult ner = tagEntities(s.tokens, s.analyses, kb);
  s.nerLabels = std::move(ner.labels);
  s.entitySpans = std::move(ner.spans);
  return s;
}

AnnotatedSentence annotate(std::string_view question, const LemmaLexicon& lexicon,
                           const kb::KnowledgeBase& kb) {
  AnnotatedSentence s = annotateLexical(question, lexicon, kb);
  s.depRows = parseDependencies(s.tokens, s.analyses, s.nerLabels);
  return s;
}

kb::LabelKeyFn labelKeyFunction(const LemmaLexicon& lexicon) {
  return [&lexicon](std::string_view label) {
    std::vector<std::vector<MorphAnalysis>> candidates;
    for (const Token& t : tokenize(label)) candidates.push_back(analyzeMorphology(t, lexicon));
    std::vector<std::string> key;
    for (const MorphAnalysis& a : disambiguate(candidates)) key.push_back(a.lemmaKey());
    return key;
  };
}

}  // namespace geoqa::nlp
