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
#include <set>

#include "geoqa/formulation.h"
#include "geoqa/text.h"

namespace geoqa::formulation {

using kb::AxiomKind;
using kb::Iri;
using nlp::AnnotatedSentence;
using nlp::Pos;
using nlp::Relation;
using sparql::SelectQuery;
using sparql::TriplePattern;
using sparql::Var;

std::string_view questionTypeName(QuestionType type) {
  return type == QuestionType::kQT1 ? "QT1" : "QT2";
}

std::string_view functionNameString(FunctionName fn) {
  switch (fn) {
    case FunctionName::kCount: return "count";
    case FunctionName::kMin: return "min";
    case FunctionName::kMax: return "max";
    case FunctionName::kSum: return "sum";
  }
  return "count";
}

std::optional<FunctionName> parseFunctionName(std::string_view name) {
  for (FunctionName fn : {FunctionName::kCount, FunctionName::kMin, FunctionName::kMax, FunctionName::kSum}) {
    if (functionNameString(fn) == name) return fn;
  }
  return std::nullopt;
}

SuperlativeLexicon SuperlativeLexicon::parse(std::string_view tsv, const kb::OntologySchema& schema) {
  SuperlativeLexicon lex;
  std::size_t lineNo = 0;
  for (const std::string& raw : text::split(tsv, '\n')) {
    ++lineNo;
    std::string line = text::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = text::split(line, '\t');
    if (cols.size() != 3) throw ParseError("superlatives", "expected 3 columns", lineNo);
    Entry e;
    std::string prop = text::trim(cols[1]);
    if (prop != "*") {
      Iri iri = kb::instanceIri(prop);
      if (!schema.dataProperty(iri)) {
        throw ParseError("superlatives", "unknown data property '" + prop + "'", lineNo);
      }
      e.dataProperty = iri;
    }
    std::string polarity = text::trim(cols[2]);
    if (polarity == "max") {
      e.polarity = FunctionName::kMax;
    } else if (polarity == "min") {
      e.polarity = FunctionName::kMin;
    } else {
      throw ParseError("superlatives", "polarity must be min or max", lineNo);
    }
    lex.entries_[text::foldTurkish(text::trim(cols[0]))] = e;
  }
  return lex;
}

const SuperlativeLexicon::Entry* SuperlativeLexicon::find(std::string_view foldedLemma) const {
  auto it = entries_.find(foldedLemma);
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

const nlp::MorphAnalysis& at(const AnnotatedSentence& s, int id) { return s.analysis(id); }

std::string key(const AnnotatedSentence& s, int id) { return at(s, id).lemmaKey(); }

bool isNounLike(const nlp::MorphAnalysis& a) {
  return a.pos == Pos::kNoun || a.finalPos() == Pos::kNoun;
}

std::optional<kb::LexEntry> lexEntry(const AnnotatedSentence& s, int id, const kb::KnowledgeBase& kb) {
  return kb.lexicon().best(key(s, id));
}

std::optional<Iri> entryOfKind(const AnnotatedSentence& s, int id, const kb::KnowledgeBase& kb,
                               AxiomKind kind) {
  for (const kb::LexEntry& e : kb.checkAxiomTypeAll(key(s, id))) {
    if (e.kind == kind) return e.target;
  }
  return std::nullopt;
}

bool hasDataPropertyNoun(const AnnotatedSentence& s, const kb::KnowledgeBase& kb) {
  for (int id = 1; id <= s.size(); ++id) {
    const auto& a = at(s, id);
    if (a.pos == Pos::kNoun && a.derivations.empty() &&
        std::find(a.features.begin(), a.features.end(), "Nom") != a.features.end() &&
        entryOfKind(s, id, kb, AxiomKind::kDataProperty)) {
      return true;
    }
  }
  return false;
}

}  // namespace

bool isQuantitative(const AnnotatedSentence& s, const kb::KnowledgeBase& kb) {
  const int n = s.size();
  for (int id = 1; id <= n; ++id) {
    const std::string k = key(s, id);
    if (k == "kaç" || k == "toplam") return true;
    if (k == "en" && at(s, id).pos == Pos::kAdv && id + 2 <= n) {
      const auto& a = at(s, id + 1);
      const auto& b = at(s, id + 2);
      const bool adjNoun = a.pos == Pos::kAdj && isNounLike(b);
      const bool advAdj = a.pos == Pos::kAdv && b.pos == Pos::kAdj;
      const bool advNoun = a.pos == Pos::kAdv && isNounLike(b);
      if (adjNoun || advAdj || advNoun) return true;
    }
    if (k == "ne" && id < n && key(s, id + 1) == "kadar") {
      const bool copular = at(s, id + 1).hasFeature("Cop");
      if (!(copular && hasDataPropertyNoun(s, kb))) return true;
    }
  }
  return false;
}

std::string entityFilterLiteral(const AnnotatedSentence& s, const nlp::EntitySpan& span) {
  const nlp::MorphAnalysis& head = s.analysis(span.start);
  const std::string& surface = s.tokens.at(static_cast<std::size_t>(span.start - 1)).surface;
  std::string lemma = head.lemma;
  const bool capitalized = !surface.empty() && text::foldTurkish(text::codePoints(surface).front()) !=
                                                   text::codePoints(surface).front();
  if (capitalized) return text::capitalizeTurkish(text::foldTurkish(lemma));
  return text::foldTurkish(lemma);
}

namespace {

struct Entity {
  Iri individual;
  Iri cls;
  std::string filter;
  const nlp::EntitySpan* span = nullptr;
};

std::optional<Entity> singleEntity(const AnnotatedSentence& s, const kb::KnowledgeBase& kb) {
  if (s.entitySpans.empty()) return std::nullopt;
  if (s.entitySpans.size() > 1) {
    throw FormulationError("questions with more than one named entity are not supported");
  }
  const nlp::EntitySpan& span = s.entitySpans.front();
  if (!span.resolved) {
    std::string names;
    for (const Iri& c : span.candidates) names += (names.empty() ? "" : ", ") + c.str();
    throw FormulationError("ambiguous named entity (" + names + ")");
  }
  return Entity{*span.resolved, kb.entityClassOf(*span.resolved), entityFilterLiteral(s, span), &span};
}

bool anyPairWithSubject(const kb::ObjectPropertyDecl& decl, const Iri& subjectClass,
                        const std::vector<Iri>& objectClasses) {
  for (const auto& [from, to] : decl.domainPairs) {
    if (from == subjectClass &&
        std::find(objectClasses.begin(), objectClasses.end(), to) != objectClasses.end()) {
      return true;
    }
  }
  return false;
}

sparql::Node var(std::string_view name) { return Var{std::string(name)}; }
sparql::Node cls(const Iri& iri) { return kb::Term::iri(iri); }

sparql::RegexFilter filterOn(std::string_view v, const std::string& literal) {
  return sparql::RegexFilter{Var{std::string(v)}, literal, "i"};
}

}  // namespace

bool targetIsSubject(const Iri& property, const Iri& targetClass, const Iri& entityClass,
                     const kb::OntologySchema& schema) {
  const kb::ObjectPropertyDecl* decl = schema.objectProperty(property);
  if (!decl) throw FormulationError("unknown object property " + property.str());
  if (decl->symmetric) return true;
  const std::vector<Iri> entitySide = schema.selfAndSuperclasses(entityClass);
  if (anyPairWithSubject(*decl, targetClass, entitySide)) return true;
  for (const Iri& c : entitySide) {
    if (anyPairWithSubject(*decl, c, {targetClass})) return false;
  }
  return true;
}

SelectQuery twoClassQuery(const Iri& targetClass, const Iri& entityClass, const Iri& objectProperty,
                          const std::optional<Iri>& dataProperty, const std::string& filter,
                          const kb::OntologySchema& schema) {
  // ?y is always the subject of the object property.
  const bool targetSubject = targetIsSubject(objectProperty, targetClass, entityClass, schema);
  const std::string targetVar = targetSubject ? "y" : "x";
  const std::string entityVar = targetSubject ? "x" : "y";
  const Iri& subjectClass = targetSubject ? targetClass : entityClass;
  const Iri& objectClass = targetSubject ? entityClass : targetClass;
  SelectQuery q;
  q.group.push_back(TriplePattern{var("x"), kb::rdfType(), cls(objectClass)});
  q.group.push_back(TriplePattern{var("y"), kb::rdfType(), cls(subjectClass)});
  q.group.push_back(TriplePattern{var("y"), objectProperty, var("x")});
  if (dataProperty) {
    q.group.push_back(TriplePattern{var(targetVar), *dataProperty, var("variable")});
    q.projection.push_back(Var{"variable"});
  } else {
    q.projection.push_back(Var{targetVar});
  }
  q.group.push_back(filterOn(entityVar, filter));
  return q;
}

SelectQuery singleClassQuery(const Iri& entityClass, const Iri& dataProperty, const std::string& filter) {
  SelectQuery q;
  q.projection.push_back(Var{"variable"});
  q.group.push_back(TriplePattern{var("x"), kb::rdfType(), cls(entityClass)});
  q.group.push_back(TriplePattern{var("x"), dataProperty, var("variable")});
  q.group.push_back(filterOn("x", filter));
  return q;
}

SelectQuery instantiateTemplate(const QueryFrame& f, const kb::OntologySchema& schema) {
  auto need = [](bool present, std::string_view slot) {
    if (!present) throw FormulationError("frame is missing " + std::string(slot));
  };
  need(f.functionName.has_value(), "function_name");
  need(f.targetClass.has_value(), "target_class");
  need(f.entityClass.has_value(), "entity_class");
  need(f.objectProperty.has_value(), "object_property");
  need(f.namedEntityFilter.has_value(), "named entity");
  const FunctionName fn = *f.functionName;
  const bool typeOne = fn == FunctionName::kMin || fn == FunctionName::kMax;
  if (typeOne || fn == FunctionName::kSum) need(f.dataProperty.has_value(), "data_property");

  const bool ySubject = targetIsSubject(*f.objectProperty, *f.targetClass, *f.entityClass, schema);
  const TriplePattern link = ySubject ? TriplePattern{var("y"), *f.objectProperty, var("x")}
                                      : TriplePattern{var("x"), *f.objectProperty, var("y")};
  sparql::AggregateFn agg = sparql::AggregateFn::kCount;
  switch (fn) {
    case FunctionName::kCount: agg = sparql::AggregateFn::kCount; break;
    case FunctionName::kSum: agg = sparql::AggregateFn::kSum; break;
    case FunctionName::kMin: agg = sparql::AggregateFn::kMin; break;
    case FunctionName::kMax: agg = sparql::AggregateFn::kMax; break;
  }

  if (typeOne) {
    SelectQuery inner;
    inner.aggregate = sparql::Aggregate{agg, Var{"var"}, Var{"m"}};
    inner.group.push_back(TriplePattern{var("x"), kb::rdfType(), cls(*f.entityClass)});
    inner.group.push_back(TriplePattern{var("y"), kb::rdfType(), cls(*f.targetClass)});
    inner.group.push_back(link);
    inner.group.push_back(TriplePattern{var("y"), *f.dataProperty, var("var")});
    inner.group.push_back(filterOn("x", *f.namedEntityFilter));
    SelectQuery outer;
    outer.projection = {Var{"y"}, Var{"m"}};
    outer.group.push_back(TriplePattern{var("y"), kb::rdfType(), cls(*f.targetClass)});
    outer.group.push_back(TriplePattern{var("y"), *f.dataProperty, var("m")});
    outer.group.push_back(sparql::SubQuery(std::move(inner)));
    return outer;
  }

  SelectQuery q;
  q.aggregate = sparql::Aggregate{agg, Var{fn == FunctionName::kSum ? "var" : "y"}, Var{"total"}};
  q.group.push_back(TriplePattern{var("x"), kb::rdfType(), cls(*f.entityClass)});
  q.group.push_back(TriplePattern{var("y"), kb::rdfType(), cls(*f.targetClass)});
  q.group.push_back(link);
  if (fn == FunctionName::kSum) {
    q.group.push_back(TriplePattern{var("y"), *f.dataProperty, var("var")});
  }
  q.group.push_back(filterOn("x", *f.namedEntityFilter));
  return q;
}

QueryFrame classifyQT2(const AnnotatedSentence& s, const SuperlativeLexicon& lex,
                       const kb::KnowledgeBase& kb) {
  QueryFrame frame;
  const int n = s.size();
  int nounAt = 0;  // token whose class becomes the target
  std::optional<Iri> dataProperty;
  std::optional<FunctionName> fn;

  auto nextNoun = [&](int from) {
    for (int k = from; k <= n; ++k) {
      if (at(s, k).pos == Pos::kPunc) break;
      if (isNounLike(at(s, k)) && !s.spanAt(k)) return k;
    }
    return 0;
  };

  for (int id = 1; id <= n && !fn; ++id) {
    const std::string k = key(s, id);
    if (k == "en" && id < n) {
      const SuperlativeLexicon::Entry* e = lex.find(key(s, id + 1));
      if (!e) continue;
      fn = e->polarity;
      if (e->dataProperty) {
        dataProperty = e->dataProperty;
        nounAt = nextNoun(id + 2);
      } else {
        int propAt = nextNoun(id + 2);
        if (propAt) dataProperty = entryOfKind(s, propAt, kb, AxiomKind::kDataProperty);
        nounAt = propAt ? nextNoun(propAt + 1) : 0;
      }
    } else if (k == "kaç") {
      fn = FunctionName::kCount;
      int next = id + 1;
      if (next <= n && key(s, next) == "tane") ++next;
      nounAt = nextNoun(next);
    } else if (k == "toplam" || (k == "ne" && id < n && key(s, id + 1) == "kadar")) {
      fn = FunctionName::kSum;
      for (int j = 1; j <= n; ++j) {
        if (s.spanAt(j)) continue;
        if (!dataProperty) dataProperty = entryOfKind(s, j, kb, AxiomKind::kDataProperty);
        if (!nounAt && entryOfKind(s, j, kb, AxiomKind::kClass)) nounAt = j;
      }
    }
  }
  if (!fn) throw FormulationError("no quantitative expression found");
  frame.functionName = fn;
  frame.dataProperty = dataProperty;

  if (nounAt) frame.targetClass = entryOfKind(s, nounAt, kb, AxiomKind::kClass);
  if (!frame.targetClass && dataProperty) {
    const kb::DataPropertyDecl* decl = kb.schema().dataProperty(*dataProperty);
    if (decl && !decl->domains.empty()) frame.targetClass = decl->domains.front();
  }

  std::optional<Entity> entity = singleEntity(s, kb);
  if (!entity) throw FormulationError("unresolvable frame: no named entity");
  frame.entityClass = entity->cls;
  frame.namedEntityFilter = entity->filter;
  if (!frame.targetClass) throw FormulationError("unresolvable frame: no target class");

  // Prefer the reading where the target is the subject (?y P ?x).
  std::vector<kb::PropertyMatch> props = kb.findConnectingProperties(*frame.targetClass, entity->individual);
  auto reverse = std::find_if(props.begin(), props.end(), [&](const kb::PropertyMatch& m) {
    return targetIsSubject(m.property, *frame.targetClass, *frame.entityClass, kb.schema());
  });
  if (reverse != props.end()) {
    frame.objectProperty = reverse->property;
  } else if (!props.empty()) {
    frame.objectProperty = props.front().property;
  }
  return frame;
}

namespace {

constexpr int kMaxReentries = 5;

class Qt1Builder {
 public:
  Qt1Builder(const AnnotatedSentence& s, const kb::KnowledgeBase& kb) : s_(s), kb_(kb) {}

  Qt1Result run() {
    entity_ = singleEntity(s_, kb_);
    if (entity_) {
      result_.frame.entityClass = entity_->cls;
      result_.frame.namedEntityFilter = entity_->filter;
      log("entity " + entity_->individual.str() + " of class " + entity_->cls.str());
    }
    int answer = firstWithRelation(Relation::kObject);
    subjectPath_ = answer == 0;
    if (subjectPath_) answer = firstWithRelation(Relation::kSubject);
    if (answer == 0) throw FormulationError("cannot locate answer type");
    log(std::string(subjectPath_ ? "subject" : "object") + " token " + std::to_string(answer) + " '" +
        s_.tokens[static_cast<std::size_t>(answer - 1)].surface + "'");
    resolve(answer);
    return std::move(result_);
  }

 private:
  void log(std::string line) { result_.trace.push_back(std::move(line)); }

  int firstWithRelation(Relation r) const {
    for (const nlp::DepRow& row : s_.depRows) {
      if (row.relation == r) return row.id;
    }
    return 0;
  }

  bool inEntity(int id) const { return entity_ && entity_->span->contains(id); }

  AxiomKind axiomOf(int id) const {
    if (inEntity(id)) return AxiomKind::kIndividual;
    auto e = lexEntry(s_, id, kb_);
    return e ? e->kind : AxiomKind::kNone;
  }

  int head(int id) const { return s_.row(id).head; }

  // Nearest POSSESSOR/MODIFIER dependent, else the governor when the token
  // itself is attached that way.
  int relatedToken(int id) const {
    int best = 0;
    for (int d : s_.dependents(id)) {
      Relation r = s_.row(d).relation;
      if (r != Relation::kPossessor && r != Relation::kModifier) continue;
      if (best == 0 || std::abs(d - id) < std::abs(best - id)) best = d;
    }
    if (best) return best;
    Relation own = s_.row(id).relation;
    if ((own == Relation::kPossessor || own == Relation::kModifier) && head(id) != 0) return head(id);
    return 0;
  }

  // Nearest token sharing the governor, leftward first; the governor when
  // no sibling carries an ontology item.
  int commonConnected(int id) const {
    const int gov = head(id);
    auto usable = [&](int k) {
      return k != id && !visited_.count(k) && head(k) == gov && axiomOf(k) != AxiomKind::kNone &&
             !inEntity(k);
    };
    for (int k = id - 1; k >= 1; --k) {
      if (usable(k)) return k;
    }
    for (int k = id + 1; k <= s_.size(); ++k) {
      if (usable(k)) return k;
    }
    if (gov != 0 && !visited_.count(gov)) return gov;
    return 0;
  }

  bool linkedToEntity(int id) const {
    for (int d : s_.dependents(id)) {
      if (inEntity(d)) return true;
    }
    return inEntity(head(id));
  }

  [[noreturn]] void unresolvable(const std::string& why) const {
    throw FormulationError("unresolvable question: " + why);
  }

  const Entity& requireEntity() const {
    if (!entity_) unresolvable("no named entity");
    return *entity_;
  }

  void finishTwoClass(const Iri& target, const Iri& property) {
    const Entity& e = requireEntity();
    result_.frame.targetClass = target;
    result_.frame.objectProperty = property;
    result_.frame.dataProperty = pendingData_;
    log("formulate two-class pattern with " + property.str());
    result_.query = twoClassQuery(target, e.cls, property, pendingData_, e.filter, kb_.schema());
  }

  void finishSingleClass(const Iri& dataProperty) {
    const Entity& e = requireEntity();
    result_.frame.targetClass = e.cls;
    result_.frame.dataProperty = dataProperty;
    log("formulate single-class pattern with " + dataProperty.str());
    result_.query = singleClassQuery(e.cls, dataProperty, e.filter);
  }

  // The class across the property's domain pairs from the entity class.
  std::optional<Iri> otherSide(const Iri& property) const {
    const Entity& e = requireEntity();
    const kb::ObjectPropertyDecl* decl = kb_.schema().objectProperty(property);
    if (!decl) return std::nullopt;
    const std::vector<Iri> entitySide = kb_.schema().selfAndSuperclasses(e.cls);
    for (const auto& [from, to] : decl->domainPairs) {
      if (std::find(entitySide.begin(), entitySide.end(), from) != entitySide.end()) return to;
      if (std::find(entitySide.begin(), entitySide.end(), to) != entitySide.end()) return from;
    }
    return std::nullopt;
  }

  void resolve(int token) {
    int reentries = 0;
    while (true) {
      if (token == 0) unresolvable("no connected token");
      if (visited_.count(token) || reentries > kMaxReentries) unresolvable("recursion limit reached");
      visited_.insert(token);
      const AxiomKind kind = axiomOf(token);
      log("token " + std::to_string(token) + " '" + key(s_, token) + "' is " +
          std::string(kb::axiomKindName(kind)));
      switch (kind) {
        case AxiomKind::kClass: {
          const Iri target = *entryOfKind(s_, token, kb_, AxiomKind::kClass);
          const Entity& e = requireEntity();
          std::vector<kb::PropertyMatch> props = kb_.findProperties(target, e.individual);
          const bool apposition = target == e.cls && linkedToEntity(token);
          if (subjectPath_ && (props.empty() || apposition)) {
            log("no usable property for " + target.str() + "; trying common connected token");
            token = commonConnected(token);
            ++reentries;
            continue;
          }
          if (props.empty()) unresolvable("no property links " + target.str() + " and " + e.individual.str());
          finishTwoClass(target, props.front().property);
          return;
        }
        case AxiomKind::kDataProperty: {
          const Iri dp = *entryOfKind(s_, token, kb_, AxiomKind::kDataProperty);
          if (!pendingData_) pendingData_ = dp;
          const int related = relatedToken(token);
          if (related == 0 || inEntity(related)) {
            finishSingleClass(*pendingData_);
            return;
          }
          log("related token " + std::to_string(related));
          token = related;
          ++reentries;
          continue;
        }
        case AxiomKind::kObjectProperty: {
          const Iri op = *entryOfKind(s_, token, kb_, AxiomKind::kObjectProperty);
          const int related = relatedToken(token);
          std::optional<Iri> target;
          if (related && !inEntity(related)) target = entryOfKind(s_, related, kb_, AxiomKind::kClass);
          if (!target) target = otherSide(op);
          if (!target) unresolvable(op.str() + " does not reach the entity class");
          finishTwoClass(*target, op);
          return;
        }
        case AxiomKind::kIndividual: {
          int connected = head(token);
          while (connected != 0 && inEntity(connected)) connected = head(connected);
          log("connected token " + std::to_string(connected));
          token = connected;
          ++reentries;
          continue;
        }
        case AxiomKind::kNone:
          unresolvable("no ontology item for '" + key(s_, token) + "'");
      }
    }
  }

  const AnnotatedSentence& s_;
  const kb::KnowledgeBase& kb_;
  std::optional<Entity> entity_;
  bool subjectPath_ = false;
  std::optional<Iri> pendingData_;
  std::set<int> visited_;
  Qt1Result result_;
};

}  // namespace

Qt1Result generateSparqlQT1(const AnnotatedSentence& sentence, const kb::KnowledgeBase& kb) {
  return Qt1Builder(sentence, kb).run();
}

Answer answer(std::string_view question, const Pipeline& p, const AnswerOptions& options) {
  Answer a;
  a.question = std::string(question);
  a.sentence = nlp::annotateLexical(question, p.lexicon, p.kb);
  nlp::AnnotatedSentence& s = a.sentence;
  std::optional<std::vector<nlp::DepRow>> gold;
  if (options.goldParse) gold = options.goldParse(s.tokens);
  if (gold) {
    if (gold->size() != s.tokens.size()) {
      throw nlp::NlpError("dependency", "gold parse does not match the question's tokens");
    }
    nlp::validateDepRows(*gold);
    s.depRows = std::move(*gold);
  } else {
    s.depRows = nlp::parseDependencies(s.tokens, s.analyses, s.nerLabels);
  }

  if (isQuantitative(s, p.kb)) {
    a.type = QuestionType::kQT2;
    RuleFrameClassifier rules(p.superlatives);
    const FrameClassifier& classifier = options.classifier ? *options.classifier : rules;
    a.frame = classifier.classify(s, p.kb);
    a.trace.push_back("frame from " + classifier.name() + " classifier");
    a.query = instantiateTemplate(a.frame, p.kb.schema());
  } else {
    a.type = QuestionType::kQT1;
    Qt1Result r = generateSparqlQT1(s, p.kb);
    a.frame = r.frame;
    a.trace = std::move(r.trace);
    a.query = std::move(r.query);
  }
  a.queryText = sparql::serialize(a.query, p.kb.prefixes());
  if (options.evaluate) a.solutions = sparql::evaluate(a.query, p.kb);
  return a;
}

}  // namespace geoqa::formulation
