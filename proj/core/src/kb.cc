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

#include "geoqa/kb.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>
#include <utility>

#include "geoqa/error.h"
#include "geoqa/text.h"

namespace geoqa::kb {
namespace {

constexpr std::string_view kSchemaStage = "schema";
constexpr std::string_view kInstanceStage = "instances";

int kindPriority(AxiomKind kind) {
  switch (kind) {
    case AxiomKind::kClass: return 0;
    case AxiomKind::kDataProperty: return 1;
    case AxiomKind::kObjectProperty: return 2;
    case AxiomKind::kIndividual: return 3;
    case AxiomKind::kNone: break;
  }
  return 4;
}

bool validLocalName(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

[[noreturn]] void schemaError(const std::string& msg, std::size_t line) {
  throw ParseError(std::string(kSchemaStage),
                   "line " + std::to_string(line) + ": " + msg, line);
}

[[noreturn]] void instanceError(const std::string& msg, std::size_t line) {
  throw ParseError(std::string(kInstanceStage),
                   "line " + std::to_string(line) + ": " + msg, line);
}

// Strips a trailing '#' comment and surrounding whitespace.
std::string stripComment(std::string_view line) {
  std::size_t hash = line.find('#');
  return text::trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

}  // namespace

Iri rdfType() { return {"rdf", "type"}; }
Iri rdfsSubClassOf() { return {"rdfs", "subClassOf"}; }
Iri classIri(std::string_view local) { return {std::string(kClassPrefix), std::string(local)}; }
Iri instanceIri(std::string_view local) {
  return {std::string(kInstancePrefix), std::string(local)};
}

Iri parseIri(std::string_view prefixed) {
  std::size_t colon = prefixed.find(':');
  if (colon == std::string_view::npos || colon == 0 ||
      !validLocalName(prefixed.substr(colon + 1))) {
    throw Error("iri", "malformed prefixed name '" + std::string(prefixed) + "'");
  }
  return {std::string(prefixed.substr(0, colon)),
          std::string(prefixed.substr(colon + 1))};
}

std::string_view literalKindName(LiteralKind kind) {
  switch (kind) {
    case LiteralKind::kInteger: return "int";
    case LiteralKind::kDecimal: return "decimal";
    case LiteralKind::kString: return "string";
  }
  return "string";
}

std::optional<Term> Term::parseLiteral(LiteralKind kind, std::string_view text) {
  switch (kind) {
    case LiteralKind::kString:
      return Term::string(std::string(text));
    case LiteralKind::kInteger: {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        return std::nullopt;
      }
      return Term::integer(v);
    }
    case LiteralKind::kDecimal: {
      double v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
          !std::isfinite(v)) {
        return std::nullopt;
      }
      return Term::decimal(v);
    }
  }
  return std::nullopt;
}

double Term::numericValue() const {
  if (isInteger()) return static_cast<double>(asInteger());
  if (isDecimal()) return asDecimal();
  throw Error("term", "term '" + lexical() + "' is not numeric");
}

std::optional<LiteralKind> Term::literalKind() const {
  if (isString()) return LiteralKind::kString;
  if (isInteger()) return LiteralKind::kInteger;
  if (isDecimal()) return LiteralKind::kDecimal;
  return std::nullopt;
}

std::string Term::lexical() const {
  if (isIri()) return asIri().str();
  if (isString()) return asString();
  if (isInteger()) return std::to_string(asInteger());
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), asDecimal());
  (void)ec;
  return std::string(buf, ptr);
}

std::string_view axiomKindName(AxiomKind kind) {
  switch (kind) {
    case AxiomKind::kClass: return "Class";
    case AxiomKind::kDataProperty: return "DataProperty";
    case AxiomKind::kObjectProperty: return "ObjectProperty";
    case AxiomKind::kIndividual: return "Individual";
    case AxiomKind::kNone: return "None";
  }
  return "None";
}

std::optional<AxiomKind> parseAxiomKind(std::string_view name) {
  for (AxiomKind k : {AxiomKind::kClass, AxiomKind::kDataProperty,
                      AxiomKind::kObjectProperty, AxiomKind::kIndividual}) {
    if (axiomKindName(k) == name) return k;
  }
  return std::nullopt;
}

// OntologySchema -------------------------------------------------------------

bool OntologySchema::isClass(const Iri& iri) const {
  return std::any_of(classes.begin(), classes.end(),
                     [&](const ClassDecl& c) { return c.name == iri; });
}

const ObjectPropertyDecl* OntologySchema::objectProperty(const Iri& iri) const {
  for (const auto& p : objectProperties) {
    if (p.name == iri) return &p;
  }
  return nullptr;
}

const DataPropertyDecl* OntologySchema::dataProperty(const Iri& iri) const {
  for (const auto& p : dataProperties) {
    if (p.name == iri) return &p;
  }
  return nullptr;
}

std::vector<Iri> OntologySchema::selfAndSuperclasses(const Iri& cls) const {
  std::vector<Iri> out{cls};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& [child, parent] : subclassPairs) {
      if (child == out[i] && std::find(out.begin(), out.end(), parent) == out.end()) {
        out.push_back(parent);
      }
    }
  }
  return out;
}

bool OntologySchema::isSubclassOrSelf(const Iri& child, const Iri& parent) const {
  auto chain = selfAndSuperclasses(child);
  return std::find(chain.begin(), chain.end(), parent) != chain.end();
}

OntologySchema loadSchema(std::string_view schemaText) {
  OntologySchema schema;
  // Declarations referencing classes are checked once all classes are known.
  struct PendingInverse {
    Iri property;
    Iri inverse;
    std::size_t line;
  };
  std::vector<PendingInverse> inverses;
  std::vector<std::pair<Iri, std::size_t>> referencedClasses;
  std::vector<std::pair<std::string, std::size_t>> aliasLines;

  auto lines = text::split(schemaText, '\n');
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t lineNo = n + 1;
    std::string line = stripComment(lines[n]);
    if (line.empty()) continue;
    auto words = text::splitWhitespace(line);
    const std::string& keyword = words[0];

    if (keyword == "class") {
      if (words.size() != 2) schemaError("expected 'class <Name>'", lineNo);
      Iri cls = classIri(words[1]);
      if (schema.isClass(cls)) schemaError("duplicate class " + words[1], lineNo);
      schema.classes.push_back({cls});
    } else if (keyword == "subclass") {
      if (words.size() != 3) schemaError("expected 'subclass <Child> <Parent>'", lineNo);
      Iri child = classIri(words[1]);
      Iri parent = classIri(words[2]);
      referencedClasses.emplace_back(child, lineNo);
      referencedClasses.emplace_back(parent, lineNo);
      schema.subclassPairs.emplace_back(child, parent);
    } else if (keyword == "objprop") {
      if (words.size() < 4 || words[2] != "domain") {
        schemaError("expected 'objprop <Name> domain <C1>-><C2>[,...]'", lineNo);
      }
      ObjectPropertyDecl decl;
      decl.name = instanceIri(words[1]);
      for (const std::string& pair : text::split(words[3], ',')) {
        std::size_t arrow = pair.find("->");
        if (arrow == std::string::npos || arrow == 0 || arrow + 2 >= pair.size()) {
          schemaError("malformed domain pair '" + pair + "'", lineNo);
        }
        Iri from = classIri(pair.substr(0, arrow));
        Iri to = classIri(pair.substr(arrow + 2));
        referencedClasses.emplace_back(from, lineNo);
        referencedClasses.emplace_back(to, lineNo);
        decl.domainPairs.emplace_back(from, to);
      }
      for (std::size_t i = 4; i < words.size(); ++i) {
        if (words[i] == "symmetric") {
          decl.symmetric = true;
        } else if (words[i] == "inverse" && i + 1 < words.size()) {
          decl.inverseOf = instanceIri(words[++i]);
          inverses.push_back({decl.name, *decl.inverseOf, lineNo});
        } else {
          schemaError("unexpected token '" + words[i] + "'", lineNo);
        }
      }
      if (schema.objectProperty(decl.name) || schema.dataProperty(decl.name)) {
        schemaError("duplicate property " + words[1], lineNo);
      }
      schema.objectProperties.push_back(std::move(decl));
    } else if (keyword == "dataprop") {
      if (words.size() != 6 || words[2] != "domains" || words[4] != "range") {
        schemaError("expected 'dataprop <Name> domains <C>,... range <kind>'", lineNo);
      }
      DataPropertyDecl decl;
      decl.name = instanceIri(words[1]);
      for (const std::string& c : text::split(words[3], ',')) {
        if (c.empty()) schemaError("empty domain class", lineNo);
        decl.domains.push_back(classIri(c));
        referencedClasses.emplace_back(decl.domains.back(), lineNo);
      }
      if (words[5] == "int") {
        decl.range = LiteralKind::kInteger;
      } else if (words[5] == "decimal") {
        decl.range = LiteralKind::kDecimal;
      } else if (words[5] == "string") {
        decl.range = LiteralKind::kString;
      } else {
        schemaError("unknown range '" + words[5] + "'", lineNo);
      }
      if (schema.objectProperty(decl.name) || schema.dataProperty(decl.name)) {
        schemaError("duplicate property " + words[1], lineNo);
      }
      schema.dataProperties.push_back(std::move(decl));
    } else if (keyword == "alias") {
      if (words.size() != 4) schemaError("expected 'alias <lemma> <kind> <Name>'", lineNo);
      aliasLines.emplace_back(line, lineNo);
    } else {
      schemaError("unknown directive '" + keyword + "'", lineNo);
    }
  }

  if (schema.classes.empty()) throw ParseError(std::string(kSchemaStage), "no classes declared", 0);

  for (const auto& [cls, lineNo] : referencedClasses) {
    if (!schema.isClass(cls)) schemaError("undeclared class " + cls.local, lineNo);
  }
  for (const auto& inv : inverses) {
    const ObjectPropertyDecl* other = schema.objectProperty(inv.inverse);
    if (other == nullptr) {
      schemaError("inverse of " + inv.property.local + " names unknown property " +
                      inv.inverse.local, inv.line);
    }
    if (!other->inverseOf || *other->inverseOf != inv.property) {
      schemaError("inverse declared on only one side: " + inv.property.local +
                      " -> " + inv.inverse.local, inv.line);
    }
  }
  for (const auto& [line, lineNo] : aliasLines) {
    auto words = text::splitWhitespace(line);
    auto kind = parseAxiomKind(words[2]);
    if (!kind || *kind == AxiomKind::kIndividual) {
      schemaError("alias kind must be Class, DataProperty or ObjectProperty", lineNo);
    }
    Iri target = *kind == AxiomKind::kClass ? classIri(words[3]) : instanceIri(words[3]);
    bool known = (*kind == AxiomKind::kClass && schema.isClass(target)) ||
                 (*kind == AxiomKind::kDataProperty && schema.dataProperty(target)) ||
                 (*kind == AxiomKind::kObjectProperty && schema.objectProperty(target));
    if (!known) schemaError("alias target " + words[3] + " is not declared", lineNo);
    schema.aliases.push_back({text::foldTurkish(words[1]), *kind, target});
  }
  return schema;
}

InstanceData loadInstances(std::string_view tsvText, const OntologySchema& schema) {
  InstanceData data;
  std::set<Iri> declared;
  struct PendingObject {
    Iri subject;
    Iri predicate;
    std::string objectId;
    std::size_t line;
  };
  std::vector<PendingObject> pending;

  auto lines = text::split(tsvText, '\n');
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t lineNo = n + 1;
    std::string_view raw = lines[n];
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (text::trim(raw).empty() || raw.front() == '#') continue;
    auto cols = text::split(raw, '\t');
    if (cols.size() != 4) instanceError("expected 4 tab-separated columns", lineNo);

    if (cols[0] == "individual") {
      if (!validLocalName(cols[1])) instanceError("invalid identifier '" + cols[1] + "'", lineNo);
      Iri id = instanceIri(cols[1]);
      Iri cls = classIri(cols[2]);
      if (!schema.isClass(cls)) instanceError("unknown class " + cols[2], lineNo);
      if (!declared.insert(id).second) {
        instanceError("duplicate individual " + cols[1], lineNo);
      }
      data.individuals.push_back({id, cls, text::trim(cols[3])});
      data.triples.push_back({id, rdfType(), Term::iri(cls)});
    } else if (cols[0] == "assert") {
      Iri subject = instanceIri(cols[1]);
      Iri predicate = instanceIri(cols[2]);
      if (const auto* dp = schema.dataProperty(predicate)) {
        auto literal = Term::parseLiteral(dp->range, cols[3]);
        if (!literal) {
          instanceError("value '" + cols[3] + "' is not a valid " +
                            std::string(literalKindName(dp->range)) + " for " + cols[2],
                        lineNo);
        }
        data.triples.push_back({subject, predicate, *literal});
      } else if (schema.objectProperty(predicate)) {
        pending.push_back({subject, predicate, cols[3], lineNo});
        data.triples.push_back({subject, predicate, Term::iri(instanceIri(cols[3]))});
      } else {
        instanceError("unknown property " + cols[2], lineNo);
      }
      // Subject existence is checked below so rows may appear in any order.
      pending.push_back({subject, {}, {}, lineNo});
    } else {
      instanceError("unknown row kind '" + cols[0] + "'", lineNo);
    }
  }
  for (const auto& p : pending) {
    if (!declared.count(p.subject)) instanceError("unknown individual " + p.subject.local, p.line);
    if (!p.objectId.empty() && !declared.count(instanceIri(p.objectId))) {
      instanceError("unknown individual " + p.objectId, p.line);
    }
  }
  return data;
}

// Lexicalization -------------------------------------------------------------

bool Lexicalization::add(std::string_view lemma, AxiomKind kind, const Iri& target) {
  auto& list = entries_[text::foldTurkish(lemma)];
  for (const LexEntry& e : list) {
    if (e.kind == kind) return e.target == target;
  }
  list.push_back({kind, target});
  std::stable_sort(list.begin(), list.end(), [](const LexEntry& a, const LexEntry& b) {
    return kindPriority(a.kind) < kindPriority(b.kind);
  });
  return true;
}

std::vector<LexEntry> Lexicalization::matches(std::string_view lemma) const {
  auto it = entries_.find(text::foldTurkish(lemma));
  return it == entries_.end() ? std::vector<LexEntry>{} : it->second;
}

std::optional<LexEntry> Lexicalization::best(std::string_view lemma) const {
  auto all = matches(lemma);
  if (all.empty()) return std::nullopt;
  return all.front();
}

bool Lexicalization::contains(std::string_view lemma) const {
  return entries_.count(text::foldTurkish(lemma)) > 0;
}

// KnowledgeBase --------------------------------------------------------------

PrefixMap defaultPrefixMap() {
  return {
      {"geo_turkce", "http://geo-tr.org/ontology#"},
      {"ins", "http://geo-tr.org/instances#"},
      {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
      {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
  };
}

std::vector<std::string> foldedLabelKey(std::string_view label) {
  std::vector<std::string> key;
  for (const std::string& w : text::splitWhitespace(label)) key.push_back(text::foldTurkish(w));
  return key;
}

KnowledgeBase::KnowledgeBase(OntologySchema schema, PrefixMap prefixes)
    : schema_(std::move(schema)), prefixes_(std::move(prefixes)) {
  for (const auto& [child, parent] : schema_.subclassPairs) {
    insert({child, rdfsSubClassOf(), Term::iri(parent)});
  }
  rebuildLexicon();
}

void KnowledgeBase::rebuildLexicon() {
  lexicon_ = Lexicalization();
  for (const auto& c : schema_.classes) {
    lexicon_.add(c.name.local, AxiomKind::kClass, c.name);
  }
  for (const auto& p : schema_.dataProperties) {
    lexicon_.add(p.name.local, AxiomKind::kDataProperty, p.name);
  }
  for (const auto& p : schema_.objectProperties) {
    lexicon_.add(p.name.local, AxiomKind::kObjectProperty, p.name);
  }
  for (const auto& a : schema_.aliases) {
    lexicon_.add(a.lemma, a.kind, a.target);
  }
  for (const auto& [key, iris] : gazetteer_) {
    // First individual registered under a label keeps the lexicon entry;
    // the gazetteer still reports the ambiguity.
    lexicon_.add(text::join(key, " "), AxiomKind::kIndividual, iris.front());
  }
}

void KnowledgeBase::addInstances(const InstanceData& data) {
  for (const auto& ind : data.individuals) {
    if (individualIndex_.count(ind.id)) {
      throw Error(std::string(kInstanceStage), "duplicate individual " + ind.id.local);
    }
    individualIndex_[ind.id] = individuals_.size();
    individuals_.push_back(ind);
    auto key = foldedLabelKey(ind.label);
    if (key.empty()) key = {text::foldTurkish(ind.id.local)};
    auto& slot = gazetteer_[key];
    if (std::find(slot.begin(), slot.end(), ind.id) == slot.end()) slot.push_back(ind.id);
    maxLabelLength_ = std::max(maxLabelLength_, key.size());
  }
  for (const auto& t : data.triples) insert(t);
  rebuildLexicon();
}

void KnowledgeBase::rekeyLabels(const LabelKeyFn& keyFn) {
  gazetteer_.clear();
  maxLabelLength_ = 0;
  for (const auto& ind : individuals_) {
    auto key = keyFn(ind.label);
    if (key.empty()) key = {text::foldTurkish(ind.id.local)};
    auto& slot = gazetteer_[key];
    if (std::find(slot.begin(), slot.end(), ind.id) == slot.end()) slot.push_back(ind.id);
    maxLabelLength_ = std::max(maxLabelLength_, key.size());
  }
  rebuildLexicon();
}

void KnowledgeBase::validate(const Triple& t) const {
  if (t.subject.local.empty() || t.predicate.local.empty()) {
    throw Error("kb", "triple with empty name");
  }
  if (t.predicate == rdfType() || t.predicate == rdfsSubClassOf()) {
    if (!t.object.isIri()) throw Error("kb", t.predicate.str() + " requires an IRI object");
    return;
  }
  if (const auto* dp = schema_.dataProperty(t.predicate)) {
    if (t.object.literalKind() != dp->range) {
      throw Error("kb", "object of " + t.predicate.str() + " must be a " +
                            std::string(literalKindName(dp->range)) + " literal");
    }
    return;
  }
  if (schema_.objectProperty(t.predicate)) {
    if (!t.object.isIri()) throw Error("kb", "object of " + t.predicate.str() + " must be an IRI");
    return;
  }
  throw Error("kb", "undeclared predicate " + t.predicate.str());
}

bool KnowledgeBase::insert(const Triple& t) {
  validate(t);
  if (!spo_.insert(t).second) return false;
  pos_.emplace(t.predicate, t.object, t.subject);
  osp_.emplace(t.object, t.subject, t.predicate);
  closed_ = false;
  return true;
}

bool KnowledgeBase::contains(const Triple& t) const { return spo_.count(t) > 0; }

bool KnowledgeBase::containsVia(Index index, const Triple& t) const {
  switch (index) {
    case Index::kSpo: return spo_.count(t) > 0;
    case Index::kPos: return pos_.count(PosKey{t.predicate, t.object, t.subject}) > 0;
    case Index::kOsp: return osp_.count(OspKey{t.object, t.subject, t.predicate}) > 0;
  }
  return false;
}

std::vector<Triple> KnowledgeBase::match(const std::optional<Iri>& s,
                                         const std::optional<Iri>& p,
                                         const std::optional<Term>& o) const {
  std::vector<Triple> out;
  auto keep = [&](const Triple& t) {
    return (!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o);
  };
  if (s) {
    Triple lo{*s, p.value_or(Iri{}), p && o ? *o : Term()};
    for (auto it = spo_.lower_bound(lo); it != spo_.end() && it->subject == *s; ++it) {
      if (p && it->predicate != *p) break;
      if (keep(*it)) out.push_back(*it);
    }
  } else if (p) {
    PosKey lo{*p, o.value_or(Term()), Iri{}};
    for (auto it = pos_.lower_bound(lo);
         it != pos_.end() && std::get<0>(*it) == *p; ++it) {
      if (o && std::get<1>(*it) != *o) break;
      out.push_back({std::get<2>(*it), std::get<0>(*it), std::get<1>(*it)});
    }
  } else if (o) {
    OspKey lo{*o, Iri{}, Iri{}};
    for (auto it = osp_.lower_bound(lo); it != osp_.end() && std::get<0>(*it) == *o; ++it) {
      out.push_back({std::get<1>(*it), std::get<2>(*it), std::get<0>(*it)});
    }
  } else {
    out.assign(spo_.begin(), spo_.end());
  }
  return out;
}

ClosureStats KnowledgeBase::applyClosure() {
  ClosureStats stats;
  bool changed = true;
  while (changed) {
    changed = false;
    ++stats.rounds;
    std::vector<std::pair<Triple, int>> additions;  // 0 inverse, 1 symmetric, 2 subclass
    for (const auto& prop : schema_.objectProperties) {
      for (const Triple& t : match(std::nullopt, prop.name, std::nullopt)) {
        if (!t.object.isIri()) continue;
        if (prop.inverseOf) {
          additions.push_back({{t.object.asIri(), *prop.inverseOf, Term::iri(t.subject)}, 0});
        }
        if (prop.symmetric) {
          additions.push_back({{t.object.asIri(), prop.name, Term::iri(t.subject)}, 1});
        }
      }
    }
    for (const Triple& sub : match(std::nullopt, rdfsSubClassOf(), std::nullopt)) {
      for (const Triple& typed : match(std::nullopt, rdfType(), Term::iri(sub.subject))) {
        additions.push_back({{typed.subject, rdfType(), sub.object}, 2});
      }
    }
    for (const auto& [t, kind] : additions) {
      if (!insert(t)) continue;
      changed = true;
      if (kind == 0) ++stats.inverseAdded;
      else if (kind == 1) ++stats.symmetricAdded;
      else ++stats.subclassAdded;
    }
  }
  closed_ = true;
  return stats;
}

KnowledgeBase applyClosure(KnowledgeBase kb) {
  kb.applyClosure();
  return kb;
}

AxiomKind KnowledgeBase::checkAxiomType(std::string_view lemma) const {
  auto best = lexicon_.best(lemma);
  return best ? best->kind : AxiomKind::kNone;
}

std::vector<LexEntry> KnowledgeBase::checkAxiomTypeAll(std::string_view lemma) const {
  return lexicon_.matches(lemma);
}

bool KnowledgeBase::isIndividual(const Iri& iri) const {
  if (individualIndex_.count(iri)) return true;
  for (const Triple& t : match(iri, rdfType(), std::nullopt)) {
    if (t.object.isIri() && schema_.isClass(t.object.asIri())) return true;
  }
  return false;
}

Iri KnowledgeBase::entityClassOf(const Iri& individual) const {
  std::vector<Iri> types;
  for (const Triple& t : match(individual, rdfType(), std::nullopt)) {
    if (t.object.isIri() && schema_.isClass(t.object.asIri())) types.push_back(t.object.asIri());
  }
  if (types.empty()) throw Error("kb", "no such entity " + individual.str());
  // Most specific: no other asserted type is a strict subclass of it.
  for (const auto& decl : schema_.classes) {
    if (std::find(types.begin(), types.end(), decl.name) == types.end()) continue;
    bool hasMoreSpecific = std::any_of(types.begin(), types.end(), [&](const Iri& other) {
      return other != decl.name && schema_.isSubclassOrSelf(other, decl.name);
    });
    if (!hasMoreSpecific) return decl.name;
  }
  return types.front();
}

std::vector<PropertyMatch> KnowledgeBase::findConnectingProperties(
    const Iri& targetClass, const Iri& individual) const {
  if (!schema_.isClass(targetClass)) {
    throw Error("kb", "undeclared class " + targetClass.str());
  }
  const std::vector<Iri> entityClasses = schema_.selfAndSuperclasses(entityClassOf(individual));
  auto isEntityClass = [&](const Iri& c) {
    return std::find(entityClasses.begin(), entityClasses.end(), c) != entityClasses.end();
  };
  std::vector<PropertyMatch> forward;
  std::vector<PropertyMatch> reverse;
  for (const auto& prop : schema_.objectProperties) {
    bool fwd = false;
    bool rev = false;
    for (const auto& [from, to] : prop.domainPairs) {
      fwd = fwd || (isEntityClass(from) && to == targetClass);
      rev = rev || (from == targetClass && isEntityClass(to));
    }
    if (fwd) forward.push_back({prop.name, Direction::kForward, PropertyKind::kObject});
    if (rev && !(fwd && prop.symmetric)) {
      reverse.push_back({prop.name, Direction::kReverse, PropertyKind::kObject});
    }
  }
  forward.insert(forward.end(), reverse.begin(), reverse.end());
  return forward;
}

std::vector<PropertyMatch> KnowledgeBase::findProperties(const Iri& targetClass,
                                                         const Iri& individual) const {
  auto all = findConnectingProperties(targetClass, individual);
  bool anyForward = std::any_of(all.begin(), all.end(), [](const PropertyMatch& m) {
    return m.direction == Direction::kForward;
  });
  if (anyForward) {
    std::erase_if(all, [](const PropertyMatch& m) { return m.direction != Direction::kForward; });
  }
  return all;
}

LabelLookup KnowledgeBase::lookupIndividualByLabel(std::span<const std::string> lemmas) const {
  LabelLookup result;
  std::size_t limit = std::min(lemmas.size(), maxLabelLength_);
  for (std::size_t len = limit; len > 0; --len) {
    std::vector<std::string> key;
    for (std::size_t i = 0; i < len; ++i) key.push_back(text::foldTurkish(lemmas[i]));
    auto it = gazetteer_.find(key);
    if (it == gazetteer_.end()) continue;
    result.matchedLength = len;
    result.candidates = it->second;
    result.status = it->second.size() == 1 ? LabelLookup::Status::kUnique
                                           : LabelLookup::Status::kAmbiguous;
    return result;
  }
  return result;
}

std::string KnowledgeBase::expand(const Iri& iri) const {
  auto it = prefixes_.find(iri.prefix);
  if (it == prefixes_.end()) throw Error("kb", "unregistered prefix '" + iri.prefix + "'");
  return it->second + iri.local;
}

}  // namespace geoqa::kb
