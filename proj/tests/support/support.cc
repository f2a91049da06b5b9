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


#include "support.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "geoqa/eval.h"
#include "geoqa/text.h"

namespace geoqa::testing {

using kb::Iri;
using kb::Term;
using sparql::Node;
using sparql::SelectQuery;
using sparql::Solution;
using sparql::TriplePattern;
using sparql::Var;

std::vector<std::string> suiteQuestions() {
  std::vector<std::string> out;
  for (const auto& r : eval::loadSuiteFile(dataPath("suite.jsonl"))) out.push_back(r.question);
  return out;
}

const char* const kSentence1 = "Ankara iline komşu olan illeri gösterir misin ?";
const char* const kSentence2 = "Ege Bölgesi'nin yüzölçümü ne kadardır?";
const char* const kSentence3 = "Ege Bölgesi'ndeki şehirlerin nüfuslarını gösterir misin ?";

std::string dataPath(const std::string& relative) { return std::string(GEOQA_TEST_DATA_DIR) + "/" + relative; }

std::string readData(const std::string& relative) {
  std::ifstream in(dataPath(relative), std::ios::binary);
  if (!in) throw std::runtime_error("missing test data " + relative);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const config::Resources& bundled() {
  static const std::unique_ptr<config::Resources> res =
      config::loadResources(config::loadConfig(dataPath("geoqa.conf")));
  return *res;
}

std::vector<DepTriple> referenceTable(int sentence) {
  switch (sentence) {
    case 1:
      return {{"Ankara", "POSSESSOR", 2}, {"il", "MODIFIER", 4},     {"komşu", "MODIFIER", 4},
              {"ol", "MODIFIER", 6},      {"il", "OBJECT", 6},       {"göster", "ARGUMENT", 7},
              {"mi", "PREDICATE", 0},     {"?", "PUNCTUATION", 7}};
    case 2:
      return {{"ege", "POSSESSOR", 2}, {"bölge", "POSSESSOR", 3}, {"yüzölçüm", "SUBJECT", 5},
              {"ne", "ARGUMENT", 5},   {"kadar", "PREDICATE", 0}, {"?", "PUNCTUATION", 5}};
    case 3:
      return {{"ege", "POSSESSOR", 2},  {"bölge", "MODIFIER", 5}, {"şehir", "POSSESSOR", 4},
              {"nüfus", "OBJECT", 5},   {"göster", "ARGUMENT", 6}, {"mi", "PREDICATE", 0},
              {"?", "PUNCTUATION", 6}};
  }
  throw std::invalid_argument("no such table");
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    out.push_back(l);
  }
  return out;
}

}  // namespace

TsvOracle::TsvOracle(const std::string& schemaText, const std::string& instanceText) {
  std::set<std::string> objprops, symmetric;
  std::map<std::string, std::string> inverse;
  for (const std::string& raw : lines(schemaText)) {
    std::string l = raw.substr(0, raw.find('#'));
    std::istringstream in(l);
    std::vector<std::string> w;
    for (std::string t; in >> t;) w.push_back(t);
    if (w.empty()) continue;
    if (w[0] == "subclass") parents_[w[1]].insert(w[2]);
    if (w[0] == "objprop") {
      objprops.insert(w[1]);
      for (std::size_t i = 2; i < w.size(); ++i) {
        if (w[i] == "symmetric") symmetric.insert(w[1]);
        if (w[i] == "inverse" && i + 1 < w.size()) {
          inverse[w[1]] = w[i + 1];
          inverse[w[i + 1]] = w[1];
        }
      }
    }
  }
  for (const std::string& l : lines(instanceText)) {
    if (l.empty() || l[0] == '#') continue;
    std::vector<std::string> c = fields(l, '\t');
    if (c[0] == "individual") cls_[c[1]] = c[2];
    if (c[0] == "assert") {
      if (objprops.count(c[2])) {
        edges_.insert({c[1], c[2], c[3]});
      } else {
        values_[{c[1], c[2]}].push_back(c[3]);
      }
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [s, p, o] : std::vector(edges_.begin(), edges_.end())) {
      if (inverse.count(p)) changed |= edges_.insert({o, inverse[p], s}).second;
      if (symmetric.count(p)) changed |= edges_.insert({o, p, s}).second;
    }
  }
}

std::set<std::string> TsvOracle::ofClass(const std::string& cls) const {
  std::set<std::string> out;
  for (const auto& [ind, c] : cls_) {
    std::vector<std::string> todo{c};
    std::set<std::string> seen;
    while (!todo.empty()) {
      std::string cur = todo.back();
      todo.pop_back();
      if (!seen.insert(cur).second) continue;
      if (cur == cls) out.insert(ind);
      auto it = parents_.find(cur);
      if (it != parents_.end()) todo.insert(todo.end(), it->second.begin(), it->second.end());
    }
  }
  return out;
}

std::set<std::string> TsvOracle::objects(const std::string& s, const std::string& p) const {
  std::set<std::string> out;
  for (const auto& [a, q, o] : edges_) {
    if (a == s && q == p) out.insert(o);
  }
  return out;
}

std::set<std::string> TsvOracle::subjects(const std::string& p, const std::string& o) const {
  std::set<std::string> out;
  for (const auto& [s, q, b] : edges_) {
    if (b == o && q == p) out.insert(s);
  }
  return out;
}

std::vector<std::string> TsvOracle::values(const std::string& s, const std::string& p) const {
  auto it = values_.find({s, p});
  return it == values_.end() ? std::vector<std::string>{} : it->second;
}

// ---------------------------------------------------------------------------

namespace {

std::string expandIri(const Iri& iri, const kb::KnowledgeBase& kb) {
  return kb.prefixes().at(iri.prefix) + iri.local;
}

void collectVars(const Node& n, std::vector<std::string>& out) {
  if (const auto* v = std::get_if<Var>(&n)) {
    if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
  }
}

std::optional<Term> valueOf(const Node& n, const Solution& s) {
  if (const auto* v = std::get_if<Var>(&n)) {
    auto it = s.find(v->name);
    if (it == s.end()) return std::nullopt;
    return it->second;
  }
  return std::get<Term>(n);
}

bool filterHolds(const sparql::RegexFilter& f, const Solution& s, const kb::KnowledgeBase& kb) {
  auto it = s.find(f.var.name);
  if (it == s.end()) return false;
  const std::string value = it->second.isIri() ? expandIri(it->second.asIri(), kb) : it->second.lexical();
  auto flags = std::regex::ECMAScript;
  if (f.flags == "i") flags |= std::regex::icase;
  return std::regex_search(value, std::regex(f.pattern, flags));
}

}  // namespace

std::vector<Solution> oracleEvaluate(const SelectQuery& q, const kb::KnowledgeBase& kb) {
  std::set<Term> domainSet;
  for (const kb::Triple& t : kb.triples()) {
    domainSet.insert(Term::iri(t.subject));
    domainSet.insert(t.object);
  }
  const std::vector<Term> domain(domainSet.begin(), domainSet.end());

  std::vector<Solution> seeds{Solution{}};
  std::vector<const TriplePattern*> patterns;
  std::vector<const sparql::RegexFilter*> filters;
  for (const auto& e : q.group) {
    if (const auto* sq = std::get_if<sparql::SubQuery>(&e)) seeds = oracleEvaluate(sq->query(), kb);
    if (const auto* tp = std::get_if<TriplePattern>(&e)) patterns.push_back(tp);
    if (const auto* f = std::get_if<sparql::RegexFilter>(&e)) filters.push_back(f);
  }

  std::vector<Solution> matches;
  for (const Solution& seed : seeds) {
    std::vector<std::string> free;
    for (const TriplePattern* tp : patterns) {
      collectVars(tp->subject, free);
      collectVars(tp->object, free);
    }
    free.erase(std::remove_if(free.begin(), free.end(), [&](const std::string& v) { return seed.count(v) > 0; }),
               free.end());
    Solution current = seed;
    std::function<void(std::size_t)> assign = [&](std::size_t k) {
      if (k == free.size()) {
        for (const TriplePattern* tp : patterns) {
          std::optional<Term> s = valueOf(tp->subject, current);
          std::optional<Term> o = valueOf(tp->object, current);
          if (!s || !o || !s->isIri()) return;
          if (!kb.triples().count(kb::Triple{s->asIri(), tp->predicate, *o})) return;
        }
        for (const sparql::RegexFilter* f : filters) {
          if (!filterHolds(*f, current, kb)) return;
        }
        matches.push_back(current);
        return;
      }
      for (const Term& t : domain) {
        current[free[k]] = t;
        assign(k + 1);
      }
      current.erase(free[k]);
    };
    assign(0);
  }

  if (q.aggregate) {
    const sparql::Aggregate& agg = *q.aggregate;
    std::vector<Term> vals;
    for (const Solution& m : matches) {
      auto it = m.find(agg.input.name);
      if (it != m.end()) vals.push_back(it->second);
    }
    const std::string alias = agg.alias.name;
    switch (agg.fn) {
      case sparql::AggregateFn::kCount:
        return {Solution{{alias, Term::integer(static_cast<std::int64_t>(vals.size()))}}};
      case sparql::AggregateFn::kSum: {
        const bool anyDecimal = std::any_of(vals.begin(), vals.end(), [](const Term& t) { return t.isDecimal(); });
        if (anyDecimal) {
          double total = 0;
          for (const Term& t : vals) total += t.isDecimal() ? t.asDecimal() : static_cast<double>(t.asInteger());
          return {Solution{{alias, Term::decimal(total)}}};
        }
        std::int64_t total = 0;
        for (const Term& t : vals) total += t.asInteger();
        return {Solution{{alias, Term::integer(total)}}};
      }
      case sparql::AggregateFn::kMin:
      case sparql::AggregateFn::kMax: {
        if (vals.empty()) return {};
        auto number = [](const Term& t) { return t.isDecimal() ? t.asDecimal() : static_cast<double>(t.asInteger()); };
        const Term* best = &vals[0];
        for (const Term& t : vals) {
          if (agg.fn == sparql::AggregateFn::kMax ? number(t) > number(*best) : number(t) < number(*best)) best = &t;
        }
        return {Solution{{alias, *best}}};
      }
    }
  }

  std::vector<Solution> out;
  for (const Solution& m : matches) {
    Solution row;
    for (const Var& v : q.projection) {
      auto it = m.find(v.name);
      if (it != m.end()) row.emplace(v.name, it->second);
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::string> canonicalRows(const std::vector<Solution>& rows) {
  std::vector<std::string> out;
  for (const Solution& s : rows) {
    std::string line;
    for (const auto& [k, v] : s) {
      std::string kind = v.isIri() ? "iri" : std::string(kb::literalKindName(*v.literalKind()));
      line += k + "=" + kind + ":" + v.lexical() + ";";
    }
    out.push_back(std::move(line));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

std::string randomSchemaText() {
  return "class A\nclass B\nclass C\nsubclass C A\n"
         "objprop p domain A->B inverse q\n"
         "objprop q domain B->A inverse p\n"
         "objprop s domain A->A symmetric\n"
         "dataprop n domains A,B range int\n"
         "dataprop w domains A range decimal\n";
}

namespace {

const std::vector<std::string> kAs = {"a0", "a1", "a2", "a3"};
const std::vector<std::string> kBs = {"b0", "b1", "b2"};
const std::vector<std::string> kCs = {"c0", "c1"};

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool chance(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Iri ins(const std::string& local) { return kb::instanceIri(local); }

}  // namespace

kb::KnowledgeBase randomKb(std::mt19937& rng, int maxTriples) {
  kb::KnowledgeBase k(kb::loadSchema(randomSchemaText()));
  std::vector<std::string> aLike = kAs;
  aLike.insert(aLike.end(), kCs.begin(), kCs.end());
  const int target = std::uniform_int_distribution<int>(1, maxTriples)(rng);
  int added = 0;
  for (int guard = 0; added < target && guard < 500; ++guard) {
    kb::Triple t;
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
      case 0: {
        const int which = std::uniform_int_distribution<int>(0, 2)(rng);
        const std::string& ind = which == 0 ? pick(rng, kAs) : which == 1 ? pick(rng, kBs) : pick(rng, kCs);
        t = {ins(ind), kb::rdfType(), Term::iri(kb::classIri(which == 0 ? "A" : which == 1 ? "B" : "C"))};
        break;
      }
      case 1: t = {ins(pick(rng, aLike)), ins("p"), Term::iri(ins(pick(rng, kBs)))}; break;
      case 2: t = {ins(pick(rng, kBs)), ins("q"), Term::iri(ins(pick(rng, aLike)))}; break;
      case 3: t = {ins(pick(rng, aLike)), ins("s"), Term::iri(ins(pick(rng, aLike)))}; break;
      case 4: {
        const std::string& ind = chance(rng, 0.6) ? pick(rng, aLike) : pick(rng, kBs);
        t = {ins(ind), ins("n"), Term::integer(std::uniform_int_distribution<int>(0, 5)(rng))};
        break;
      }
      default:
        t = {ins(pick(rng, aLike)), ins("w"), Term::decimal(pick(rng, std::vector<double>{0.5, 1.5, 2.0, 2.25}))};
    }
    if (k.insert(t)) ++added;
  }
  return k;
}

namespace {

Node var(const std::string& name) { return Var{name}; }

std::vector<std::string> boundIn(const std::vector<sparql::GroupElement>& group) {
  std::vector<std::string> out;
  for (const auto& e : group) {
    if (const auto* tp = std::get_if<TriplePattern>(&e)) {
      collectVars(tp->subject, out);
      collectVars(tp->object, out);
    }
  }
  return out;
}

TriplePattern randomPattern(std::mt19937& rng, const std::vector<std::string>& entityVars,
                            const std::vector<std::string>& valueVars) {
  auto entity = [&]() -> Node {
    if (chance(rng, 0.15)) return Term::iri(ins(pick(rng, chance(rng, 0.5) ? kAs : kBs)));
    return var(pick(rng, entityVars));
  };
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      return {var(pick(rng, entityVars)), kb::rdfType(),
              Term::iri(kb::classIri(pick(rng, std::vector<std::string>{"A", "B", "C"})))};
    case 1:
      return {entity(), ins(pick(rng, std::vector<std::string>{"p", "q", "s"})), entity()};
    case 2:
      return {entity(), ins(pick(rng, std::vector<std::string>{"p", "q", "s"})), var(pick(rng, entityVars))};
    default:
      return {var(pick(rng, entityVars)), ins(chance(rng, 0.7) ? "n" : "w"), var(pick(rng, valueVars))};
  }
}

sparql::RegexFilter randomFilter(std::mt19937& rng, const std::string& v) {
  static const std::vector<std::string> kPatterns = {"a", "b", "c", "1", "0", "A", "B", "^http",
                                                     "1$", "instances#a", "ontology", "2"};
  return {Var{v}, pick(rng, kPatterns), chance(rng, 0.5) ? "i" : ""};
}

SelectQuery flatQuery(std::mt19937& rng) {
  SelectQuery q;
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < n; ++i) q.group.push_back(randomPattern(rng, {"x", "y", "z"}, {"u", "v"}));
  std::vector<std::string> bound = boundIn(q.group);
  if (bound.empty()) {
    q.group.push_back(TriplePattern{var("x"), kb::rdfType(), Term::iri(kb::classIri("A"))});
    bound = boundIn(q.group);
  }
  if (chance(rng, 0.3)) q.group.push_back(randomFilter(rng, pick(rng, bound)));

  if (chance(rng, 0.4)) {
    const auto fn = static_cast<sparql::AggregateFn>(std::uniform_int_distribution<int>(0, 3)(rng));
    std::string input;
    if (fn == sparql::AggregateFn::kCount) {
      input = pick(rng, bound);
    } else {
      std::vector<std::string> values;
      for (const std::string& b : bound) {
        if (b == "u" || b == "v") values.push_back(b);
      }
      // One numeric kind per input variable.
      for (auto it = values.begin(); it != values.end();) {
        bool viaN = false, viaW = false;
        for (const auto& e : q.group) {
          if (const auto* tp = std::get_if<TriplePattern>(&e)) {
            const auto* o = std::get_if<Var>(&tp->object);
            if (o && o->name == *it) {
              viaN |= tp->predicate.local == "n";
              viaW |= tp->predicate.local == "w";
            }
          }
        }
        it = viaN && viaW ? values.erase(it) : it + 1;
      }
      if (values.empty()) {
        q.group.push_back(TriplePattern{var("x"), ins("n"), var("u")});
        input = "u";
      } else {
        input = pick(rng, values);
      }
    }
    q.aggregate = sparql::Aggregate{fn, Var{input}, Var{"agg"}};
    return q;
  }
  std::shuffle(bound.begin(), bound.end(), rng);
  const std::size_t keep = std::uniform_int_distribution<std::size_t>(1, bound.size())(rng);
  for (std::size_t i = 0; i < keep; ++i) q.projection.push_back(Var{bound[i]});
  return q;
}

SelectQuery nestedQuery(std::mt19937& rng) {
  SelectQuery inner;
  inner.group.push_back(TriplePattern{var("x"), ins("n"), var("u")});
  if (chance(rng, 0.5)) {
    inner.group.push_back(TriplePattern{var("x"), kb::rdfType(), Term::iri(kb::classIri(chance(rng, 0.5) ? "A" : "B"))});
  }
  if (chance(rng, 0.3)) inner.group.push_back(randomFilter(rng, "x"));
  inner.aggregate = sparql::Aggregate{chance(rng, 0.5) ? sparql::AggregateFn::kMax : sparql::AggregateFn::kMin,
                                      Var{"u"}, Var{"m"}};
  SelectQuery outer;
  outer.projection = {Var{"y"}, Var{"m"}};
  outer.group.push_back(TriplePattern{var("y"), ins("n"), var("m")});
  if (chance(rng, 0.5)) outer.group.push_back(TriplePattern{var("y"), kb::rdfType(), Term::iri(kb::classIri("A"))});
  outer.group.push_back(sparql::SubQuery(std::move(inner)));
  return outer;
}

}  // namespace

SelectQuery randomQuery(std::mt19937& rng) {
  for (;;) {
    SelectQuery q = chance(rng, 0.2) ? nestedQuery(rng) : flatQuery(rng);
    try {
      sparql::validate(q);
      return q;
    } catch (const sparql::QueryError&) {
      // e.g. an aggregate alias clashing with a pattern variable; draw again
    }
  }
}

std::vector<std::string> closureViolations(const kb::KnowledgeBase& k) {
  std::vector<std::string> out;
  const kb::OntologySchema& schema = k.schema();
  for (const kb::Triple& t : k.triples()) {
    const kb::ObjectPropertyDecl* decl = schema.objectProperty(t.predicate);
    if (decl && t.object.isIri()) {
      const Term back = Term::iri(t.subject);
      if (decl->inverseOf && !k.triples().count({t.object.asIri(), *decl->inverseOf, back})) {
        out.push_back("C1 missing inverse of " + t.subject.str() + " " + t.predicate.str() + " " + t.object.lexical());
      }
      if (decl->symmetric && !k.triples().count({t.object.asIri(), t.predicate, back})) {
        out.push_back("C2 missing mirror of " + t.subject.str() + " " + t.predicate.str() + " " + t.object.lexical());
      }
    }
    if (t.predicate == kb::rdfType() && t.object.isIri()) {
      for (const kb::Triple& sub : k.triples()) {
        if (sub.predicate == kb::rdfsSubClassOf() && sub.subject == t.object.asIri() &&
            !k.triples().count({t.subject, kb::rdfType(), sub.object})) {
          out.push_back("C3 missing " + t.subject.str() + " a " + sub.object.lexical());
        }
      }
    }
  }
  return out;
}

std::vector<std::string> queryTokens(const std::string& text) {
  std::string body;
  for (const std::string& l : lines(text)) {
    std::string t = geoqa::text::trim(l);
    if (t.size() >= 6 && std::equal(t.begin(), t.begin() + 6, "PREFIX",
                                    [](char a, char b) { return std::toupper(static_cast<unsigned char>(a)) == b; })) {
      continue;
    }
    if (!t.empty() && t[0] == '#') continue;
    body += l + "\n";
  }
  std::vector<std::string> out;
  const std::string punct = "(){}.,;";
  for (std::size_t i = 0; i < body.size();) {
    const char c = body[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '"') {
      std::size_t j = body.find('"', i + 1);
      out.push_back(body.substr(i, j - i + 1));
      i = j + 1;
    } else if (c == '<') {
      std::size_t j = body.find('>', i + 1);
      out.push_back(body.substr(i, j - i + 1));
      i = j + 1;
    } else if (punct.find(c) != std::string::npos) {
      out.emplace_back(1, c);
      ++i;
    } else {
      std::size_t j = i;
      while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j])) &&
             punct.find(body[j]) == std::string::npos && body[j] != '"') {
        ++j;
      }
      out.push_back(body.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

}  // namespace geoqa::testing
