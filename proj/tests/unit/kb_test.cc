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


#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "geoqa/kb.h"
#include "support.h"

namespace geoqa {
namespace {

using kb::AxiomKind;
using kb::Direction;
using kb::Iri;
using kb::Term;
using testing::bundled;
using testing::readData;

const kb::KnowledgeBase& K() { return *bundled().kb; }

Iri ins(const char* l) { return kb::instanceIri(l); }
Iri cls(const char* l) { return kb::classIri(l); }

TEST(Schema, BundledClassesAndProperties) {
  kb::OntologySchema s = kb::loadSchema(readData("geo_tr.schema"));
  std::set<std::string> names;
  for (const auto& c : s.classes) names.insert(c.name.local);
  EXPECT_EQ(names, (std::set<std::string>{"Ada", "Bogaz", "Bolge", "Dag", "Deniz", "Gol", "Nehir", "Ova", "Sehir",
                                          "Ilce", "Ulke"}));
  ASSERT_EQ(s.objectProperties.size(), 3u);
  EXPECT_EQ(s.objectProperties[0].name.local, "konumlanir");
  EXPECT_EQ(s.objectProperties[1].name.local, "konumVar");
  EXPECT_EQ(s.objectProperties[2].name.local, "komsu");
  ASSERT_TRUE(s.objectProperty(ins("konumlanir"))->inverseOf);
  EXPECT_EQ(s.objectProperty(ins("konumlanir"))->inverseOf->local, "konumVar");
  EXPECT_EQ(s.objectProperty(ins("konumVar"))->inverseOf->local, "konumlanir");
  EXPECT_TRUE(s.objectProperty(ins("komsu"))->symmetric);
  ASSERT_EQ(s.subclassPairs.size(), 1u);
  EXPECT_EQ(s.subclassPairs[0], std::make_pair(cls("Ilce"), cls("Sehir")));
}

TEST(Schema, PropertyClassesAreDeclared) {
  const kb::OntologySchema& s = K().schema();
  for (const auto& p : s.objectProperties) {
    for (const auto& [a, b] : p.domainPairs) {
      EXPECT_TRUE(s.isClass(a)) << a.str();
      EXPECT_TRUE(s.isClass(b)) << b.str();
    }
  }
  for (const auto& p : s.dataProperties) {
    for (const auto& d : p.domains) EXPECT_TRUE(s.isClass(d)) << d.str();
  }
}

TEST(Schema, EmptyFileIsRejected) {
  try {
    kb::loadSchema("");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("no classes declared"), std::string::npos) << e.what();
  }
}

TEST(Schema, ErrorsCarryLineNumbers) {
  try {
    kb::loadSchema("class A\nclass B\nobjprop p domain A->Z\n");
    FAIL() << "expected an error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(kb::loadSchema("class A\nbogus line\n"), ParseError);
  EXPECT_THROW(kb::loadSchema("class A\nclass B\nobjprop p domain A->B inverse q\n"), Error);
}

TEST(Instances, IndividualRowYieldsTypeTriple) {
  kb::OntologySchema s = kb::loadSchema(readData("geo_tr.schema"));
  kb::InstanceData d = kb::loadInstances("individual\tIzmir\tSehir\tİzmir\n", s);
  ASSERT_EQ(d.individuals.size(), 1u);
  kb::KnowledgeBase k(s);
  k.addInstances(d);
  EXPECT_TRUE(k.contains({ins("Izmir"), kb::rdfType(), Term::iri(cls("Sehir"))}));
}

TEST(Instances, DecimalDataProperty) {
  kb::OntologySchema s = kb::loadSchema(readData("geo_tr.schema"));
  kb::InstanceData d =
      kb::loadInstances("individual\tEge\tBolge\tEge Bölgesi\nassert\tEge\tyuzolcumu\t79000.5\n", s);
  auto it = std::find_if(d.triples.begin(), d.triples.end(),
                         [](const kb::Triple& t) { return t.predicate == ins("yuzolcumu"); });
  ASSERT_NE(it, d.triples.end());
  ASSERT_TRUE(it->object.isDecimal());
  EXPECT_DOUBLE_EQ(it->object.asDecimal(), 79000.5);
}

TEST(Instances, EmptyFileGivesNothing) {
  kb::InstanceData d = kb::loadInstances("", K().schema());
  EXPECT_TRUE(d.individuals.empty());
  EXPECT_TRUE(d.triples.empty());
}

TEST(Instances, RejectsBadRows) {
  const kb::OntologySchema& s = K().schema();
  EXPECT_THROW(kb::loadInstances("individual\tX\tNoSuchClass\tX\n", s), Error);
  EXPECT_THROW(kb::loadInstances("individual\tX\tSehir\tX\nassert\tX\tpopulasyon\tmany\n", s), Error);
  EXPECT_THROW(kb::loadInstances("assert\tX\tnoSuchProp\t1\n", s), Error);
}

TEST(Terms, LiteralsRoundTrip) {
  for (const char* text : {"0", "-17", "85279553"}) {
    auto t = Term::parseLiteral(kb::LiteralKind::kInteger, text);
    ASSERT_TRUE(t);
    EXPECT_EQ(t->lexical(), text);
  }
  for (double v : {0.5, 129.5, 1e-3, 79000.0, 3.14159}) {
    Term t = Term::decimal(v);
    auto back = Term::parseLiteral(kb::LiteralKind::kDecimal, t.lexical());
    ASSERT_TRUE(back);
    EXPECT_EQ(back->asDecimal(), v);
  }
  EXPECT_FALSE(Term::parseLiteral(kb::LiteralKind::kInteger, "1.5"));
}

TEST(Iris, ParseAndCompare) {
  EXPECT_EQ(kb::parseIri("ins:Ankara"), ins("Ankara"));
  EXPECT_NE(kb::parseIri("ins:Ankara"), ins("ankara"));
  EXPECT_THROW(kb::parseIri("noColon"), Error);
  EXPECT_THROW(kb::parseIri("ins:"), Error);
}

TEST(Store, IndexesAgree) {
  const kb::KnowledgeBase& k = K();
  for (const kb::Triple& t : k.triples()) {
    ASSERT_TRUE(k.containsVia(kb::KnowledgeBase::Index::kPos, t));
    ASSERT_TRUE(k.containsVia(kb::KnowledgeBase::Index::kOsp, t));
  }
}

TEST(Store, MatchByEachPosition) {
  const kb::KnowledgeBase& k = K();
  auto bySubject = k.match(ins("Ankara"), std::nullopt, std::nullopt);
  for (const auto& t : bySubject) EXPECT_EQ(t.subject, ins("Ankara"));
  EXPECT_FALSE(bySubject.empty());
  auto byObject = k.match(std::nullopt, std::nullopt, Term::iri(ins("Ankara")));
  for (const auto& t : byObject) EXPECT_EQ(t.object, Term::iri(ins("Ankara")));
  auto byPred = k.match(std::nullopt, ins("komsu"), std::nullopt);
  std::size_t scan = 0;
  for (const auto& t : k.triples()) scan += t.predicate == ins("komsu");
  EXPECT_EQ(byPred.size(), scan);
  EXPECT_TRUE(k.match(ins("Atlantis"), std::nullopt, std::nullopt).empty());
}

TEST(Store, GazetteerIndividualsAreTyped) {
  const kb::KnowledgeBase& k = K();
  for (const auto& [key, iris] : k.gazetteer()) {
    for (const Iri& i : iris) {
      EXPECT_FALSE(k.match(i, kb::rdfType(), std::nullopt).empty()) << i.str();
    }
  }
}

TEST(Closure, BundledKbSatisfiesInvariants) {
  EXPECT_TRUE(K().closed());
  EXPECT_EQ(testing::closureViolations(K()), std::vector<std::string>{});
}

TEST(Closure, InverseAndSubclassExamples) {
  kb::KnowledgeBase k(kb::loadSchema(readData("geo_tr.schema")));
  k.insert({ins("Izmir"), ins("konumlanir"), Term::iri(ins("EgeBolgesi"))});
  k.insert({ins("Konak"), kb::rdfType(), Term::iri(cls("Ilce"))});
  EXPECT_FALSE(k.contains({ins("EgeBolgesi"), ins("konumVar"), Term::iri(ins("Izmir"))}));
  kb::ClosureStats st = k.applyClosure();
  EXPECT_TRUE(k.contains({ins("EgeBolgesi"), ins("konumVar"), Term::iri(ins("Izmir"))}));
  EXPECT_TRUE(k.contains({ins("Konak"), kb::rdfType(), Term::iri(cls("Sehir"))}));
  EXPECT_EQ(st.inverseAdded, 1u);
  EXPECT_EQ(st.subclassAdded, 1u);
}

TEST(Closure, Idempotent) {
  kb::KnowledgeBase once = kb::applyClosure(*bundled().kb);
  kb::KnowledgeBase twice = kb::applyClosure(once);
  EXPECT_EQ(once.triples(), twice.triples());
  EXPECT_EQ(once.triples(), K().triples());
}

TEST(Closure, RandomKbs) {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    kb::KnowledgeBase k = testing::randomKb(rng);
    k.applyClosure();
    ASSERT_EQ(testing::closureViolations(k), std::vector<std::string>{}) << "kb " << i;
    const auto before = k.triples();
    kb::ClosureStats again = k.applyClosure();
    EXPECT_EQ(again.total(), 0u);
    EXPECT_EQ(before, k.triples());
  }
}

TEST(Closure, UnclosedKbIsFlagged) {
  kb::KnowledgeBase k(kb::loadSchema(readData("geo_tr.schema")));
  k.insert({ins("Izmir"), ins("konumlanir"), Term::iri(ins("EgeBolgesi"))});
  EXPECT_FALSE(k.closed());
}

TEST(Lexicon, AxiomTypes) {
  const kb::KnowledgeBase& k = K();
  EXPECT_EQ(k.checkAxiomType("il"), AxiomKind::kClass);
  EXPECT_EQ(k.lexicon().best("il")->target, cls("Sehir"));
  EXPECT_EQ(k.checkAxiomType("şehir"), AxiomKind::kClass);
  EXPECT_EQ(k.checkAxiomType("nüfus"), AxiomKind::kDataProperty);
  EXPECT_EQ(k.lexicon().best("nüfus")->target, ins("populasyon"));
  EXPECT_EQ(k.checkAxiomType("komşu"), AxiomKind::kObjectProperty);
  EXPECT_EQ(k.checkAxiomType("zürafa"), AxiomKind::kNone);
}

TEST(Lexicon, AtMostOneEntryPerKind) {
  for (const auto& [lemma, entries] : K().lexicon().entries()) {
    std::set<AxiomKind> kinds;
    for (const auto& e : entries) EXPECT_TRUE(kinds.insert(e.kind).second) << lemma;
  }
}

TEST(Lexicon, EverySchemaItemIsReachable) {
  const kb::KnowledgeBase& k = K();
  std::set<Iri> targets;
  for (const auto& [lemma, entries] : k.lexicon().entries()) {
    for (const auto& e : entries) targets.insert(e.target);
  }
  for (const auto& c : k.schema().classes) EXPECT_TRUE(targets.count(c.name)) << c.name.str();
  for (const auto& p : k.schema().objectProperties) EXPECT_TRUE(targets.count(p.name)) << p.name.str();
  for (const auto& p : k.schema().dataProperties) EXPECT_TRUE(targets.count(p.name)) << p.name.str();
  for (const auto& i : k.individuals()) EXPECT_TRUE(targets.count(i.id)) << i.id.str();
}

TEST(Properties, AnkaraNeighbors) {
  auto m = K().findProperties(cls("Sehir"), ins("Ankara"));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].property, ins("komsu"));
  EXPECT_EQ(m[0].direction, Direction::kForward);
  EXPECT_EQ(m[0].kind, kb::PropertyKind::kObject);
}

TEST(Properties, RegionToCities) {
  auto m = K().findProperties(cls("Sehir"), ins("EgeBolgesi"));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].property, ins("konumVar"));
  EXPECT_EQ(m[0].direction, Direction::kForward);
}

TEST(Properties, NoDeclaredPairGivesNothing) {
  // No domain pair joins Ada and Deniz in either direction.
  for (const auto& p : K().schema().objectProperties) {
    for (const auto& [a, b] : p.domainPairs) {
      EXPECT_FALSE((a == cls("Ada") && b == cls("Deniz")) || (a == cls("Deniz") && b == cls("Ada")));
    }
  }
  Iri island;
  for (const auto& i : K().individuals()) {
    if (i.cls == cls("Ada")) island = i.id;
  }
  ASSERT_FALSE(island.local.empty());
  EXPECT_TRUE(K().findProperties(cls("Deniz"), island).empty());
  EXPECT_TRUE(K().findConnectingProperties(cls("Deniz"), island).empty());
}

TEST(Properties, UnknownIndividualThrows) {
  EXPECT_THROW(K().findProperties(cls("Sehir"), ins("Atlantis")), Error);
}

TEST(Individuals, MostSpecificClass) {
  EXPECT_EQ(K().entityClassOf(ins("Ankara")), cls("Sehir"));
  EXPECT_EQ(K().entityClassOf(ins("EgeBolgesi")), cls("Bolge"));
  EXPECT_EQ(K().entityClassOf(ins("Konak")), cls("Ilce"));
  EXPECT_TRUE(K().contains({ins("Konak"), kb::rdfType(), Term::iri(cls("Sehir"))}));
}

TEST(Individuals, LabelLookup) {
  std::vector<std::string> ankara{"ankara"};
  auto a = K().lookupIndividualByLabel(ankara);
  ASSERT_EQ(a.status, kb::LabelLookup::Status::kUnique);
  EXPECT_EQ(a.candidates.front(), ins("Ankara"));
  std::vector<std::string> ege{"ege", "bölge", "nüfus"};
  auto e = K().lookupIndividualByLabel(ege);
  ASSERT_TRUE(e.found());
  EXPECT_EQ(e.matchedLength, 2u);
  EXPECT_EQ(e.candidates.front(), ins("EgeBolgesi"));
  std::vector<std::string> none{"atlantis"};
  EXPECT_FALSE(K().lookupIndividualByLabel(none).found());
}

TEST(Individuals, AgreeWithTsvScan) {
  testing::TsvOracle o(readData("geo_tr.schema"), readData("geo_tr_instances.tsv"));
  for (const auto& c : K().schema().classes) {
    std::set<std::string> fromKb;
    for (const auto& t : K().match(std::nullopt, kb::rdfType(), Term::iri(c.name))) fromKb.insert(t.subject.local);
    EXPECT_EQ(fromKb, o.ofClass(c.name.local)) << c.name.str();
  }
  for (const auto& p : K().schema().objectProperties) {
    for (const auto& ind : K().individuals()) {
      std::set<std::string> fromKb;
      for (const auto& t : K().match(ind.id, p.name, std::nullopt)) fromKb.insert(t.object.asIri().local);
      EXPECT_EQ(fromKb, o.objects(ind.id.local, p.name.local)) << ind.id.str() << " " << p.name.str();
    }
  }
}

}  // namespace
}  // namespace geoqa
