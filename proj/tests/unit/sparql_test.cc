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

#include <random>

#include "geoqa/sparql.h"
#include "support.h"

namespace geoqa {
namespace {

using kb::Term;
using sparql::AggregateFn;
using sparql::parse;
using testing::bundled;
using testing::readData;

const kb::KnowledgeBase& K() { return *bundled().kb; }

std::set<std::string> column(const sparql::SolutionSet& s, const std::string& var) {
  std::set<std::string> out;
  for (const Term& t : s.column(var)) out.insert(t.isIri() ? t.asIri().local : t.lexical());
  return out;
}

constexpr const char* kEgeCities = R"(
SELECT ?x WHERE {
  ?x rdf:type geo_turkce:Sehir .
  ?y rdf:type geo_turkce:Bolge .
  ?y ins:konumVar ?x .
  FILTER(regex(str(?y), "Ege", "i"))
})";

TEST(Parse, GoldenFilesRoundTrip) {
  for (const char* f : {"fixtures/golden/sentence1.rq", "fixtures/golden/sentence2.rq",
                        "fixtures/golden/sentence3.rq"}) {
    sparql::SelectQuery q = parse(readData(f));
    sparql::validate(q);
    std::string text = sparql::serialize(q, K().prefixes());
    EXPECT_EQ(parse(text), q) << f;
    EXPECT_EQ(sparql::serialize(parse(text), K().prefixes()), text) << f;
  }
}

TEST(Parse, RandomQueriesRoundTrip) {
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    sparql::SelectQuery q = testing::randomQuery(rng);
    std::string text = sparql::serialize(q, kb::defaultPrefixMap());
    ASSERT_EQ(parse(text), q) << text;
  }
}

TEST(Parse, PrefixesOnlyForUsedNamespaces) {
  std::string text = sparql::serialize(parse("SELECT ?x WHERE { ?x rdf:type geo_turkce:Sehir . }"), K().prefixes());
  EXPECT_NE(text.find("PREFIX rdf:"), std::string::npos);
  EXPECT_NE(text.find("PREFIX geo_turkce:"), std::string::npos);
  EXPECT_EQ(text.find("PREFIX ins:"), std::string::npos);
}

TEST(Parse, EmptyGroupIsRejected) {
  try {
    sparql::validate(parse("SELECT ?x WHERE { }"));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.stage(), "sparql");
  }
}

TEST(Parse, OptionalIsUnsupported) {
  try {
    parse("SELECT ?x WHERE { OPTIONAL { ?x rdf:type geo_turkce:Sehir } }");
    FAIL() << "expected an error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported feature: OPTIONAL"), std::string::npos) << e.what();
  }
}

TEST(Parse, SyntaxErrorsCarryOffsets) {
  try {
    parse("SELECT ?x WHERE { ?x rdf:type }");
    FAIL() << "expected an error";
  } catch (const ParseError& e) {
    EXPECT_GT(e.position(), 0u);
  }
  EXPECT_THROW(parse("SELECT ?x WHERE { ?x rdf:type geo_turkce:Sehir . "), ParseError);
  EXPECT_THROW(parse("SELECT WHERE { ?x rdf:type geo_turkce:Sehir }"), ParseError);
}

void expectSparqlError(const std::string& text, const std::string& fragment) {
  try {
    sparql::validate(parse(text));
    FAIL() << "expected an error for " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.stage(), "sparql");
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(Validate, ProjectionMustBeBound) {
  expectSparqlError("SELECT ?z WHERE { ?x rdf:type geo_turkce:Sehir . }", "?z");
}

TEST(Validate, FilterVariableMustBeBound) {
  expectSparqlError("SELECT ?x WHERE { ?x rdf:type geo_turkce:Sehir . FILTER(regex(str(?q), \"a\")) }", "?q");
}

TEST(Validate, BuiltQueriesAreChecked) {
  sparql::SelectQuery q;
  q.projection.push_back({"x"});
  EXPECT_THROW(sparql::validate(q), sparql::QueryError);
  q.group.push_back(sparql::TriplePattern{sparql::Var{"x"}, kb::rdfType(), Term::iri(kb::classIri("Sehir"))});
  EXPECT_NO_THROW(sparql::validate(q));
  q.projection.push_back({"w"});
  EXPECT_THROW(sparql::validate(q), sparql::QueryError);
}

TEST(Evaluate, EgeCitiesMatchInstanceScan) {
  testing::TsvOracle o(readData("geo_tr.schema"), readData("geo_tr_instances.tsv"));
  std::set<std::string> expected;
  for (const std::string& c : o.ofClass("Sehir")) {
    if (o.objects(c, "konumlanir").count("EgeBolgesi")) expected.insert(c);
  }
  ASSERT_FALSE(expected.empty());
  sparql::SolutionSet s = sparql::evaluate(parse(kEgeCities), K());
  EXPECT_EQ(column(s, "x"), expected);
}

TEST(Evaluate, CountOfEgeCities) {
  testing::TsvOracle o(readData("geo_tr.schema"), readData("geo_tr_instances.tsv"));
  std::size_t n = 0;
  for (const std::string& c : o.ofClass("Sehir")) n += o.objects(c, "konumlanir").count("EgeBolgesi");
  sparql::SolutionSet s = sparql::evaluate(parse(R"(
SELECT (COUNT(?x) AS ?n) WHERE {
  ?x rdf:type geo_turkce:Sehir .
  ?y rdf:type geo_turkce:Bolge .
  ?y ins:konumVar ?x .
  FILTER(regex(str(?y), "Ege", "i"))
})"),
                                             K());
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.rows[0].at("n"), Term::integer(static_cast<std::int64_t>(n)));
}

TEST(Evaluate, DeepestSea) {
  testing::TsvOracle o(readData("geo_tr.schema"), readData("geo_tr_instances.tsv"));
  std::string best;
  long bestDepth = -1;
  for (const std::string& d : o.ofClass("Deniz")) {
    if (!o.objects(d, "konumlanir").count("Turkiye")) continue;
    for (const std::string& v : o.values(d, "derinlik")) {
      if (std::stol(v) > bestDepth) {
        bestDepth = std::stol(v);
        best = d;
      }
    }
  }
  ASSERT_FALSE(best.empty());
  sparql::SolutionSet s = sparql::evaluate(parse(R"(
SELECT ?x WHERE {
  ?x rdf:type geo_turkce:Deniz .
  ?y rdf:type geo_turkce:Ulke .
  ?x ins:konumlanir ?y .
  ?x ins:derinlik ?d .
  FILTER(regex(str(?y), "Türkiye", "i"))
  {
    SELECT (MAX(?d2) AS ?d) WHERE {
      ?x2 rdf:type geo_turkce:Deniz .
      ?y2 rdf:type geo_turkce:Ulke .
      ?x2 ins:konumlanir ?y2 .
      ?x2 ins:derinlik ?d2 .
      FILTER(regex(str(?y2), "Türkiye", "i"))
    }
  }
})"),
                                             K());
  EXPECT_EQ(column(s, "x"), std::set<std::string>{best});
}

TEST(Evaluate, MinAndMaxOfSingleValue) {
  for (const char* fn : {"MIN", "MAX"}) {
    std::string q = std::string("SELECT (") + fn +
                    "(?p) AS ?m) WHERE { ?x rdf:type geo_turkce:Ulke . ?x ins:populasyon ?p . "
                    "FILTER(regex(str(?x), \"Turkiye\")) }";
    sparql::SolutionSet s = sparql::evaluate(parse(q), K());
    testing::TsvOracle o(readData("geo_tr.schema"), readData("geo_tr_instances.tsv"));
    ASSERT_EQ(s.size(), 1u) << fn;
    EXPECT_EQ(s.rows[0].at("m").lexical(), o.values("Turkiye", "populasyon").at(0)) << fn;
  }
}

TEST(Evaluate, EmptyKbGivesNoRows) {
  kb::KnowledgeBase empty(kb::loadSchema(readData("geo_tr.schema")));
  EXPECT_TRUE(sparql::evaluate(parse(kEgeCities), empty).empty());
  sparql::SolutionSet c = sparql::evaluate(
      parse("SELECT (COUNT(?x) AS ?n) WHERE { ?x rdf:type geo_turkce:Sehir . }"), empty);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.rows[0].at("n"), Term::integer(0));
  EXPECT_TRUE(
      sparql::evaluate(parse("SELECT (MAX(?p) AS ?m) WHERE { ?x ins:populasyon ?p . }"), empty).empty());
}

TEST(Evaluate, SumMatchesInstanceValues) {
  testing::TsvOracle o(readData("geo_tr.schema"), readData("geo_tr_instances.tsv"));
  long total = 0;
  for (const std::string& c : o.ofClass("Sehir")) {
    if (!o.objects(c, "konumlanir").count("EgeBolgesi")) continue;
    for (const std::string& v : o.values(c, "populasyon")) total += std::stol(v);
  }
  sparql::SolutionSet s = sparql::evaluate(parse(R"(
SELECT (SUM(?p) AS ?t) WHERE {
  ?x rdf:type geo_turkce:Sehir .
  ?x ins:konumlanir ins:EgeBolgesi .
  ?x ins:populasyon ?p .
})"),
                                             K());
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.rows[0].at("t"), Term::integer(total));
}

TEST(Evaluate, AgreesWithOracleOnRandomKbs) {
  std::mt19937 rng(5);
  for (int i = 0; i < 40; ++i) {
    kb::KnowledgeBase k = testing::randomKb(rng);
    for (int j = 0; j < 5; ++j) {
      sparql::SelectQuery q = testing::randomQuery(rng);
      auto got = testing::canonicalRows(sparql::evaluate(q, k).rows);
      auto want = testing::canonicalRows(testing::oracleEvaluate(q, k));
      ASSERT_EQ(got, want) << sparql::serializeBody(q);
    }
  }
}

TEST(Regex, FoldingAndAnchors) {
  EXPECT_TRUE(sparql::regexMatches("EgeBolgesi", "ege", "i"));
  EXPECT_FALSE(sparql::regexMatches("EgeBolgesi", "ege", ""));
  EXPECT_TRUE(sparql::regexMatches("Turkiye", "Türkiye", "i"));
  EXPECT_TRUE(sparql::regexMatches("Izmir", "İzmir", "i"));
  EXPECT_TRUE(sparql::regexMatches("Ankara", "^Ank", ""));
  EXPECT_FALSE(sparql::regexMatches("Ankara", "^kara", ""));
  EXPECT_TRUE(sparql::regexMatches("Ankara", "kara$", ""));
}

TEST(Regex, FilterStringUsesExpandedIri) {
  std::string s = sparql::filterString(Term::iri(kb::instanceIri("Ankara")), K());
  EXPECT_EQ(s, K().expand(kb::instanceIri("Ankara")));
  EXPECT_EQ(sparql::filterString(Term::integer(42), K()), "42");
}

}  // namespace
}  // namespace geoqa
