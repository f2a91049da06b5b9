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

#ifndef GEOQA_KB_H_
#define GEOQA_KB_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

// Embedded GEO-TR knowledge base: schema, triple store with three index
// orderings, entailment closure, and the lexical lookups used by query
// formulation.
namespace geoqa::kb {

inline constexpr std::string_view kClassPrefix = "geo_turkce";
inline constexpr std::string_view kInstancePrefix = "ins";

struct Iri {
  std::string prefix;
  std::string local;

  auto operator<=>(const Iri&) const = default;

  // "prefix:local".
  std::string str() const { return prefix + ":" + local; }
};

Iri rdfType();
Iri rdfsSubClassOf();
Iri classIri(std::string_view local);
Iri instanceIri(std::string_view local);

// Parses "prefix:local". Throws geoqa::Error on malformed input.
Iri parseIri(std::string_view prefixed);

enum class LiteralKind { kInteger, kDecimal, kString };

std::string_view literalKindName(LiteralKind kind);

// An RDF term: an IRI or a string/integer/decimal literal.
class Term {
 public:
  using Value = std::variant<Iri, std::string, std::int64_t, double>;

  Term() = default;
  static Term iri(Iri value) { return Term(Value(std::move(value))); }
  static Term string(std::string value) { return Term(Value(std::move(value))); }
  static Term integer(std::int64_t value) { return Term(Value(value)); }
  static Term decimal(double value) { return Term(Value(value)); }

  // Parses literal text under a declared range. Returns nullopt when the
  // text is not a valid literal of that kind.
  static std::optional<Term> parseLiteral(LiteralKind kind, std::string_view text);

  bool isIri() const { return std::holds_alternative<Iri>(value_); }
  bool isLiteral() const { return !isIri(); }
  bool isString() const { return std::holds_alternative<std::string>(value_); }
  bool isInteger() const { return std::holds_alternative<std::int64_t>(value_); }
  bool isDecimal() const { return std::holds_alternative<double>(value_); }
  bool isNumeric() const { return isInteger() || isDecimal(); }

  const Iri& asIri() const { return std::get<Iri>(value_); }
  const std::string& asString() const { return std::get<std::string>(value_); }
  std::int64_t asInteger() const { return std::get<std::int64_t>(value_); }
  double asDecimal() const { return std::get<double>(value_); }
  double numericValue() const;

  std::optional<LiteralKind> literalKind() const;

  // Lexical form: "prefix:local" for IRIs, the literal text otherwise.
  // Decimals use the shortest representation that round-trips.
  std::string lexical() const;

  const Value& value() const { return value_; }

  friend bool operator==(const Term&, const Term&) = default;
  friend std::partial_ordering operator<=>(const Term& a, const Term& b) {
    return a.value_ <=> b.value_;
  }

 private:
  explicit Term(Value v) : value_(std::move(v)) {}
  Value value_;
};

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::partial_ordering operator<=>(const Triple&, const Triple&) = default;
};

enum class AxiomKind { kNone, kClass, kDataProperty, kObjectProperty, kIndividual };

std::string_view axiomKindName(AxiomKind kind);
std::optional<AxiomKind> parseAxiomKind(std::string_view name);

struct ClassDecl {
  Iri name;
};

struct ObjectPropertyDecl {
  Iri name;
  std::vector<std::pair<Iri, Iri>> domainPairs;  // (subject class, object class)
  bool symmetric = false;
  std::optional<Iri> inverseOf;
};

struct DataPropertyDecl {
  Iri name;
  std::vector<Iri> domains;
  LiteralKind range = LiteralKind::kString;
};

struct AliasDecl {
  std::string lemma;
  AxiomKind kind = AxiomKind::kNone;
  Iri target;
};

class OntologySchema {
 public:
  std::vector<ClassDecl> classes;
  std::vector<std::pair<Iri, Iri>> subclassPairs;  // (child, parent)
  std::vector<ObjectPropertyDecl> objectProperties;
  std::vector<DataPropertyDecl> dataProperties;
  std::vector<AliasDecl> aliases;

  bool isClass(const Iri& iri) const;
  const ObjectPropertyDecl* objectProperty(const Iri& iri) const;
  const DataPropertyDecl* dataProperty(const Iri& iri) const;
  // Class itself followed by its transitive superclasses.
  std::vector<Iri> selfAndSuperclasses(const Iri& cls) const;
  bool isSubclassOrSelf(const Iri& child, const Iri& parent) const;
};

// Parses the line-oriented schema format:
//   class <Name>
//   subclass <Child> <Parent>
//   objprop <Name> domain <C1>-><C2>[,...] [symmetric] [inverse <Other>]
//   dataprop <Name> domains <C1>,<C2>,... range <int|decimal|string>
//   alias <lemma> <Class|DataProperty|ObjectProperty> <Name>
// '#' starts a comment. Throws ParseError carrying the 1-based line.
OntologySchema loadSchema(std::string_view schemaText);

struct IndividualRecord {
  Iri id;
  Iri cls;
  std::string label;
};

struct InstanceData {
  std::vector<IndividualRecord> individuals;
  std::vector<Triple> triples;
};

// Parses the instance TSV:
//   individual<TAB>ID<TAB>Class<TAB>Label
//   assert<TAB>SubjectID<TAB>Property<TAB>Value-or-ObjectID
InstanceData loadInstances(std::string_view tsvText, const OntologySchema& schema);

struct LexEntry {
  AxiomKind kind = AxiomKind::kNone;
  Iri target;

  friend bool operator==(const LexEntry&, const LexEntry&) = default;
};

// Turkish lemma -> schema item. At most one entry per axiom kind per lemma.
class Lexicalization {
 public:
  // Returns false (and leaves the table unchanged) when the lemma already
  // has an entry of that kind pointing elsewhere.
  bool add(std::string_view lemma, AxiomKind kind, const Iri& target);

  // All entries for the lemma ordered Class > DataProperty >
  // ObjectProperty > Individual.
  std::vector<LexEntry> matches(std::string_view lemma) const;
  std::optional<LexEntry> best(std::string_view lemma) const;

  bool contains(std::string_view lemma) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::vector<LexEntry>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<LexEntry>> entries_;
};

enum class Direction { kForward, kReverse };
enum class PropertyKind { kObject, kData };

// A property linking an entity to a target class. Forward: the entity is
// the subject of the property (entity P target). Reverse: target P entity.
struct PropertyMatch {
  Iri property;
  Direction direction = Direction::kForward;
  PropertyKind kind = PropertyKind::kObject;

  friend bool operator==(const PropertyMatch&, const PropertyMatch&) = default;
};

struct LabelLookup {
  enum class Status { kNone, kUnique, kAmbiguous };
  Status status = Status::kNone;
  std::size_t matchedLength = 0;  // number of lemmas consumed
  std::vector<Iri> candidates;

  bool found() const { return status != Status::kNone; }
};

struct ClosureStats {
  std::size_t inverseAdded = 0;
  std::size_t symmetricAdded = 0;
  std::size_t subclassAdded = 0;
  std::size_t rounds = 0;

  std::size_t total() const { return inverseAdded + symmetricAdded + subclassAdded; }
};

using PrefixMap = std::map<std::string, std::string>;

PrefixMap defaultPrefixMap();

// Turns a label ("Ege Bölgesi") into its gazetteer key (["ege", "bölge"]).
using LabelKeyFn = std::function<std::vector<std::string>(std::string_view)>;

// Splits on whitespace and applies Turkish case folding.
std::vector<std::string> foldedLabelKey(std::string_view label);

// Single writer while loading; read-only methods are safe to call
// concurrently once loading and closure are done.
class KnowledgeBase {
 public:
  enum class Index { kSpo, kPos, kOsp };

  explicit KnowledgeBase(OntologySchema schema,
                         PrefixMap prefixes = defaultPrefixMap());

  // Registers individuals (rdf:type triple, lexicon entry, gazetteer
  // label) and inserts all assertion triples.
  void addInstances(const InstanceData& data);

  // Validates the triple against the schema and inserts it into all three
  // indexes. Returns false when already present.
  bool insert(const Triple& triple);

  bool contains(const Triple& triple) const;
  bool containsVia(Index index, const Triple& triple) const;

  // Pattern lookup; unset positions are wildcards. Results in SPO order
  // when the subject is bound, index order otherwise.
  std::vector<Triple> match(const std::optional<Iri>& subject,
                            const std::optional<Iri>& predicate,
                            const std::optional<Term>& object) const;

  std::size_t size() const { return spo_.size(); }
  const std::set<Triple>& triples() const { return spo_; }

  // Materializes inverse, symmetric and subclass entailments to a fixpoint.
  ClosureStats applyClosure();
  bool closed() const { return closed_; }

  AxiomKind checkAxiomType(std::string_view lemma) const;
  std::vector<LexEntry> checkAxiomTypeAll(std::string_view lemma) const;

  // Properties connecting the entity's class (or a superclass) to the
  // target class, in declaration order. Forward matches are returned when
  // any exist; otherwise reverse matches. Throws for unknown individuals.
  std::vector<PropertyMatch> findProperties(const Iri& targetClass,
                                            const Iri& individual) const;
  // Both directions, forward matches first.
  std::vector<PropertyMatch> findConnectingProperties(const Iri& targetClass,
                                                      const Iri& individual) const;

  // Most specific declared class of the individual.
  Iri entityClassOf(const Iri& individual) const;
  bool isIndividual(const Iri& iri) const;

  // Longest-prefix match of the lemma sequence against gazetteer keys.
  LabelLookup lookupIndividualByLabel(std::span<const std::string> lemmas) const;
  // Rebuilds gazetteer keys and individual lexicon entries with `keyFn`.
  void rekeyLabels(const LabelKeyFn& keyFn);

  const std::vector<IndividualRecord>& individuals() const { return individuals_; }
  const OntologySchema& schema() const { return schema_; }
  const Lexicalization& lexicon() const { return lexicon_; }
  const PrefixMap& prefixes() const { return prefixes_; }
  const std::map<std::vector<std::string>, std::vector<Iri>>& gazetteer() const {
    return gazetteer_;
  }

  // Full IRI string (base + local). Throws for unregistered prefixes.
  std::string expand(const Iri& iri) const;

 private:
  using PosKey = std::tuple<Iri, Term, Iri>;
  using OspKey = std::tuple<Term, Iri, Iri>;

  void validate(const Triple& triple) const;
  void rebuildLexicon();

  OntologySchema schema_;
  PrefixMap prefixes_;
  std::set<Triple> spo_;
  std::set<PosKey> pos_;
  std::set<OspKey> osp_;
  std::vector<IndividualRecord> individuals_;
  std::map<Iri, std::size_t> individualIndex_;
  Lexicalization lexicon_;
  std::map<std::vector<std::string>, std::vector<Iri>> gazetteer_;
  std::size_t maxLabelLength_ = 0;
  bool closed_ = false;
};

// Value-returning form of KnowledgeBase::applyClosure.
KnowledgeBase applyClosure(KnowledgeBase kb);

}  // namespace geoqa::kb

#endif  // GEOQA_KB_H_
