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

#ifndef GEOQA_SPARQL_H_
#define GEOQA_SPARQL_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geoqa/error.h"
#include "geoqa/kb.h"

// The SELECT subset used by the generated queries: basic graph patterns,
// one regex FILTER per group, one aggregate per SELECT and at most one
// nested sub-select.
namespace geoqa::sparql {

struct Var {
  std::string name;  // without the leading '?'

  auto operator<=>(const Var&) const = default;
};

// Subject or object position: a variable, or a constant term. Subjects
// must be IRIs; objects may also be literals.
using Node = std::variant<Var, kb::Term>;

struct TriplePattern {
  Node subject;
  kb::Iri predicate;
  Node object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

struct RegexFilter {
  Var var;
  std::string pattern;
  std::string flags;  // "" or "i"

  friend bool operator==(const RegexFilter&, const RegexFilter&) = default;
};

enum class AggregateFn { kCount, kSum, kMin, kMax };

std::string_view aggregateName(AggregateFn fn);

struct Aggregate {
  AggregateFn fn = AggregateFn::kCount;
  Var input;
  Var alias;

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct SelectQuery;

// Owning, deep-copying handle for a nested SELECT.
class SubQuery {
 public:
  explicit SubQuery(SelectQuery q);
  SubQuery(const SubQuery& other);
  SubQuery& operator=(const SubQuery& other);
  SubQuery(SubQuery&&) noexcept = default;
  SubQuery& operator=(SubQuery&&) noexcept = default;
  ~SubQuery();

  const SelectQuery& query() const { return *query_; }
  SelectQuery& query() { return *query_; }

  friend bool operator==(const SubQuery& a, const SubQuery& b);

 private:
  std::unique_ptr<SelectQuery> query_;
};

using GroupElement = std::variant<TriplePattern, RegexFilter, SubQuery>;

struct SelectQuery {
  std::vector<Var> projection;
  std::optional<Aggregate> aggregate;
  std::vector<GroupElement> group;

  friend bool operator==(const SelectQuery&, const SelectQuery&) = default;

  std::size_t subqueryCount() const;
  const SelectQuery* subquery() const;
  // Variables bound by patterns or by the sub-select projection.
  std::vector<Var> boundVariables() const;
  // Projected output column names, aggregate alias last.
  std::vector<std::string> outputVariables() const;
};

class QueryError : public Error {
 public:
  explicit QueryError(const std::string& message) : Error("sparql", message) {}
};

class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& message) : Error("evaluate", message) {}
};

// Throws QueryError when the query violates the subset's invariants.
void validate(const SelectQuery& q);

// PREFIX headers for every prefix used, then the query with two-space
// indentation and " ." after each triple pattern.
std::string serialize(const SelectQuery& q, const kb::PrefixMap& prefixes);

// Query body only, without PREFIX headers.
std::string serializeBody(const SelectQuery& q);

// Parses the subset grammar. Errors carry a byte offset; constructs
// outside the subset fail with "unsupported feature: <NAME>".
SelectQuery parse(std::string_view text);

using Solution = std::map<std::string, kb::Term>;

struct SolutionSet {
  std::vector<std::string> variables;
  std::vector<Solution> rows;  // bag semantics
  std::vector<std::string> diagnostics;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
  // Values of one variable across all rows, in row order.
  std::vector<kb::Term> column(const std::string& var) const;
};

SolutionSet evaluate(const SelectQuery& q, const kb::KnowledgeBase& kb);

// String form used by regex filters: expanded IRI or literal text.
std::string filterString(const kb::Term& term, const kb::KnowledgeBase& kb);

// Substring match, optional '^'/'$' anchors; flag "i" folds case with
// Turkish rules and ASCII-folds diacritics on both sides.
bool regexMatches(std::string_view value, std::string_view pattern, std::string_view flags);

}  // namespace geoqa::sparql

#endif  // GEOQA_SPARQL_H_
