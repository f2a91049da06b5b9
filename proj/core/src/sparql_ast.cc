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
#include <sstream>

#include "geoqa/sparql.h"

namespace geoqa::sparql {

std::string_view aggregateName(AggregateFn fn) {
  switch (fn) {
    case AggregateFn::kCount: return "COUNT";
    case AggregateFn::kSum: return "SUM";
    case AggregateFn::kMin: return "MIN";
    case AggregateFn::kMax: return "MAX";
  }
  return "COUNT";
}

SubQuery::SubQuery(SelectQuery q) : query_(std::make_unique<SelectQuery>(std::move(q))) {}
SubQuery::SubQuery(const SubQuery& other)
    : query_(std::make_unique<SelectQuery>(*other.query_)) {}
SubQuery& SubQuery::operator=(const SubQuery& other) {
  if (this != &other) query_ = std::make_unique<SelectQuery>(*other.query_);
  return *this;
}
SubQuery::~SubQuery() = default;

bool operator==(const SubQuery& a, const SubQuery& b) { return *a.query_ == *b.query_; }

std::size_t SelectQuery::subqueryCount() const {
  return static_cast<std::size_t>(std::count_if(group.begin(), group.end(), [](const auto& e) {
    return std::holds_alternative<SubQuery>(e);
  }));
}

const SelectQuery* SelectQuery::subquery() const {
  for (const auto& e : group) {
    if (const auto* s = std::get_if<SubQuery>(&e)) return &s->query();
  }
  return nullptr;
}

std::vector<Var> SelectQuery::boundVariables() const {
  std::vector<Var> out;
  auto add = [&](const Var& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (const auto& e : group) {
    if (const auto* tp = std::get_if<TriplePattern>(&e)) {
      if (const auto* v = std::get_if<Var>(&tp->subject)) add(*v);
      if (const auto* v = std::get_if<Var>(&tp->object)) add(*v);
    } else if (const auto* sq = std::get_if<SubQuery>(&e)) {
      for (const std::string& name : sq->query().outputVariables()) add(Var{name});
    }
  }
  return out;
}

std::vector<std::string> SelectQuery::outputVariables() const {
  std::vector<std::string> out;
  for (const Var& v : projection) out.push_back(v.name);
  if (aggregate) out.push_back(aggregate->alias.name);
  return out;
}

namespace {

bool contains(const std::vector<Var>& vars, const Var& v) {
  return std::find(vars.begin(), vars.end(), v) != vars.end();
}

void validateVar(const Var& v) {
  if (v.name.empty()) throw QueryError("empty variable name");
}

}  // namespace

void validate(const SelectQuery& q) {
  if (q.group.empty()) throw QueryError("empty group");
  if (q.projection.empty() && !q.aggregate) throw QueryError("empty projection");
  if (q.aggregate && !q.projection.empty()) {
    throw QueryError("aggregate cannot be projected together with plain variables");
  }
  if (q.subqueryCount() > 1) throw QueryError("at most one sub-select per group");

  std::size_t filters = 0;
  for (const auto& e : q.group) {
    if (const auto* tp = std::get_if<TriplePattern>(&e)) {
      if (const auto* v = std::get_if<Var>(&tp->subject)) {
        validateVar(*v);
      } else if (!std::get<kb::Term>(tp->subject).isIri()) {
        throw QueryError("literal in subject position");
      }
      if (const auto* v = std::get_if<Var>(&tp->object)) validateVar(*v);
      if (tp->predicate.local.empty()) throw QueryError("empty predicate");
    } else if (std::holds_alternative<RegexFilter>(e)) {
      ++filters;
    } else {
      validate(std::get<SubQuery>(e).query());
    }
  }
  if (filters > 1) throw QueryError("at most one FILTER per group");

  const std::vector<Var> bound = q.boundVariables();
  for (const auto& e : q.group) {
    if (const auto* f = std::get_if<RegexFilter>(&e)) {
      validateVar(f->var);
      if (f->flags != "" && f->flags != "i") {
        throw QueryError("unsupported regex flags '" + f->flags + "'");
      }
      bool inPattern = std::any_of(q.group.begin(), q.group.end(), [&](const auto& g) {
        const auto* tp = std::get_if<TriplePattern>(&g);
        return tp && ((std::holds_alternative<Var>(tp->subject) &&
                       std::get<Var>(tp->subject) == f->var) ||
                      (std::holds_alternative<Var>(tp->object) &&
                       std::get<Var>(tp->object) == f->var));
      });
      if (!inPattern) throw QueryError("filter variable ?" + f->var.name + " not in any pattern");
    }
  }
  for (const Var& v : q.projection) {
    validateVar(v);
    if (!contains(bound, v)) throw QueryError("projected variable ?" + v.name + " is unbound");
  }
  if (q.aggregate) {
    validateVar(q.aggregate->input);
    validateVar(q.aggregate->alias);
    if (!contains(bound, q.aggregate->input)) {
      throw QueryError("aggregate input ?" + q.aggregate->input.name + " is unbound");
    }
    if (contains(bound, q.aggregate->alias)) {
      throw QueryError("aggregate alias ?" + q.aggregate->alias.name + " clashes with a pattern variable");
    }
  }
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string nodeText(const Node& n) {
  if (const auto* v = std::get_if<Var>(&n)) return "?" + v->name;
  const kb::Term& t = std::get<kb::Term>(n);
  if (t.isIri()) return t.asIri().str();
  if (t.isString()) return quote(t.asString());
  std::string lex = t.lexical();
  if (t.isDecimal() && lex.find_first_of(".eE") == std::string::npos) lex += ".0";
  return lex;
}

void collectPrefixes(const SelectQuery& q, std::set<std::string>& out) {
  for (const auto& e : q.group) {
    if (const auto* tp = std::get_if<TriplePattern>(&e)) {
      out.insert(tp->predicate.prefix);
      for (const Node* n : {&tp->subject, &tp->object}) {
        if (const auto* t = std::get_if<kb::Term>(n); t && t->isIri()) out.insert(t->asIri().prefix);
      }
    } else if (const auto* sq = std::get_if<SubQuery>(&e)) {
      collectPrefixes(sq->query(), out);
    }
  }
}

void writeQuery(const SelectQuery& q, std::ostringstream& os, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  os << pad << "SELECT";
  for (const Var& v : q.projection) os << " ?" << v.name;
  if (q.aggregate) {
    os << " (" << aggregateName(q.aggregate->fn) << "(?" << q.aggregate->input.name
       << ") as ?" << q.aggregate->alias.name << ")";
  }
  os << "\n" << pad << "WHERE {\n";
  for (const auto& e : q.group) {
    if (const auto* tp = std::get_if<TriplePattern>(&e)) {
      os << inner << nodeText(tp->subject) << " " << tp->predicate.str() << " "
         << nodeText(tp->object) << " .\n";
    } else if (const auto* f = std::get_if<RegexFilter>(&e)) {
      os << inner << "FILTER(regex(str(?" << f->var.name << "), " << quote(f->pattern);
      if (!f->flags.empty()) os << ", " << quote(f->flags);
      os << "))\n";
    } else {
      os << inner << "{\n";
      writeQuery(std::get<SubQuery>(e).query(), os, depth + 2);
      os << inner << "}\n";
    }
  }
  os << pad << "}\n";
}

}  // namespace

std::string serializeBody(const SelectQuery& q) {
  validate(q);
  std::ostringstream os;
  writeQuery(q, os, 0);
  return os.str();
}

std::string serialize(const SelectQuery& q, const kb::PrefixMap& prefixes) {
  validate(q);
  std::set<std::string> used;
  collectPrefixes(q, used);
  std::ostringstream os;
  for (const std::string& p : used) {
    auto it = prefixes.find(p);
    if (it == prefixes.end()) throw QueryError("unregistered prefix '" + p + "'");
    os << "PREFIX " << p << ": <" << it->second << ">\n";
  }
  writeQuery(q, os, 0);
  return os.str();
}

std::vector<kb::Term> SolutionSet::column(const std::string& var) const {
  std::vector<kb::Term> out;
  for (const Solution& row : rows) {
    auto it = row.find(var);
    if (it != row.end()) out.push_back(it->second);
  }
  return out;
}

}  // namespace geoqa::sparql
