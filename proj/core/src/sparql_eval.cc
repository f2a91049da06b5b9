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

#include "geoqa/sparql.h"
#include "geoqa/text.h"

namespace geoqa::sparql {

std::string filterString(const kb::Term& term, const kb::KnowledgeBase& kb) {
  if (term.isIri()) return kb.expand(term.asIri());
  return term.lexical();
}

bool regexMatches(std::string_view value, std::string_view pattern, std::string_view flags) {
  if (flags != "" && flags != "i") {
    throw EvaluationError("unsupported regex flags '" + std::string(flags) + "'");
  }
  bool anchorStart = !pattern.empty() && pattern.front() == '^';
  if (anchorStart) pattern.remove_prefix(1);
  bool anchorEnd = !pattern.empty() && pattern.back() == '$';
  if (anchorEnd) pattern.remove_suffix(1);

  std::string v(value);
  std::string p(pattern);
  if (flags == "i") {
    v = text::searchFold(v);
    p = text::searchFold(p);
  }
  if (anchorStart && anchorEnd) return v == p;
  if (anchorStart) return text::startsWith(v, p);
  if (anchorEnd) return text::endsWith(v, p);
  return v.find(p) != std::string::npos;
}

namespace {

std::optional<kb::Term> lookup(const Solution& s, const Node& n) {
  if (const auto* v = std::get_if<Var>(&n)) {
    auto it = s.find(v->name);
    if (it == s.end()) return std::nullopt;
    return it->second;
  }
  return std::get<kb::Term>(n);
}

// Binds `n` to `value` in `s`; false on conflict with an existing binding.
bool bindNode(Solution& s, const Node& n, const kb::Term& value) {
  const auto* v = std::get_if<Var>(&n);
  if (!v) return true;
  auto [it, inserted] = s.emplace(v->name, value);
  return inserted || it->second == value;
}

std::vector<Solution> joinPattern(const std::vector<Solution>& in, const TriplePattern& tp,
                                  const kb::KnowledgeBase& kb) {
  std::vector<Solution> out;
  for (const Solution& s : in) {
    std::optional<kb::Term> subj = lookup(s, tp.subject);
    std::optional<kb::Term> obj = lookup(s, tp.object);
    if (subj && !subj->isIri()) continue;
    std::optional<kb::Iri> subjIri;
    if (subj) subjIri = subj->asIri();
    for (const kb::Triple& t : kb.match(subjIri, tp.predicate, obj)) {
      Solution ext = s;
      if (bindNode(ext, tp.subject, kb::Term::iri(t.subject)) && bindNode(ext, tp.object, t.object)) {
        out.push_back(std::move(ext));
      }
    }
  }
  return out;
}

std::vector<Solution> joinRows(const std::vector<Solution>& left, const std::vector<Solution>& right) {
  std::vector<Solution> out;
  for (const Solution& l : left) {
    for (const Solution& r : right) {
      Solution merged = l;
      bool ok = true;
      for (const auto& [k, v] : r) {
        auto [it, inserted] = merged.emplace(k, v);
        if (!inserted && !(it->second == v)) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(std::move(merged));
    }
  }
  return out;
}

kb::Term sumOf(const std::vector<kb::Term>& values) {
  bool anyDecimal = false;
  for (const kb::Term& t : values) {
    if (!t.isNumeric()) throw EvaluationError("SUM over non-numeric value '" + t.lexical() + "'");
    anyDecimal = anyDecimal || t.isDecimal();
  }
  if (anyDecimal) {
    double total = 0;
    for (const kb::Term& t : values) total += t.numericValue();
    return kb::Term::decimal(total);
  }
  std::int64_t total = 0;
  for (const kb::Term& t : values) {
    if (__builtin_add_overflow(total, t.asInteger(), &total)) {
      throw EvaluationError("integer overflow in SUM");
    }
  }
  return kb::Term::integer(total);
}

std::optional<kb::Term> extremeOf(const std::vector<kb::Term>& values, bool wantMax) {
  if (values.empty()) return std::nullopt;
  const bool numeric = values.front().isNumeric();
  for (const kb::Term& t : values) {
    if (t.isNumeric() != numeric || (!numeric && t.isIri() != values.front().isIri())) {
      throw EvaluationError(std::string(wantMax ? "MAX" : "MIN") + " over mixed value kinds");
    }
  }
  const kb::Term* best = &values.front();
  for (const kb::Term& t : values) {
    bool better;
    if (numeric) {
      better = wantMax ? t.numericValue() > best->numericValue()
                       : t.numericValue() < best->numericValue();
    } else {
      better = wantMax ? t.lexical() > best->lexical() : t.lexical() < best->lexical();
    }
    if (better) best = &t;
  }
  return *best;
}

SolutionSet evaluateQuery(const SelectQuery& q, const kb::KnowledgeBase& kb) {
  SolutionSet result;
  result.variables = q.outputVariables();
  if (!kb.closed()) {
    result.diagnostics.push_back("knowledge base is not closed; entailed answers may be missing");
  }

  std::vector<Solution> rows{Solution{}};
  for (const auto& e : q.group) {
    if (const auto* sq = std::get_if<SubQuery>(&e)) {
      SolutionSet inner = evaluateQuery(sq->query(), kb);
      rows = joinRows(rows, inner.rows);
    }
  }
  for (const auto& e : q.group) {
    if (const auto* tp = std::get_if<TriplePattern>(&e)) rows = joinPattern(rows, *tp, kb);
  }
  for (const auto& e : q.group) {
    if (const auto* f = std::get_if<RegexFilter>(&e)) {
      std::vector<Solution> kept;
      for (Solution& s : rows) {
        auto it = s.find(f->var.name);
        if (it != s.end() && regexMatches(filterString(it->second, kb), f->pattern, f->flags)) {
          kept.push_back(std::move(s));
        }
      }
      rows = std::move(kept);
    }
  }

  if (q.aggregate) {
    const Aggregate& agg = *q.aggregate;
    std::vector<kb::Term> values;
    for (const Solution& s : rows) {
      auto it = s.find(agg.input.name);
      if (it != s.end()) values.push_back(it->second);
    }
    std::optional<kb::Term> value;
    switch (agg.fn) {
      case AggregateFn::kCount:
        value = kb::Term::integer(static_cast<std::int64_t>(values.size()));
        break;
      case AggregateFn::kSum:
        value = sumOf(values);
        break;
      case AggregateFn::kMin:
        value = extremeOf(values, false);
        break;
      case AggregateFn::kMax:
        value = extremeOf(values, true);
        break;
    }
    if (value) result.rows.push_back(Solution{{agg.alias.name, *value}});
    return result;
  }

  for (const Solution& s : rows) {
    Solution projected;
    for (const Var& v : q.projection) {
      auto it = s.find(v.name);
      if (it != s.end()) projected.emplace(v.name, it->second);
    }
    result.rows.push_back(std::move(projected));
  }
  return result;
}

}  // namespace

SolutionSet evaluate(const SelectQuery& q, const kb::KnowledgeBase& kb) {
  try {
    validate(q);
  } catch (const QueryError& e) {
    throw EvaluationError(std::string("invalid query: ") + e.what());
  }
  return evaluateQuery(q, kb);
}

}  // namespace geoqa::sparql
