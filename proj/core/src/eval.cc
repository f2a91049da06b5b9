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


#include "geoqa/eval.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace geoqa::eval {

namespace {

using formulation::FunctionName;
using formulation::QueryFrame;
using kb::AxiomKind;
using kb::Iri;
using nlp::Pos;

std::vector<std::string> sortedUnique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

bool GoldRecord::hasTag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

std::vector<GoldRecord> loadSuite(std::string_view jsonl) {
  std::vector<GoldRecord> out;
  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++lineNo;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError("suite", "malformed JSON", lineNo);
    GoldRecord r;
    try {
      r.question = j.at("question").get<std::string>();
      r.gold = j.at("gold").get<std::vector<std::string>>();
      if (j.contains("goldQuery") && !j["goldQuery"].is_null()) {
        r.goldQuery = j["goldQuery"].get<std::string>();
      }
      if (j.contains("tags")) r.tags = j["tags"].get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("suite", std::string("bad record: ") + e.what(), lineNo);
    }
    if (r.question.empty()) throw ParseError("suite", "empty question", lineNo);
    if (r.gold.empty() && !r.unanswerable()) {
      throw ParseError("suite", "empty gold set without the unanswerable tag", lineNo);
    }
    if (!r.gold.empty() && r.unanswerable()) {
      throw ParseError("suite", "unanswerable record with gold answers", lineNo);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<GoldRecord> loadSuiteFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("suite", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return loadSuite(ss.str());
}

std::string canonicalAnswer(std::string_view text) {
  double v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) return std::string(text);
  if (v == std::trunc(v) && std::fabs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  return kb::Term::decimal(v).lexical();
}

std::vector<std::string> answerSet(const sparql::SolutionSet& solutions) {
  std::vector<std::string> out;
  if (solutions.variables.empty()) return out;
  for (const kb::Term& t : solutions.column(solutions.variables.front())) {
    out.push_back(canonicalAnswer(t.lexical()));
  }
  return sortedUnique(std::move(out));
}

Metrics score(const std::vector<std::string>& returned, const std::vector<std::string>& gold,
              bool unanswerable) {
  std::set<std::string> r, g;
  for (const std::string& s : returned) r.insert(canonicalAnswer(s));
  for (const std::string& s : gold) g.insert(canonicalAnswer(s));
  Metrics m;
  if (unanswerable || g.empty()) {
    const double v = r.empty() ? 1.0 : 0.0;
    return {v, v, v};
  }
  std::size_t hit = 0;
  for (const std::string& s : r) hit += g.count(s);
  m.precision = r.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(r.size());
  m.recall = static_cast<double>(hit) / static_cast<double>(g.size());
  m.f = m.precision + m.recall == 0 ? 0.0 : 2 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

Metrics macroAverage(const std::vector<QuestionResult>& rows) {
  Metrics m;
  if (rows.empty()) return m;
  for (const QuestionResult& r : rows) {
    m.precision += r.metrics.precision;
    m.recall += r.metrics.recall;
    m.f += r.metrics.f;
  }
  const double n = static_cast<double>(rows.size());
  m.precision /= n;
  m.recall /= n;
  m.f /= n;
  return m;
}

// ---------------------------------------------------------------------------
// Ontology-only baseline.

namespace {

struct LemmaHit {
  int token;  // 1-based
  kb::LexEntry entry;
};

Iri firstConnecting(const kb::KnowledgeBase& kb, const Iri& target, const Iri& entity) {
  std::vector<kb::PropertyMatch> found = kb.findConnectingProperties(target, entity);
  for (const kb::ObjectPropertyDecl& decl : kb.schema().objectProperties) {
    for (const kb::PropertyMatch& m : found) {
      if (m.property == decl.name) return decl.name;
    }
  }
  throw formulation::FormulationError("no property connects " + target.str() + " and " + entity.str());
}

}  // namespace

BaselineResult baselineQuery(std::string_view question, const formulation::Pipeline& p) {
  const kb::KnowledgeBase& kb = p.kb;
  nlp::AnnotatedSentence s;
  s.tokens = nlp::tokenize(question);
  std::vector<std::vector<nlp::MorphAnalysis>> candidates;
  for (const nlp::Token& t : s.tokens) candidates.push_back(nlp::analyzeMorphology(t, p.lexicon));
  s.analyses = nlp::disambiguate(candidates);
  const int n = s.size();
  std::vector<std::string> keys;
  for (const nlp::MorphAnalysis& a : s.analyses) keys.push_back(a.lemmaKey());

  BaselineResult out;
  QueryFrame& frame = out.frame;

  // Entity: first token starting a gazetteer label.
  std::optional<Iri> entity;
  nlp::EntitySpan span;
  for (int i = 1; i <= n && !entity; ++i) {
    int stop = i;
    while (stop <= n && s.analysis(stop).pos != Pos::kPunc) ++stop;
    if (stop == i) continue;
    std::vector<std::string> rest(keys.begin() + (i - 1), keys.begin() + (stop - 1));
    kb::LabelLookup hit = kb.lookupIndividualByLabel(rest);
    if (!hit.found()) continue;
    entity = hit.candidates.front();
    span.start = i;
    span.end = i + static_cast<int>(hit.matchedLength) - 1;
    if (hit.status == kb::LabelLookup::Status::kAmbiguous) {
      out.notes.push_back("ambiguous entity label, took " + entity->str());
    }
  }

  std::vector<LemmaHit> hits;
  for (int i = 1; i <= n; ++i) {
    for (const kb::LexEntry& e : kb.checkAxiomTypeAll(keys[static_cast<std::size_t>(i - 1)])) {
      hits.push_back({i, e});
    }
  }
  auto firstOf = [&](AxiomKind kind, int from = 1) -> std::optional<Iri> {
    for (const LemmaHit& h : hits) {
      if (h.token >= from && h.entry.kind == kind) return h.entry.target;
    }
    return std::nullopt;
  };
  std::optional<Iri> target = firstOf(AxiomKind::kClass);
  std::optional<Iri> dataProperty = firstOf(AxiomKind::kDataProperty);
  std::optional<Iri> objectProperty = firstOf(AxiomKind::kObjectProperty);

  // Same lexical question typing as the pipeline.
  std::optional<FunctionName> fn;
  const bool quantitative = formulation::isQuantitative(s, kb);
  for (int i = 1; i <= n && quantitative && !fn; ++i) {
    const std::string& k = keys[static_cast<std::size_t>(i - 1)];
    const std::string next = i < n ? keys[static_cast<std::size_t>(i)] : std::string();
    if (k == "kaç") {
      fn = FunctionName::kCount;
    } else if (k == "toplam" || (k == "ne" && next == "kadar")) {
      fn = FunctionName::kSum;
    } else if (k == "en" && i < n) {
      if (const formulation::SuperlativeLexicon::Entry* e = p.superlatives.find(next)) {
        fn = e->polarity;
        dataProperty = e->dataProperty ? e->dataProperty : firstOf(AxiomKind::kDataProperty, i + 2);
      }
    }
  }

  if (!entity) throw formulation::FormulationError("no individual found in the ontology");
  frame.entityClass = kb.entityClassOf(*entity);
  frame.namedEntityFilter = formulation::entityFilterLiteral(s, span);

  // Properties linking the entity to any matched class.
  std::vector<std::string> eligible;
  for (const LemmaHit& h : hits) {
    if (h.entry.kind != AxiomKind::kClass) continue;
    for (const kb::PropertyMatch& m : kb.findConnectingProperties(h.entry.target, *entity)) {
      if (std::find(eligible.begin(), eligible.end(), m.property.str()) == eligible.end()) {
        eligible.push_back(m.property.str());
      }
    }
  }

  const kb::OntologySchema& schema = kb.schema();
  if (fn) {
    frame.functionName = fn;
    frame.dataProperty = dataProperty;
    frame.targetClass = target;
    if (!frame.targetClass && dataProperty) {
      const kb::DataPropertyDecl* decl = schema.dataProperty(*dataProperty);
      if (decl && !decl->domains.empty()) frame.targetClass = decl->domains.front();
    }
    if (!frame.targetClass) throw formulation::FormulationError("no target class");
    frame.objectProperty = objectProperty ? *objectProperty : firstConnecting(kb, *frame.targetClass, *entity);
    out.query = formulation::instantiateTemplate(frame, schema);
  } else if (dataProperty && (!target || schema.isSubclassOrSelf(*frame.entityClass, *target))) {
    frame.targetClass = frame.entityClass;
    frame.dataProperty = dataProperty;
    out.query = formulation::singleClassQuery(*frame.entityClass, *dataProperty, *frame.namedEntityFilter);
  } else {
    if (!target) throw formulation::FormulationError("no class found in the ontology");
    frame.targetClass = target;
    frame.dataProperty = dataProperty;
    frame.objectProperty = objectProperty ? *objectProperty : firstConnecting(kb, *target, *entity);
    out.query = formulation::twoClassQuery(*target, *frame.entityClass, *frame.objectProperty,
                                           dataProperty, *frame.namedEntityFilter, schema);
  }
  if (eligible.size() > 1) {
    std::string line = "ambiguous property:";
    for (const std::string& e : eligible) line += " " + e;
    if (frame.objectProperty) line += " (chose " + frame.objectProperty->str() + ")";
    out.notes.push_back(std::move(line));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Runs.

namespace {

std::string describe(const std::exception& e) {
  if (const auto* ge = dynamic_cast<const Error*>(&e)) return ge->stage() + ": " + ge->what();
  return e.what();
}

template <typename Fn>
EvalReport runSuite(std::string method, const std::vector<GoldRecord>& suite, unsigned threads,
                    Fn&& one) {
  EvalReport report;
  report.method = std::move(method);
  report.perQuestion.resize(suite.size());
  auto work = [&](std::size_t i) {
    const GoldRecord& g = suite[i];
    QuestionResult& r = report.perQuestion[i];
    r.question = g.question;
    r.tags = g.tags;
    r.gold = sortedUnique([&] {
      std::vector<std::string> v;
      for (const std::string& s : g.gold) v.push_back(canonicalAnswer(s));
      return v;
    }());
    try {
      one(g, r);
    } catch (const std::exception& e) {
      r.returned.clear();
      r.error = describe(e);
    }
    r.metrics = score(r.returned, r.gold, g.unanswerable());
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, suite.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < suite.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < suite.size(); i = next++) work(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  report.aggregate = macroAverage(report.perQuestion);
  return report;
}

}  // namespace

EvalReport runMethod1(const std::vector<GoldRecord>& suite, const formulation::Pipeline& pipeline,
                      const RunOptions& options) {
  formulation::AnswerOptions ao;
  ao.classifier = options.classifier;
  ao.goldParse = options.goldParse;
  return runSuite("Method 1: Hybrid approach", suite, options.threads,
                  [&](const GoldRecord& g, QuestionResult& r) {
                    formulation::Answer a = formulation::answer(g.question, pipeline, ao);
                    r.queryText = a.queryText;
                    r.returned = answerSet(a.solutions);
                  });
}

EvalReport runMethod2(const std::vector<GoldRecord>& suite, const formulation::Pipeline& pipeline,
                      const RunOptions& options) {
  return runSuite("Method 2: Ontology based approach", suite, options.threads,
                  [&](const GoldRecord& g, QuestionResult& r) {
                    BaselineResult b = baselineQuery(g.question, pipeline);
                    r.notes = b.notes;
                    r.queryText = sparql::serialize(b.query, pipeline.kb.prefixes());
                    r.returned = answerSet(sparql::evaluate(b.query, pipeline.kb));
                  });
}

// ---------------------------------------------------------------------------
// Reporting.

namespace {

void requireSameSuite(const std::vector<const EvalReport*>& reports) {
  for (const EvalReport* r : reports) {
    const EvalReport& first = *reports.front();
    bool same = r->perQuestion.size() == first.perQuestion.size();
    for (std::size_t i = 0; same && i < first.perQuestion.size(); ++i) {
      same = r->perQuestion[i].question == first.perQuestion[i].question &&
             r->perQuestion[i].gold == first.perQuestion[i].gold;
    }
    if (!same) throw Error("eval", "reports cover different suites");
  }
}

}  // namespace

std::string comparisonTable(const std::vector<const EvalReport*>& reports) {
  if (reports.empty()) throw Error("eval", "no reports to compare");
  requireSameSuite(reports);
  std::size_t width = std::string_view("Method").size();
  for (const EvalReport* r : reports) width = std::max(width, r->method.size());
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size() + 2, ' '); };

  std::string out = "Macro-averaged over " + std::to_string(reports.front()->perQuestion.size()) +
                    " questions (per-question set precision and recall)\n";
  out += pad("Method") + "Precision  Recall  F-Measure\n";
  for (const EvalReport* r : reports) {
    out += pad(r->method) + fixed2(r->aggregate.precision) + "       " + fixed2(r->aggregate.recall) +
           "    " + fixed2(r->aggregate.f) + "\n";
  }
  return out;
}

std::vector<std::string> disagreements(const EvalReport& r1, const EvalReport& r2) {
  requireSameSuite({&r1, &r2});
  std::vector<std::string> out;
  for (std::size_t i = 0; i < r1.perQuestion.size(); ++i) {
    const QuestionResult& a = r1.perQuestion[i];
    const QuestionResult& b = r2.perQuestion[i];
    if (a.returned != b.returned || a.error.has_value() != b.error.has_value()) {
      out.push_back(a.question);
    }
  }
  return out;
}

std::string compareMethods(const EvalReport& r1, const EvalReport& r2) {
  std::string out = comparisonTable({&r1, &r2});
  std::vector<std::string> diff = disagreements(r1, r2);
  out += "\nDisagreements (" + std::to_string(diff.size()) + "):\n";
  for (std::size_t i = 0, j = 0; i < r1.perQuestion.size() && j < diff.size(); ++i) {
    const QuestionResult& a = r1.perQuestion[i];
    if (a.question != diff[j]) continue;
    const QuestionResult& b = r2.perQuestion[i];
    out += "  " + a.question + "  F " + fixed2(a.metrics.f) + " vs " + fixed2(b.metrics.f) + "\n";
    for (const std::string& note : b.notes) out += "    " + note + "\n";
    ++j;
  }
  return out;
}

std::string reportJson(const std::vector<const EvalReport*>& reports) {
  if (!reports.empty()) requireSameSuite(reports);
  auto metrics = [](const Metrics& m) {
    return nlohmann::ordered_json{{"precision", m.precision}, {"recall", m.recall}, {"f", m.f}};
  };
  nlohmann::ordered_json root;
  root["averaging"] = "macro";
  root["methods"] = nlohmann::ordered_json::array();
  for (const EvalReport* r : reports) {
    nlohmann::ordered_json m;
    m["method"] = r->method;
    m["aggregate"] = metrics(r->aggregate);
    m["perQuestion"] = nlohmann::ordered_json::array();
    for (const QuestionResult& q : r->perQuestion) {
      nlohmann::ordered_json row;
      row["question"] = q.question;
      row["tags"] = q.tags;
      row["returned"] = q.returned;
      row["gold"] = q.gold;
      row["precision"] = q.metrics.precision;
      row["recall"] = q.metrics.recall;
      row["f"] = q.metrics.f;
      row["query"] = q.queryText;
      row["error"] = q.error ? nlohmann::ordered_json(*q.error) : nlohmann::ordered_json(nullptr);
      row["notes"] = q.notes;
      m["perQuestion"].push_back(std::move(row));
    }
    root["methods"].push_back(std::move(m));
  }
  if (reports.size() == 2) {
    root["disagreements"] = disagreements(*reports[0], *reports[1]);
  }
  return root.dump(2);
}

}  // namespace geoqa::eval
