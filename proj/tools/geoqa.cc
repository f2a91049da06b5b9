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


// geoqa: answer Turkish geography questions over the bundled knowledge base.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "geoqa/config.h"
#include "geoqa/eval.h"
#include "geoqa/formulation.h"
#include "geoqa/qt2_model.h"
#include "json.hpp"

namespace {

using namespace geoqa;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kAssertFailed = 1;
constexpr int kFailed = 2;

struct Globals {
  std::string configPath;
  bool json = false;
  std::optional<std::uint32_t> seed;
  std::string goldConll;
  std::string qt2Model;
};

struct Session {
  std::unique_ptr<config::Resources> res;
  std::optional<qt2::MlpFrameClassifier> mlp;
  formulation::AnswerOptions options;
  eval::RunOptions runOptions;
};

std::string defaultConfig() {
  if (std::filesystem::is_regular_file("geoqa.conf")) return "geoqa.conf";
#ifdef GEOQA_DEFAULT_CONFIG
  return GEOQA_DEFAULT_CONFIG;
#else
  return "geoqa.conf";
#endif
}

Session openSession(const Globals& g) {
  Session s;
  config::Config c = config::loadConfig(g.configPath.empty() ? config::configPath(defaultConfig()) : g.configPath);
  if (g.seed) c.seed = *g.seed;
  if (!g.goldConll.empty()) c.goldConllPath = g.goldConll;
  s.res = config::loadResources(c);
  if (c.goldConllPath) {
    auto parses = std::make_shared<const config::GoldParses>(
        config::goldParsesFromConll(config::readFile(*c.goldConllPath, "conll")));
    s.options.goldParse = config::goldParseLookup(parses);
    s.runOptions.goldParse = s.options.goldParse;
  }
  if (!g.qt2Model.empty()) {
    s.mlp.emplace(qt2::Model::fromJson(config::readFile(g.qt2Model, "qt2")));
    s.options.classifier = &*s.mlp;
    s.runOptions.classifier = &*s.mlp;
  }
  return s;
}

void printError(const std::exception& e) {
  if (const auto* ge = dynamic_cast<const Error*>(&e)) {
    std::cerr << "error [" << ge->stage() << "]: " << ge->what() << "\n";
  } else {
    std::cerr << "error: " << e.what() << "\n";
  }
}

std::string optIri(const std::optional<kb::Iri>& iri) { return iri ? iri->str() : "-"; }

ordered_json frameJson(const formulation::QueryFrame& f) {
  auto opt = [](const std::optional<kb::Iri>& i) { return i ? ordered_json(i->str()) : ordered_json(nullptr); };
  return ordered_json{
      {"targetClass", opt(f.targetClass)},
      {"entityClass", opt(f.entityClass)},
      {"dataProperty", opt(f.dataProperty)},
      {"objectProperty", opt(f.objectProperty)},
      {"function", f.functionName ? ordered_json(std::string(formulation::functionNameString(*f.functionName)))
                                  : ordered_json(nullptr)},
      {"filter", f.namedEntityFilter ? ordered_json(*f.namedEntityFilter) : ordered_json(nullptr)}};
}

void printBindings(const sparql::SolutionSet& sols, std::ostream& out) {
  std::vector<std::size_t> width;
  for (const std::string& v : sols.variables) width.push_back(v.size() + 1);
  std::vector<std::vector<std::string>> cells;
  for (const sparql::Solution& row : sols.rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < sols.variables.size(); ++i) {
      auto it = row.find(sols.variables[i]);
      line.push_back(it == row.end() ? "" : it->second.lexical());
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << line[i];
      if (i + 1 < line.size()) out << std::string(width[i] - line[i].size() + 2, ' ');
    }
    out << "\n";
  };
  std::vector<std::string> header;
  for (const std::string& v : sols.variables) header.push_back("?" + v);
  emit(header);
  for (const auto& line : cells) emit(line);
  out << "(" << sols.rows.size() << " row" << (sols.rows.size() == 1 ? "" : "s") << ")\n";
  for (const std::string& d : sols.diagnostics) out << "note: " << d << "\n";
}

void printTrace(const formulation::Answer& a, std::ostream& out) {
  const nlp::AnnotatedSentence& s = a.sentence;
  out << "tokens:";
  for (const nlp::Token& t : s.tokens) out << " [" << t.surface << "]";
  out << "\nmorphology:\n";
  for (int i = 1; i <= s.size(); ++i) {
    out << "  " << i << "  " << s.tokens[static_cast<std::size_t>(i - 1)].surface << "  "
        << s.analysis(i).tagString() << "  " << nlp::nerLabelName(s.nerLabels[static_cast<std::size_t>(i - 1)])
        << "\n";
  }
  out << "dependencies:\n" << nlp::writeConllX({s.depRows});
  out << "type: " << formulation::questionTypeName(a.type) << "\n";
  const formulation::QueryFrame& f = a.frame;
  out << "frame: target=" << optIri(f.targetClass) << " entity=" << optIri(f.entityClass)
      << " data=" << optIri(f.dataProperty) << " object=" << optIri(f.objectProperty)
      << " function=" << (f.functionName ? std::string(formulation::functionNameString(*f.functionName)) : "-")
      << " filter=" << f.namedEntityFilter.value_or("-") << "\n";
  for (const std::string& line : a.trace) out << "  " << line << "\n";
}

ordered_json answerJson(const formulation::Answer& a, bool evaluated, bool trace) {
  ordered_json j;
  j["question"] = a.question;
  j["type"] = std::string(formulation::questionTypeName(a.type));
  j["frame"] = frameJson(a.frame);
  j["query"] = a.queryText;
  if (evaluated) {
    j["variables"] = a.solutions.variables;
    ordered_json rows = ordered_json::array();
    for (const sparql::Solution& row : a.solutions.rows) {
      ordered_json r = ordered_json::object();
      for (const std::string& v : a.solutions.variables) {
        auto it = row.find(v);
        r[v] = it == row.end() ? ordered_json(nullptr) : ordered_json(it->second.lexical());
      }
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["answers"] = eval::answerSet(a.solutions);
  }
  if (trace) {
    const nlp::AnnotatedSentence& s = a.sentence;
    ordered_json toks = ordered_json::array();
    for (int i = 1; i <= s.size(); ++i) {
      const nlp::DepRow& r = s.row(i);
      toks.push_back(ordered_json{{"id", i},
                                  {"form", r.form},
                                  {"analysis", s.analysis(i).tagString()},
                                  {"ner", std::string(nlp::nerLabelName(s.nerLabels[static_cast<std::size_t>(i - 1)]))},
                                  {"head", r.head},
                                  {"relation", std::string(nlp::relationName(r.relation))}});
    }
    j["tokens"] = std::move(toks);
    j["trace"] = a.trace;
  }
  return j;
}

int cmdAsk(const Globals& g, const std::string& question, bool sparqlOnly, bool trace) {
  Session s = openSession(g);
  formulation::AnswerOptions opts = s.options;
  opts.evaluate = !sparqlOnly;
  formulation::Answer a = formulation::answer(question, s.res->pipeline(), opts);
  if (g.json) {
    std::cout << answerJson(a, !sparqlOnly, trace).dump(2) << "\n";
    return kOk;
  }
  if (trace) printTrace(a, std::cout);
  std::cout << a.queryText;
  if (!sparqlOnly) {
    std::cout << "\n";
    printBindings(a.solutions, std::cout);
  }
  return kOk;
}

int cmdRepl(const Globals& g) {
  Session s = openSession(g);
  bool showSparql = false;
  bool showTrace = false;
  std::string line;
  const bool tty = isatty(0) != 0;
  while (true) {
    if (tty) std::cout << "geoqa> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (line == ":quit" || line == ":q") break;
    if (line == ":sparql") {
      showSparql = !showSparql;
      std::cout << "sparql display " << (showSparql ? "on" : "off") << "\n";
      continue;
    }
    if (line == ":trace") {
      showTrace = !showTrace;
      std::cout << "trace " << (showTrace ? "on" : "off") << "\n";
      continue;
    }
    try {
      formulation::Answer a = formulation::answer(line, s.res->pipeline(), s.options);
      if (showTrace) printTrace(a, std::cout);
      if (showSparql) std::cout << a.queryText << "\n";
      printBindings(a.solutions, std::cout);
    } catch (const std::exception& e) {
      printError(e);
    }
  }
  std::cout << "\n";
  return kOk;
}

int cmdEval(const Globals& g, std::string suitePath, int method, bool assertOrder) {
  Session s = openSession(g);
  if (suitePath.empty()) {
    if (!s.res->config.suitePath) throw Error("config", "no suite given and no 'suite' key in the config");
    suitePath = *s.res->config.suitePath;
  }
  std::vector<eval::GoldRecord> suite = eval::loadSuiteFile(suitePath);
  formulation::Pipeline p = s.res->pipeline();
  std::vector<eval::EvalReport> reports;
  if (method != 2) reports.push_back(eval::runMethod1(suite, p, s.runOptions));
  if (method != 1) reports.push_back(eval::runMethod2(suite, p, s.runOptions));
  std::vector<const eval::EvalReport*> ptrs;
  for (const eval::EvalReport& r : reports) ptrs.push_back(&r);

  if (g.json) {
    std::cout << eval::reportJson(ptrs) << "\n";
  } else if (reports.size() == 2) {
    std::cout << eval::compareMethods(reports[0], reports[1]);
  } else {
    std::cout << eval::comparisonTable(ptrs);
  }
  if (assertOrder) {
    if (reports.size() != 2) throw Error("eval", "--assert-m1-beats-m2 needs both methods");
    if (!(reports[0].aggregate.f > reports[1].aggregate.f)) {
      std::cerr << "assertion failed: Method 1 F does not exceed Method 2 F\n";
      return kAssertFailed;
    }
  }
  return kOk;
}

double parseSplit(const std::string& text) {
  std::size_t used = 0;
  const std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      double f = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return f;
    }
    double a = std::stod(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(text);
    const std::string rest = text.substr(slash + 1);
    double b = std::stod(rest, &used);
    if (used != rest.size() || a < 0 || b < 0 || a + b <= 0) throw std::invalid_argument(text);
    return a / (a + b);
  } catch (const std::logic_error&) {
    throw Error("qt2", "bad --split '" + text + "' (expected e.g. 0.8/0.2)");
  }
}

int cmdTrain(const Globals& g, std::string framesPath, const std::string& split, const std::string& output) {
  Session s = openSession(g);
  if (framesPath.empty()) {
    if (!s.res->config.framesPath) throw Error("config", "no frames file given and no 'qt2_frames' key");
    framesPath = *s.res->config.framesPath;
  }
  std::vector<qt2::LabeledFrame> frames = qt2::loadLabeledFrames(config::readFile(framesPath, "qt2"));
  qt2::TrainOptions opts;
  opts.seed = s.res->config.seed;
  qt2::TrainResult r = qt2::trainAndEvaluate(frames, s.res->pipeline(), parseSplit(split), opts);
  const qt2::SplitReport& rep = r.report;
  if (g.json) {
    ordered_json j;
    j["seed"] = opts.seed;
    j["train"] = rep.trainSize;
    j["test"] = rep.testSize;
    ordered_json heads;
    for (std::size_t h = 0; h < qt2::kHeadCount; ++h) heads[std::string(qt2::headName(qt2::kHeads[h]))] = rep.headAccuracy[h];
    j["headAccuracy"] = heads;
    j["exactAccuracy"] = rep.exactAccuracy;
    j["trainExactAccuracy"] = rep.trainExactAccuracy;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("seed %u, %zu train / %zu held-out frames\n", opts.seed, rep.trainSize, rep.testSize);
    for (std::size_t h = 0; h < qt2::kHeadCount; ++h) {
      std::printf("  %-16s %.3f\n", std::string(qt2::headName(qt2::kHeads[h])).c_str(), rep.headAccuracy[h]);
    }
    std::printf("exact-frame accuracy %.3f (train %.3f)\n", rep.exactAccuracy, rep.trainExactAccuracy);
  }
  if (!output.empty()) {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw Error("qt2", "cannot write " + output);
    out << r.model.toJson() << "\n";
    if (!g.json) std::printf("model written to %s\n", output.c_str());
  }
  return kOk;
}

int cmdLoadCheck(const Globals& g) {
  Session s = openSession(g);
  const config::Resources& r = *s.res;
  const kb::ClosureStats& c = r.closure;
  if (g.json) {
    ordered_json j{{"classes", r.kb->schema().classes.size()},
                   {"objectProperties", r.kb->schema().objectProperties.size()},
                   {"dataProperties", r.kb->schema().dataProperties.size()},
                   {"individuals", r.kb->individuals().size()},
                   {"asserted", r.assertedTriples},
                   {"inverseAdded", c.inverseAdded},
                   {"symmetricAdded", c.symmetricAdded},
                   {"subclassAdded", c.subclassAdded},
                   {"rounds", c.rounds},
                   {"triples", r.kb->size()},
                   {"lemmas", r.lexicon->size()},
                   {"superlatives", r.superlatives->size()}};
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::printf("schema: %zu classes, %zu object properties, %zu data properties\n",
              r.kb->schema().classes.size(), r.kb->schema().objectProperties.size(),
              r.kb->schema().dataProperties.size());
  std::printf("individuals: %zu\n", r.kb->individuals().size());
  std::printf("asserted triples: %zu\n", r.assertedTriples);
  std::printf("closure: +%zu inverse, +%zu symmetric, +%zu subclass in %zu rounds\n", c.inverseAdded,
              c.symmetricAdded, c.subclassAdded, c.rounds);
  std::printf("total triples: %zu\n", r.kb->size());
  std::printf("lexicon: %zu lemmas, %zu superlatives\n", r.lexicon->size(), r.superlatives->size());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turkish geography question answering over the GEO-TR knowledge base"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.configPath, "Config file (default: $GEOQA_CONFIG or the bundled one)");
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--seed", g.seed, "Override the config seed");
  app.add_option("--gold-conll", g.goldConll, "CoNLL-X file with gold dependency parses");
  app.add_option("--qt2-model", g.qt2Model, "Use a trained QT2 model instead of the rule classifier");

  std::string question;
  bool sparqlOnly = false, trace = false;
  CLI::App* ask = app.add_subcommand("ask", "Answer one question");
  ask->add_option("question", question, "Question text")->required();
  ask->add_flag("--sparql-only", sparqlOnly, "Print the query without running it");
  ask->add_flag("--trace", trace, "Print tokens, analyses, dependencies and the frame");

  CLI::App* repl = app.add_subcommand("repl", "Interactive session (:sparql, :trace, :quit)");

  std::string suitePath;
  int method = 0;
  bool assertOrder = false;
  CLI::App* ev = app.add_subcommand("eval", "Run the question suite with both methods");
  ev->add_option("suite", suitePath, "Suite file (JSON lines)");
  ev->add_option("--method", method, "Only method 1 or 2")->check(CLI::IsMember({1, 2}));
  ev->add_flag("--assert-m1-beats-m2", assertOrder, "Exit 1 unless Method 1 F exceeds Method 2 F");

  std::string framesPath, split = "0.8/0.2", output;
  CLI::App* train = app.add_subcommand("train-qt2", "Train and evaluate the QT2 frame classifier");
  train->add_option("frames", framesPath, "Labeled frames (JSON lines)");
  train->add_option("--split", split, "Train/test split, e.g. 0.8/0.2");
  train->add_option("--output", output, "Write the model JSON here");

  CLI::App* check = app.add_subcommand("load-check", "Validate the KB and print closure statistics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kFailed;
  }

  try {
    if (*ask) return cmdAsk(g, question, sparqlOnly, trace);
    if (*repl) return cmdRepl(g);
    if (*ev) return cmdEval(g, suitePath, method, assertOrder);
    if (*train) return cmdTrain(g, framesPath, split, output);
    if (*check) return cmdLoadCheck(g);
  } catch (const std::exception& e) {
    printError(e);
    return kFailed;
  }
  return kFailed;
}
