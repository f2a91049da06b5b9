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
#include <cmath>
#include <random>
#include <set>

#include "geoqa/qt2_model.h"
#include "geoqa/text.h"
#include "json.hpp"

namespace geoqa::qt2 {

using formulation::FunctionName;
using formulation::QueryFrame;
using Json = nlohmann::ordered_json;

std::string_view headName(Head head) {
  switch (head) {
    case Head::kTargetClass: return "target_class";
    case Head::kEntityClass: return "entity_class";
    case Head::kDataProperty: return "data_property";
    case Head::kObjectProperty: return "object_property";
    case Head::kFunctionName: return "function_name";
  }
  return "target_class";
}

const std::vector<std::string>& categories(Head head) {
  static const std::vector<std::string> kClasses = {"Sehir", "Bolge", "Ulke", "Dag", "Nehir", "Gol",
                                                    "Ada",   "Ova",   "Deniz", "Ilce", "null"};
  static const std::vector<std::string> kData = {"yuzolcumu", "populasyon",  "yukseklik", "derinlik",
                                                 "tuzluluk",  "ortYagis",    "sicaklik",  "enlemBoylam",
                                                 "bitkiOrtusu", "baskent",   "iklim",     "null"};
  static const std::vector<std::string> kObject = {"konumlanir", "konumVar", "komsu", "null"};
  static const std::vector<std::string> kFunction = {"count", "min", "max", "sum", "null"};
  switch (head) {
    case Head::kTargetClass:
    case Head::kEntityClass: return kClasses;
    case Head::kDataProperty: return kData;
    case Head::kObjectProperty: return kObject;
    case Head::kFunctionName: return kFunction;
  }
  return kClasses;
}

namespace {

int categoryIndex(Head head, std::string_view value) {
  const auto& cats = categories(head);
  auto it = std::find(cats.begin(), cats.end(), value);
  return it == cats.end() ? -1 : static_cast<int>(it - cats.begin());
}

int nullIndex(Head head) { return static_cast<int>(categories(head).size()) - 1; }

std::size_t h(Head head) { return static_cast<std::size_t>(head); }

}  // namespace

std::vector<LabeledFrame> loadLabeledFrames(std::string_view jsonl) {
  std::vector<LabeledFrame> out;
  std::size_t lineNo = 0;
  for (const std::string& raw : text::split(jsonl, '\n')) {
    ++lineNo;
    std::string line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw ParseError("qt2", std::string("malformed JSON: ") + e.what(), lineNo);
    }
    if (!j.is_object() || !j.contains("question") || !j["question"].is_string()) {
      throw ParseError("qt2", "record needs a string 'question'", lineNo);
    }
    LabeledFrame f;
    f.question = j["question"].get<std::string>();
    for (Head head : kHeads) {
      const std::string name(headName(head));
      std::string value = "null";
      if (j.contains(name) && !j[name].is_null()) {
        if (!j[name].is_string()) throw ParseError("qt2", "'" + name + "' must be a string", lineNo);
        value = j[name].get<std::string>();
      }
      int idx = categoryIndex(head, value);
      if (idx < 0) {
        throw ParseError("qt2", "category '" + value + "' is not allowed for " + name, lineNo);
      }
      f.labels[h(head)] = idx;
    }
    out.push_back(std::move(f));
  }
  return out;
}

Labels labelsFromFrame(const QueryFrame& frame) {
  Labels l{};
  auto set = [&](Head head, const std::optional<kb::Iri>& iri) {
    int idx = iri ? categoryIndex(head, iri->local) : nullIndex(head);
    if (idx < 0) throw ModelError("'" + iri->local + "' is not a " + std::string(headName(head)) + " category");
    l[h(head)] = idx;
  };
  set(Head::kTargetClass, frame.targetClass);
  set(Head::kEntityClass, frame.entityClass);
  set(Head::kDataProperty, frame.dataProperty);
  set(Head::kObjectProperty, frame.objectProperty);
  l[h(Head::kFunctionName)] = frame.functionName
                                  ? categoryIndex(Head::kFunctionName, functionNameString(*frame.functionName))
                                  : nullIndex(Head::kFunctionName);
  return l;
}

QueryFrame frameFromLabels(const Labels& labels) {
  QueryFrame f;
  auto value = [&](Head head) -> std::optional<std::string> {
    int idx = labels[h(head)];
    if (idx < 0 || idx >= static_cast<int>(categories(head).size())) throw ModelError("label index out of range");
    if (idx == nullIndex(head)) return std::nullopt;
    return categories(head)[static_cast<std::size_t>(idx)];
  };
  if (auto v = value(Head::kTargetClass)) f.targetClass = kb::classIri(*v);
  if (auto v = value(Head::kEntityClass)) f.entityClass = kb::classIri(*v);
  if (auto v = value(Head::kDataProperty)) f.dataProperty = kb::instanceIri(*v);
  if (auto v = value(Head::kObjectProperty)) f.objectProperty = kb::instanceIri(*v);
  if (auto v = value(Head::kFunctionName)) f.functionName = formulation::parseFunctionName(*v);
  return f;
}

namespace {

constexpr std::string_view kLemma = "lemma:";
constexpr std::string_view kQuant = "quant:";
constexpr std::string_view kSup = "sup:";
constexpr std::string_view kEntity = "entity:";

}  // namespace

Featurizer::Featurizer(const nlp::LemmaLexicon& lexicon, const formulation::SuperlativeLexicon& superlatives,
                       const kb::OntologySchema& schema) {
  for (const std::string& lemma : lexicon.lemmas()) names_.push_back(std::string(kLemma) + lemma);
  for (const char* name : {"kaç", "toplam", "en", "ne_kadar"}) names_.push_back(std::string(kQuant) + name);
  for (const auto& [adj, entry] : superlatives.entries()) names_.push_back(std::string(kSup) + adj);
  for (const auto& c : schema.classes) names_.push_back(std::string(kEntity) + c.name.local);
}

Featurizer::Featurizer(std::vector<std::string> names) : names_(std::move(names)) {}

std::vector<double> Featurizer::features(const nlp::AnnotatedSentence& s, const kb::KnowledgeBase& kb) const {
  std::set<std::string> lemmas;
  std::set<std::string> quant;
  std::set<std::string> sup;
  std::optional<std::string> entityClass;
  const int n = s.size();
  for (int id = 1; id <= n; ++id) {
    std::string k = s.analysis(id).lemmaKey();
    lemmas.insert(k);
    if (k == "kaç" || k == "toplam" || k == "en") quant.insert(k);
    if (k == "ne" && id < n && s.analysis(id + 1).lemmaKey() == "kadar") quant.insert("ne_kadar");
    if (k == "en" && id < n) sup.insert(s.analysis(id + 1).lemmaKey());
  }
  for (const nlp::EntitySpan& span : s.entitySpans) {
    if (span.resolved) {
      entityClass = kb.entityClassOf(*span.resolved).local;
      break;
    }
  }
  std::vector<double> x(names_.size(), 0.0);
  for (std::size_t i = 0; i < names_.size(); ++i) {
    std::string_view name = names_[i];
    bool on = false;
    if (text::startsWith(name, kLemma)) {
      on = lemmas.count(std::string(name.substr(kLemma.size()))) > 0;
    } else if (text::startsWith(name, kQuant)) {
      on = quant.count(std::string(name.substr(kQuant.size()))) > 0;
    } else if (text::startsWith(name, kSup)) {
      on = sup.count(std::string(name.substr(kSup.size()))) > 0;
    } else if (text::startsWith(name, kEntity)) {
      on = entityClass && *entityClass == name.substr(kEntity.size());
    }
    x[i] = on ? 1.0 : 0.0;
  }
  return x;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<double> softmax(const std::vector<double>& z) {
  double mx = *std::max_element(z.begin(), z.end());
  std::vector<double> p(z.size());
  double sum = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    p[i] = std::exp(z[i] - mx);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

double uniform(std::mt19937& gen, double radius) {
  return (static_cast<double>(gen()) / 4294967296.0 * 2.0 - 1.0) * radius;
}

void shuffle(std::vector<std::size_t>& v, std::mt19937& gen) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = gen() % i;
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

std::vector<double> Model::hidden(const std::vector<double>& x) const {
  if (x.size() != featureNames_.size()) throw ModelError("feature vector has the wrong size");
  std::vector<double> out(b1_.size());
  for (std::size_t j = 0; j < b1_.size(); ++j) {
    double z = b1_[j];
    const std::vector<double>& w = w1_[j];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0.0) z += w[i] * x[i];
    }
    out[j] = sigmoid(z);
  }
  return out;
}

Model Model::train(const std::vector<Example>& examples, std::vector<std::string> featureNames,
                   const TrainOptions& options) {
  if (examples.empty()) throw ModelError("no training examples");
  if (options.hidden <= 0 || options.epochs <= 0 || options.learningRate <= 0) {
    throw ModelError("invalid training options");
  }
  Model m;
  m.options_ = options;
  m.featureNames_ = std::move(featureNames);
  const std::size_t in = m.featureNames_.size();
  const std::size_t hid = static_cast<std::size_t>(options.hidden);
  for (const Example& e : examples) {
    if (e.x.size() != in) throw ModelError("feature vector has the wrong size");
  }

  std::mt19937 gen(options.seed);
  const double r1 = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(in, 1)));
  m.w1_.assign(hid, std::vector<double>(in));
  for (auto& row : m.w1_) {
    for (double& w : row) w = uniform(gen, r1);
  }
  m.b1_.assign(hid, 0.0);
  const double r2 = 1.0 / std::sqrt(static_cast<double>(hid));
  for (Head head : kHeads) {
    const std::size_t k = categories(head).size();
    m.w2_[h(head)].assign(k, std::vector<double>(hid));
    for (auto& row : m.w2_[h(head)]) {
      for (double& w : row) w = uniform(gen, r2);
    }
    m.b2_[h(head)].assign(k, 0.0);
  }

  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const double lr = options.learningRate;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    shuffle(order, gen);
    for (std::size_t idx : order) {
      const Example& e = examples[idx];
      const std::vector<double> hv = m.hidden(e.x);
      std::vector<double> dh(hid, 0.0);
      for (Head head : kHeads) {
        auto& w2 = m.w2_[h(head)];
        auto& b2 = m.b2_[h(head)];
        std::vector<double> z(b2);
        for (std::size_t c = 0; c < z.size(); ++c) {
          for (std::size_t j = 0; j < hid; ++j) z[c] += w2[c][j] * hv[j];
        }
        std::vector<double> p = softmax(z);
        p[static_cast<std::size_t>(e.y[h(head)])] -= 1.0;
        for (std::size_t c = 0; c < p.size(); ++c) {
          for (std::size_t j = 0; j < hid; ++j) {
            dh[j] += w2[c][j] * p[c];
            w2[c][j] -= lr * p[c] * hv[j];
          }
          b2[c] -= lr * p[c];
        }
      }
      for (std::size_t j = 0; j < hid; ++j) {
        const double g = dh[j] * hv[j] * (1.0 - hv[j]);
        if (g == 0.0) continue;
        for (std::size_t i = 0; i < in; ++i) {
          if (e.x[i] != 0.0) m.w1_[j][i] -= lr * g * e.x[i];
        }
        m.b1_[j] -= lr * g;
      }
    }
  }
  return m;
}

Labels Model::predict(const std::vector<double>& x) const {
  const std::vector<double> hv = hidden(x);
  Labels out{};
  for (Head head : kHeads) {
    const auto& w2 = w2_[h(head)];
    const auto& b2 = b2_[h(head)];
    int best = 0;
    double bestZ = 0;
    for (std::size_t c = 0; c < b2.size(); ++c) {
      double z = b2[c];
      for (std::size_t j = 0; j < hv.size(); ++j) z += w2[c][j] * hv[j];
      if (c == 0 || z > bestZ) {
        best = static_cast<int>(c);
        bestZ = z;
      }
    }
    out[h(head)] = best;
  }
  return out;
}

std::string Model::toJson() const {
  Json j;
  j["format"] = "geoqa-qt2-mlp";
  j["version"] = 1;
  j["activation"] = "logistic";
  j["hidden"] = options_.hidden;
  j["epochs"] = options_.epochs;
  j["learning_rate"] = options_.learningRate;
  j["seed"] = options_.seed;
  j["features"] = featureNames_;
  j["w1"] = w1_;
  j["b1"] = b1_;
  Json heads = Json::array();
  for (Head head : kHeads) {
    Json hj;
    hj["name"] = headName(head);
    hj["categories"] = categories(head);
    hj["w"] = w2_[h(head)];
    hj["b"] = b2_[h(head)];
    heads.push_back(hj);
  }
  j["heads"] = heads;
  return j.dump(1) + "\n";
}

Model Model::fromJson(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
  try {
    if (j.at("format") != "geoqa-qt2-mlp" || j.at("version") != 1) throw ModelError("unsupported model format");
    Model m;
    m.options_.hidden = j.at("hidden").get<int>();
    m.options_.epochs = j.at("epochs").get<int>();
    m.options_.learningRate = j.at("learning_rate").get<double>();
    m.options_.seed = j.at("seed").get<std::uint32_t>();
    m.featureNames_ = j.at("features").get<std::vector<std::string>>();
    m.w1_ = j.at("w1").get<std::vector<std::vector<double>>>();
    m.b1_ = j.at("b1").get<std::vector<double>>();
    const std::size_t hid = static_cast<std::size_t>(m.options_.hidden);
    if (m.w1_.size() != hid || m.b1_.size() != hid) throw ModelError("hidden layer size mismatch");
    for (const auto& row : m.w1_) {
      if (row.size() != m.featureNames_.size()) throw ModelError("input weight size mismatch");
    }
    const Json& heads = j.at("heads");
    if (!heads.is_array() || heads.size() != kHeadCount) throw ModelError("expected five heads");
    for (Head head : kHeads) {
      const Json& hj = heads[h(head)];
      if (hj.at("name") != headName(head) ||
          hj.at("categories").get<std::vector<std::string>>() != categories(head)) {
        throw ModelError("head " + std::string(headName(head)) + " does not match the category table");
      }
      m.w2_[h(head)] = hj.at("w").get<std::vector<std::vector<double>>>();
      m.b2_[h(head)] = hj.at("b").get<std::vector<double>>();
      if (m.w2_[h(head)].size() != categories(head).size() || m.b2_[h(head)].size() != categories(head).size()) {
        throw ModelError("output size mismatch");
      }
      for (const auto& row : m.w2_[h(head)]) {
        if (row.size() != hid) throw ModelError("output weight size mismatch");
      }
    }
    return m;
  } catch (const Json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
}

TrainResult trainAndEvaluate(const std::vector<LabeledFrame>& frames, const formulation::Pipeline& p,
                             double trainFraction, const TrainOptions& options) {
  if (frames.empty()) throw ModelError("no labeled frames");
  if (!(trainFraction > 0.0 && trainFraction < 1.0)) throw ModelError("train fraction must be in (0, 1)");
  const std::size_t n = frames.size();
  const std::size_t trainSize = static_cast<std::size_t>(std::lround(trainFraction * static_cast<double>(n)));
  if (trainSize == 0 || trainSize >= n) throw ModelError("split leaves an empty train or test set");

  Featurizer featurizer(p.lexicon, p.superlatives, p.kb.schema());
  std::vector<Example> all;
  for (const LabeledFrame& f : frames) {
    nlp::AnnotatedSentence s = nlp::annotateLexical(f.question, p.lexicon, p.kb);
    all.push_back(Example{featurizer.features(s, p.kb), f.labels});
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937 splitGen(options.seed);
  shuffle(order, splitGen);
  std::vector<Example> train;
  std::vector<Example> test;
  for (std::size_t i = 0; i < n; ++i) (i < trainSize ? train : test).push_back(all[order[i]]);

  TrainResult result{Model::train(train, featurizer.names(), options), {}};
  SplitReport& r = result.report;
  r.trainSize = train.size();
  r.testSize = test.size();
  std::size_t exact = 0;
  for (const Example& e : test) {
    Labels pred = result.model.predict(e.x);
    bool all5 = true;
    for (std::size_t k = 0; k < kHeadCount; ++k) {
      if (pred[k] == e.y[k]) {
        r.headAccuracy[k] += 1;
      } else {
        all5 = false;
      }
    }
    if (all5) ++exact;
  }
  for (double& a : r.headAccuracy) a /= static_cast<double>(test.size());
  r.exactAccuracy = static_cast<double>(exact) / static_cast<double>(test.size());
  std::size_t trainExact = 0;
  for (const Example& e : train) {
    if (result.model.predict(e.x) == e.y) ++trainExact;
  }
  r.trainExactAccuracy = static_cast<double>(trainExact) / static_cast<double>(train.size());
  return result;
}

formulation::QueryFrame MlpFrameClassifier::classify(const nlp::AnnotatedSentence& s,
                                                     const kb::KnowledgeBase& kb) const {
  QueryFrame f = frameFromLabels(model_.predict(featurizer_.features(s, kb)));
  for (const nlp::EntitySpan& span : s.entitySpans) {
    if (span.resolved) {
      f.namedEntityFilter = formulation::entityFilterLiteral(s, span);
      break;
    }
  }
  if (!f.namedEntityFilter) throw formulation::FormulationError("unresolvable frame: no named entity");
  return f;
}

}  // namespace geoqa::qt2
