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

#ifndef GEOQA_QT2_MODEL_H_
#define GEOQA_QT2_MODEL_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "geoqa/formulation.h"

// Multi-head perceptron that predicts QT2 query frames.
namespace geoqa::qt2 {

enum class Head { kTargetClass, kEntityClass, kDataProperty, kObjectProperty, kFunctionName };

inline constexpr std::size_t kHeadCount = 5;
inline constexpr std::array<Head, kHeadCount> kHeads = {
    Head::kTargetClass, Head::kEntityClass, Head::kDataProperty, Head::kObjectProperty,
    Head::kFunctionName};

std::string_view headName(Head head);  // "target_class", ...
// Category names of a head, "null" last.
const std::vector<std::string>& categories(Head head);

// One category index per head.
using Labels = std::array<int, kHeadCount>;

struct LabeledFrame {
  std::string question;
  Labels labels{};
};

class ModelError : public Error {
 public:
  explicit ModelError(const std::string& message) : Error("qt2", message) {}
};

// JSON lines with keys question, target_class, entity_class,
// data_property, object_property, function_name ("null" allowed).
std::vector<LabeledFrame> loadLabeledFrames(std::string_view jsonl);

Labels labelsFromFrame(const formulation::QueryFrame& frame);
// Frame slots from labels; the entity filter is left unset.
formulation::QueryFrame frameFromLabels(const Labels& labels);

// Lemma indicators over the lexicon, quantifier indicators, the
// superlative adjective and the entity class.
class Featurizer {
 public:
  Featurizer(const nlp::LemmaLexicon& lexicon, const formulation::SuperlativeLexicon& superlatives,
             const kb::OntologySchema& schema);
  Featurizer(std::vector<std::string> names);

  std::vector<double> features(const nlp::AnnotatedSentence& sentence, const kb::KnowledgeBase& kb) const;
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
};

struct TrainOptions {
  int hidden = 32;
  int epochs = 500;
  double learningRate = 0.05;
  std::uint32_t seed = 7;
};

struct Example {
  std::vector<double> x;
  Labels y{};
};

class Model {
 public:
  static Model train(const std::vector<Example>& examples, std::vector<std::string> featureNames,
                     const TrainOptions& options);
  static Model fromJson(std::string_view json);
  std::string toJson() const;

  Labels predict(const std::vector<double>& x) const;
  const std::vector<std::string>& featureNames() const { return featureNames_; }
  const TrainOptions& options() const { return options_; }

 private:
  std::vector<double> hidden(const std::vector<double>& x) const;

  TrainOptions options_;
  std::vector<std::string> featureNames_;
  std::vector<std::vector<double>> w1_;  // hidden x input
  std::vector<double> b1_;
  std::array<std::vector<std::vector<double>>, kHeadCount> w2_;  // categories x hidden
  std::array<std::vector<double>, kHeadCount> b2_;
};

struct SplitReport {
  std::size_t trainSize = 0;
  std::size_t testSize = 0;
  std::array<double, kHeadCount> headAccuracy{};
  double exactAccuracy = 0;
  double trainExactAccuracy = 0;
};

struct TrainResult {
  Model model;
  SplitReport report;
};

// Shuffles with the seed, trains on round(trainFraction * n) frames and
// scores the rest.
TrainResult trainAndEvaluate(const std::vector<LabeledFrame>& frames, const formulation::Pipeline& pipeline,
                             double trainFraction, const TrainOptions& options);

class MlpFrameClassifier : public formulation::FrameClassifier {
 public:
  explicit MlpFrameClassifier(Model model) : model_(std::move(model)), featurizer_(model_.featureNames()) {}

  formulation::QueryFrame classify(const nlp::AnnotatedSentence& sentence,
                                   const kb::KnowledgeBase& kb) const override;
  std::string name() const override { return "mlp"; }

 private:
  Model model_;
  Featurizer featurizer_;
};

}  // namespace geoqa::qt2

#endif  // GEOQA_QT2_MODEL_H_
