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

#include "geoqa/qt2_model.h"
#include "support.h"

namespace geoqa {
namespace {

using testing::bundled;

std::vector<qt2::LabeledFrame> frames() {
  return qt2::loadLabeledFrames(testing::readData("qt2_frames.jsonl"));
}

qt2::TrainOptions opts() {
  qt2::TrainOptions o;
  o.seed = 7;
  return o;
}

TEST(Qt2Frames, BundledSetLoads) {
  auto f = frames();
  EXPECT_GE(f.size(), 60u);
  for (const auto& fr : f) {
    for (std::size_t h = 0; h < qt2::kHeadCount; ++h) {
      ASSERT_GE(fr.labels[h], 0);
      ASSERT_LT(static_cast<std::size_t>(fr.labels[h]), qt2::categories(qt2::kHeads[h]).size());
    }
  }
}

TEST(Qt2Frames, UnknownCategoryRejected) {
  EXPECT_THROW(qt2::loadLabeledFrames(
                   R"({"question":"x","target_class":"Gezegen","entity_class":"Ulke","data_property":null,)"
                   R"("object_property":"konumlanir","function_name":"count"})"),
               Error);
  EXPECT_THROW(qt2::loadLabeledFrames("{not json"), Error);
}

TEST(Qt2Frames, LabelsRoundTripThroughFrames) {
  for (const auto& fr : frames()) {
    EXPECT_EQ(qt2::labelsFromFrame(qt2::frameFromLabels(fr.labels)), fr.labels) << fr.question;
  }
}

TEST(Qt2Model, EmptySetRejected) {
  EXPECT_THROW(qt2::Model::train({}, {"a"}, opts()), qt2::ModelError);
  EXPECT_THROW(qt2::trainAndEvaluate({}, bundled().pipeline(), 0.8, opts()), Error);
}

TEST(Qt2Model, DeterministicUnderSeed) {
  auto a = qt2::trainAndEvaluate(frames(), bundled().pipeline(), 0.8, opts());
  auto b = qt2::trainAndEvaluate(frames(), bundled().pipeline(), 0.8, opts());
  EXPECT_EQ(a.model.toJson(), b.model.toJson());
  EXPECT_EQ(a.report.exactAccuracy, b.report.exactAccuracy);
}

TEST(Qt2Model, SplitSizesAndAccuracy) {
  auto f = frames();
  auto r = qt2::trainAndEvaluate(f, bundled().pipeline(), 0.8, opts());
  EXPECT_EQ(r.report.trainSize + r.report.testSize, f.size());
  EXPECT_EQ(r.report.trainSize, static_cast<std::size_t>(std::lround(0.8 * static_cast<double>(f.size()))));
  EXPECT_GE(r.report.exactAccuracy, 0.70);
  for (double h : r.report.headAccuracy) {
    EXPECT_GE(h, r.report.exactAccuracy);
    EXPECT_LE(h, 1.0);
  }
}

TEST(Qt2Model, MemorizesTrainingSet) {
  const auto& p = bundled().pipeline();
  qt2::Featurizer fz(*bundled().lexicon, *bundled().superlatives, bundled().kb->schema());
  std::vector<qt2::Example> ex;
  for (const auto& fr : frames()) {
    ex.push_back({fz.features(nlp::annotate(fr.question, p.lexicon, p.kb), p.kb), fr.labels});
  }
  qt2::Model m = qt2::Model::train(ex, fz.names(), opts());
  std::size_t wrong = 0;
  for (const auto& e : ex) wrong += m.predict(e.x) != e.y;
  EXPECT_EQ(wrong, 0u);
  EXPECT_EQ(m.predict(ex.front().x), ex.front().y);
}

TEST(Qt2Model, JsonRoundTrip) {
  auto r = qt2::trainAndEvaluate(frames(), bundled().pipeline(), 0.8, opts());
  qt2::Model back = qt2::Model::fromJson(r.model.toJson());
  EXPECT_EQ(back.toJson(), r.model.toJson());
  EXPECT_THROW(qt2::Model::fromJson("{}"), Error);
}

TEST(Qt2Model, ClassifierFillsFilter) {
  auto r = qt2::trainAndEvaluate(frames(), bundled().pipeline(), 0.8, opts());
  qt2::MlpFrameClassifier c(r.model);
  const auto& p = bundled().pipeline();
  auto f = c.classify(nlp::annotate("Türkiye'nin en derin denizi hangisidir ?", p.lexicon, p.kb), p.kb);
  EXPECT_EQ(f.targetClass, kb::classIri("Deniz"));
  EXPECT_EQ(f.functionName, formulation::FunctionName::kMax);
  EXPECT_TRUE(f.namedEntityFilter);
}

}  // namespace
}  // namespace geoqa
