//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "aisens/error.hpp"
#include "aisens/nn/config.hpp"
#include "aisens/nn/model.hpp"
#include "aisens/nn/optim.hpp"
#include "aisens/nn/train.hpp"
#include "gradcheck.hpp"
#include "synthetic.hpp"

namespace aisens::nn {
namespace {

constexpr int kTinyVocab = 12;

ModelConfig tiny(Encoder enc) {
  ModelConfig c;
  c.encoder = enc;
  c.embed_dim = 8;
  c.hidden_size = 16;
  c.attention_heads = 2;
  c.num_layers = 2;
  c.max_len = 7;
  c.dropout = 0.0;
  c.seed = 11;
  return c;
}

std::vector<ModelConfig> tiny_variants() {
  std::vector<ModelConfig> out;
  out.push_back(tiny(Encoder::kBagOfTokens));
  out.push_back(tiny(Encoder::kBiRecurrent));
  ModelConfig sa = tiny(Encoder::kSelfAttention);
  out.push_back(sa);
  sa.positional = Positional::kLearned;
  sa.recurrent_head = false;
  sa.pooling = Pooling::kFirst;
  out.push_back(sa);
  ModelConfig rnn_first = tiny(Encoder::kBiRecurrent);
  rnn_first.pooling = Pooling::kFirst;
  rnn_first.num_layers = 1;
  out.push_back(rnn_first);
  return out;
}

std::string describe(const ModelConfig &c) { return c.to_json().dump(); }

TEST(GradientCheck, EveryGroupOfEveryEncoder) {
  for (double dropout: { 0.0, 0.2 }) {
    for (ModelConfig c: tiny_variants()) {
      c.dropout = dropout;
      Model m(c, kTinyVocab);
      const auto batch = test::tiny_batch(5, 3, c.max_len, kTinyVocab);
      for (const auto &g: test::gradient_check(m, batch))
        EXPECT_TRUE(g.ok(1e-4)) << g.name << " rel " << g.rel_error << " dropout " << dropout << " in " << describe(c);
    }
  }
}

// Softmax is shift invariant per query, so the key bias never moves the output.
TEST(Backward, KeyBiasHasNoGradient) {
  Model m(tiny(Encoder::kSelfAttention), kTinyVocab);
  const auto b = test::tiny_batch(4, 3, 7, kTinyVocab);
  for (const auto &g: test::gradient_check(m, b)) {
    if (g.name.ends_with(".k.b")) {
      EXPECT_LT(g.analytic_norm, 1e-12);
      EXPECT_LT(g.numeric_norm, 1e-8);
    } else {
      EXPECT_GT(g.analytic_norm, 1e-8) << g.name;
    }
  }
}

TEST(Backward, ZeroLossGradientGivesZeroGradients) {
  for (const ModelConfig &c: tiny_variants()) {
    Model m(c, kTinyVocab);
    const auto b = test::tiny_batch(6, 3, c.max_len, kTinyVocab);
    ForwardCache cache;
    m.params().zero_grad();
    m.forward(b.view(), Mode::kTrain, nullptr, &cache);
    m.backward(cache, std::vector<double>(3, 0.0));
    EXPECT_EQ(m.params().grad_norm(), 0.0);
  }
}

TEST(Backward, AbsentTokensGetZeroEmbeddingGradient) {
  for (const ModelConfig &c: tiny_variants()) {
    Model m(c, kTinyVocab);
    auto b = test::tiny_batch(7, 3, c.max_len, 6);  // ids 0..5 only
    ForwardCache cache;
    m.params().zero_grad();
    m.forward(b.view(), Mode::kTrain, nullptr, &cache);
    m.backward(cache, b.weights);
    const Mat &g = m.params()[m.params().index_of("embedding")].grad;
    EXPECT_EQ(g.bottomRows(kTinyVocab - 6).norm(), 0.0);
    EXPECT_GT(g.topRows(6).norm(), 0.0);
  }
}

TEST(Backward, StaleCache) {
  Model m(tiny(Encoder::kBiRecurrent), kTinyVocab);
  const auto b = test::tiny_batch(8, 2, 7, kTinyVocab);
  ForwardCache cache;
  m.forward(b.view(), Mode::kTrain, nullptr, &cache);
  m.params().mutate(0).value(0, 0) += 1.0;
  EXPECT_THROW(m.backward(cache, b.weights), StaleCache);
  ForwardCache eval_cache;
  m.forward(b.view(), Mode::kEval, nullptr, &eval_cache);
  EXPECT_THROW(m.backward(eval_cache, b.weights), StaleCache);
  m.forward(b.view(), Mode::kTrain, nullptr, &cache);
  EXPECT_THROW(m.backward(cache, std::vector<double>(5, 1.0)), ShapeMismatch);
}

TEST(Forward, WellFormedAndBatchIndependent) {
  for (const ModelConfig &c: tiny_variants()) {
    Model m(c, kTinyVocab);
    // BOS, EOS, then padding.
    const std::vector<int> ids = { 2, 3, 0, 0, 0, 0, 0 };
    const std::vector<int> lens = { 2 };
    const auto p = m.predict({ ids, lens, 7 });
    ASSERT_EQ(p.size(), 1u);
    EXPECT_TRUE(std::isfinite(p[0]));

    const auto b = test::tiny_batch(9, 4, 7, kTinyVocab);
    const auto base = m.predict(b.view());
    // Duplicate row 1 in place of row 3.
    auto dup = b;
    std::copy(b.ids.begin() + 7, b.ids.begin() + 14, dup.ids.begin() + 21);
    dup.lengths[3] = b.lengths[1];
    const auto pd = m.predict(dup.view());
    EXPECT_EQ(pd[3], pd[1]);
    // Reverse the row order.
    auto rev = b;
    for (int r = 0; r < 4; ++r) {
      std::copy(b.ids.begin() + (3 - r) * 7, b.ids.begin() + (4 - r) * 7,
                rev.ids.begin() + r * 7);
      rev.lengths[static_cast<std::size_t>(r)] = b.lengths[static_cast<std::size_t>(3 - r)];
    }
    const auto pr = m.predict(rev.view());
    for (int r = 0; r < 4; ++r)
      EXPECT_EQ(pr[static_cast<std::size_t>(r)], base[static_cast<std::size_t>(3 - r)]);
  }
}

TEST(Forward, PaddingNeverMatters) {
  for (ModelConfig c: tiny_variants()) {
    c.max_len = 12;
    Model m(c, kTinyVocab);
    const std::vector<int> a = { 2, 5, 6, 7, 3, 0, 0, 0, 0, 0, 0, 0 };
    std::vector<int> garbage = a;
    for (int t = 5; t < 12; ++t)
      garbage[static_cast<std::size_t>(t)] = 9;
    const std::vector<int> lens = { 5 };
    const std::vector<int> short_ids(a.begin(), a.begin() + 5);
    const double p0 = m.predict({ a, lens, 12 })[0];
    EXPECT_NEAR(m.predict({ garbage, lens, 12 })[0], p0, 1e-10);
    EXPECT_NEAR(m.predict({ short_ids, lens, 5 })[0], p0, 1e-10);
  }
}

TEST(Forward, ShapeErrors) {
  Model m(tiny(Encoder::kBiRecurrent), kTinyVocab);
  const std::vector<int> ids = { 2, 3, 0 };
  EXPECT_THROW(m.predict({ ids, std::vector<int>{ 2 }, 2 }), ShapeMismatch);
  EXPECT_THROW(m.predict({ ids, std::vector<int>{ 4 }, 3 }), ShapeMismatch);
  const std::vector<int> bad = { 2, 99, 3 };
  EXPECT_THROW(m.predict({ bad, std::vector<int>{ 3 }, 3 }), ShapeMismatch);
}

TEST(BiRecurrent, BothDirectionsWired) {
  ModelConfig c = tiny(Encoder::kBiRecurrent);
  c.num_layers = 1;
  Model m(c, kTinyVocab);
  const std::vector<int> ids = { 2, 4, 5, 6, 3 };
  std::vector<int> last_changed = ids;
  last_changed[3] = 9;
  const Mat s = m.token_states(ids);
  const Mat s2 = m.token_states(last_changed);
  const int h = c.hidden_size / 2;
  // Position 0 sees a later change only through the backward direction.
  EXPECT_EQ((s.col(0).head(h) - s2.col(0).head(h)).norm(), 0.0);
  EXPECT_GT((s.col(0).tail(h) - s2.col(0).tail(h)).norm(), 1e-8);
  const std::vector<int> reversed(ids.rbegin(), ids.rend());
  const Mat sr = m.token_states(reversed);
  EXPECT_GT((s.topRows(h) - sr.topRows(h)).norm(), 1e-8);
}

TEST(MaeLoss, Examples) {
  const auto same = mae_loss(std::vector<double>{ 1, 2 }, std::vector<double>{ 1, 2 });
  EXPECT_EQ(same.loss, 0.0);
  EXPECT_EQ(same.grad, (std::vector<double>{ 0, 0 }));
  const auto r = mae_loss(std::vector<double>{ 0, 0 }, std::vector<double>{ 1, -1 });
  EXPECT_EQ(r.loss, 1.0);
  EXPECT_EQ(r.grad, (std::vector<double>{ -0.5, 0.5 }));
  EXPECT_EQ(mae_loss(std::vector<double>{ 2 }, std::vector<double>{ 5 }).loss, 3.0);
  EXPECT_THROW(mae_loss(std::vector<double>{}, std::vector<double>{}), EmptyBatch);
}

TEST(Adam, ZeroGradientsLeaveParametersUnchanged) {
  ParameterStore ps;
  ps.add("w", Mat::Constant(2, 3, 0.5));
  Adam adam;
  for (int i = 0; i < 5; ++i)
    adam.step(ps);
  EXPECT_EQ(ps.value(0), Mat::Constant(2, 3, 0.5));
}

TEST(Adam, Quadratic) {
  ParameterStore ps;
  ps.add("theta", Mat::Constant(1, 1, 1.0));
  Adam adam(AdamOptions{ 0.1 });
  // Scalar recurrence written out independently.
  double th = 1.0, m = 0, v = 0;
  for (int t = 1; t <= 200; ++t) {
    ps.grad(0)(0, 0) = 2.0 * ps.value(0)(0, 0);
    adam.step(ps);
    const double g = 2.0 * th;
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    th -= 0.1 * (m / (1 - std::pow(0.9, t))) / (std::sqrt(v / (1 - std::pow(0.999, t))) + 1e-8);
  }
  EXPECT_NEAR(ps.value(0)(0, 0), th, 1e-12);
  EXPECT_LT(std::abs(ps.value(0)(0, 0)), 1e-2);
}

TEST(Adam, DeterministicAndRejectsNonFinite) {
  auto run = []() {
    ParameterStore ps;
    ps.add("w", Mat::Constant(3, 1, 0.3));
    Adam adam;
    for (int i = 0; i < 10; ++i) {
      ps.grad(0) = ps.value(0) * 1.7 - Mat::Constant(3, 1, 0.1);
      adam.step(ps);
    }
    return ps.serialize();
  };
  EXPECT_EQ(run(), run());
  ParameterStore ps;
  ps.add("w", Mat::Zero(1, 1));
  ps.grad(0)(0, 0) = std::nan("");
  Adam adam;
  EXPECT_THROW(adam.step(ps), NonFiniteGradient);
}

TEST(Checkpoint, RoundTripAndErrors) {
  Model a(tiny(Encoder::kSelfAttention), kTinyVocab);
  ModelConfig other = tiny(Encoder::kSelfAttention);
  other.seed = 99;
  Model b(other, kTinyVocab);
  const std::string bytes = a.params().serialize();
  EXPECT_EQ(bytes.substr(0, 8), "AISCKPT1");
  b.params().deserialize(bytes);
  EXPECT_EQ(b.params().serialize(), bytes);
  Model wrong(tiny(Encoder::kBiRecurrent), kTinyVocab);
  EXPECT_THROW(wrong.params().deserialize(bytes), ShapeMismatch);
  EXPECT_THROW(b.params().deserialize(bytes.substr(0, bytes.size() - 3)), FormatError);
  EXPECT_THROW(b.params().deserialize("NOTACKPT"), FormatError);
}

TEST(Config, JsonRoundTripAndValidation) {
  ModelConfig c = tiny(Encoder::kSelfAttention);
  c.positional = Positional::kLearned;
  EXPECT_EQ(ModelConfig::from_json(c.to_json()), c);
  const auto bad = nlohmann::json::parse(R"({
    "learning_rate": -1, "dropout": 1.5, "hidden_size": 10,
    "attention_heads": 4, "encoder": "Transformer", "epocs": 3,
    "batch_size": "16"
  })");
  try {
    ModelConfig::from_json(bad);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError &e) {
    const auto &p = e.problems();
    EXPECT_GE(p.size(), 6u);
    auto has = [&](const std::string &s) {
      return std::any_of(p.begin(), p.end(),
                         [&](const std::string &x) { return x.find(s) != std::string::npos; });
    };
    EXPECT_TRUE(has("epocs"));
    EXPECT_TRUE(has("learning_rate"));
    EXPECT_TRUE(has("dropout"));
    EXPECT_TRUE(has("encoder"));
    EXPECT_TRUE(has("batch_size"));
    EXPECT_TRUE(has("divisible"));
  }
}

using test::Synthetic;
using test::synthetic_task;

// Least squares on token-count features fits the synthetic targets exactly,
// so a sum-pooled bag model can reach zero training error.
TEST(Train, SyntheticTaskIsLinearInCounts) {
  const Synthetic s = synthetic_task();
  Mat X = Mat::Zero(static_cast<Eigen::Index>(s.train.size()), 11);
  Vec y(static_cast<Eigen::Index>(s.train.size()));
  for (std::size_t r = 0; r < s.train.size(); ++r) {
    for (int t = 0; t < s.train.lengths[r]; ++t)
      X(static_cast<Eigen::Index>(r), s.train.ids[r * 20 + static_cast<std::size_t>(t)]) += 1.0;
    X(static_cast<Eigen::Index>(r), 10) = 1.0;
    y(static_cast<Eigen::Index>(r)) = s.train.targets[r];
  }
  const Vec w = X.colPivHouseholderQr().solve(y);
  EXPECT_LT((X * w - y).cwiseAbs().maxCoeff(), 1e-10);
}

ModelConfig bag_config() {
  ModelConfig c;
  c.encoder = Encoder::kBagOfTokens;
  c.embed_dim = 8;
  c.max_len = 20;
  c.dropout = 0.0;
  c.learning_rate = 0.01;
  c.batch_size = 16;
  c.epochs = 60;
  c.seed = 3;
  return c;
}

TEST(Train, BagOfTokensFitsSyntheticTask) {
  const Synthetic s = synthetic_task();
  TrainData d;
  d.train = &s.train;
  d.valid = &s.valid;
  d.property = "y";
  const auto res = train(bag_config(), 10, d);
  ASSERT_EQ(res.report.epochs.size(), 60u);
  EXPECT_LT(res.report.final_metrics[0].mae, 0.02);
  EXPECT_LT(res.report.epochs[9].train_loss, res.report.epochs[0].train_loss);
}

TEST(Train, LossDecreasesForEveryEncoder) {
  const Synthetic s = synthetic_task();
  TrainData d;
  d.train = &s.train;
  d.valid = &s.valid;
  d.property = "y";
  for (ModelConfig c: tiny_variants()) {
    c.max_len = 20;
    c.epochs = 10;
    c.learning_rate = 3e-3;
    c.dropout = 0.1;
    const auto res = train(c, 10, d);
    EXPECT_LT(res.report.epochs[9].train_loss, res.report.epochs[0].train_loss)
        << describe(c);
  }
}

TEST(Train, ZeroEpochsKeepsInitialParameters) {
  const Synthetic s = synthetic_task();
  TrainData d;
  d.train = &s.train;
  d.valid = &s.valid;
  d.property = "y";
  ModelConfig c = bag_config();
  c.epochs = 0;
  const auto res = train(c, 10, d);
  EXPECT_TRUE(res.report.epochs.empty());
  EXPECT_EQ(res.report.best_epoch, 0);
  const Model fresh(c, 10);
  for (int i = 0; i < fresh.params().size(); ++i)
    if (fresh.params()[i].name != "head.b")
      EXPECT_EQ(fresh.params().value(i), res.model.params().value(i));
}

TEST(Train, Reproducible) {
  const Synthetic s = synthetic_task();
  TrainData d;
  d.train = &s.train;
  d.valid = &s.valid;
  d.test = &s.valid;
  d.property = "y";
  ModelConfig c = tiny(Encoder::kSelfAttention);
  c.max_len = 20;
  c.epochs = 3;
  c.dropout = 0.1;
  const auto a = train(c, 10, d);
  const auto b = train(c, 10, d);
  EXPECT_EQ(a.report.to_json().dump(), b.report.to_json().dump());
  EXPECT_EQ(a.model.params().serialize(), b.model.params().serialize());
  EXPECT_EQ(a.report.test_predictions.size(), s.valid.size());
}

TEST(Train, EmptyTrainSplit) {
  data::EncodedSet empty;
  empty.max_len = 5;
  TrainData d;
  d.train = &empty;
  d.property = "y";
  EXPECT_THROW(train(bag_config(), 10, d), EmptyInput);
}

}  // namespace
}  // namespace aisens::nn
