//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/nn/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aisens/error.hpp"
#include "aisens/nn/optim.hpp"

namespace aisens::nn {

using nlohmann::json;

namespace {

json metric_value(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

InputView view_of(const data::Batch &b) {
  return InputView{ b.ids, b.lengths, b.max_len };
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

metrics::MetricsReport evaluate_set(const Model &model, const data::EncodedSet &set,
                                    const TrainData &data, const char *split,
                                    std::vector<double> *preds_out = nullptr,
                                    std::vector<double> *targets_out = nullptr) {
  const auto pred = inverse_scaled(data.scaler, data.property, predict_set(model, set));
  const auto truth = inverse_scaled(data.scaler, data.property, set.targets);
  auto rep = metrics::evaluate(data.property, split, truth, pred);
  if (preds_out)
    *preds_out = pred;
  if (targets_out)
    *targets_out = truth;
  return rep;
}

}  // namespace

json TrainReport::to_json() const {
  json j;
  j["property"] = property;
  j["config"] = config.to_json();
  j["epochs"] = json::array();
  for (const auto &e: epochs)
    j["epochs"].push_back({ { "epoch", e.epoch },
                            { "train_loss", metric_value(e.train_loss) },
                            { "valid_mae", metric_value(e.valid_mae) },
                            { "valid_rmse", metric_value(e.valid_rmse) },
                            { "valid_r2", metric_value(e.valid_r2) } });
  j["best_epoch"] = best_epoch;
  j["final_metrics"] = json::array();
  for (const auto &m: final_metrics)
    j["final_metrics"].push_back(metrics_json(m));
  j["test_predictions"] = test_predictions;
  j["test_targets"] = test_targets;
  return j;
}

json metrics_json(const metrics::MetricsReport &m) {
  return { { "split", m.split },
           { "n", m.n },
           { "mae", metric_value(m.mae) },
           { "rmse", metric_value(m.rmse) },
           { "r2", metric_value(m.r2) } };
}

std::vector<double> predict_set(const Model &model, const data::EncodedSet &set,
                                int batch_size) {
  std::vector<double> out;
  out.reserve(set.size());
  for (const auto &b: data::make_batches(set, batch_size, std::nullopt)) {
    const auto p = model.predict(view_of(b));
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

std::vector<double> inverse_scaled(const data::TargetScaler &scaler,
                                   const std::string &property,
                                   std::span<const double> scaled) {
  std::vector<double> out(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i)
    out[i] = scaler.inverse(property, scaled[i]);
  return out;
}

TrainResult train(const ModelConfig &config, int vocab_size, const TrainData &data) {
  if (!data.train || data.train->size() == 0)
    throw EmptyInput("training split is empty");
  TrainResult res{ Model(config, vocab_size), TrainReport{} };
  Model &model = res.model;
  TrainReport &rep = res.report;
  rep.property = data.property;
  rep.config = model.config();

  ParameterStore &ps = model.params();
  ps.mutate(ps.index_of("head.b")).value(0, 0) = median(data.train->targets);

  const bool has_valid = data.valid && data.valid->size() > 0;
  Adam adam(AdamOptions{ config.learning_rate });
  util::Rng dropout_rng(util::derive_seed(config.seed, 1));
  const std::uint64_t shuffle_seed = util::derive_seed(config.seed, 2);
  std::vector<Mat> best = ps.snapshot();
  double best_mae = std::numeric_limits<double>::infinity();
  ForwardCache cache;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    double loss_sum = 0;
    std::size_t seen = 0;
    for (const auto &b: data::epoch_batches(*data.train, data::Split::kTrain,
                                            config.batch_size, shuffle_seed, epoch)) {
      ps.zero_grad();
      const auto pred = model.forward(view_of(b), Mode::kTrain, &dropout_rng, &cache);
      const LossResult loss = mae_loss(pred, b.targets);
      if (!std::isfinite(loss.loss))
        throw DivergedError("training loss became non-finite in epoch "
                            + std::to_string(epoch));
      model.backward(cache, loss.grad);
      if (config.grad_clip > 0.0)
        clip_grad_norm(ps, config.grad_clip);
      adam.step(ps);
      loss_sum += loss.loss * static_cast<double>(b.size());
      seen += static_cast<std::size_t>(b.size());
    }
    EpochRecord e;
    e.epoch = epoch;
    e.train_loss = loss_sum / static_cast<double>(seen);
    if (!std::isfinite(e.train_loss))
      throw DivergedError("training loss became non-finite in epoch "
                          + std::to_string(epoch));
    e.valid_mae = e.valid_rmse = e.valid_r2 = std::nan("");
    if (has_valid) {
      const auto m = evaluate_set(model, *data.valid, data, "valid");
      e.valid_mae = m.mae;
      e.valid_rmse = m.rmse;
      e.valid_r2 = m.r2;
      if (m.mae < best_mae) {
        best_mae = m.mae;
        best = ps.snapshot();
        rep.best_epoch = epoch;
      }
    } else {
      best = ps.snapshot();
      rep.best_epoch = epoch;
    }
    rep.epochs.push_back(e);
  }
  ps.restore(best);

  rep.final_metrics.push_back(evaluate_set(model, *data.train, data, "train"));
  if (has_valid)
    rep.final_metrics.push_back(evaluate_set(model, *data.valid, data, "valid"));
  if (data.test && data.test->size() > 0)
    rep.final_metrics.push_back(evaluate_set(model, *data.test, data, "test",
                                             &rep.test_predictions,
                                             &rep.test_targets));
  return res;
}

}  // namespace aisens::nn
